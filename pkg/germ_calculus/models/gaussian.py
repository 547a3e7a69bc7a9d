"""Exact Gaussian rationals, the coefficient field Q(i) of every jet"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from germ_calculus.errors import MalformedInput

Scalar = Union["GaussianRational", Fraction, int]


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """Element re + im*i of Q(i).

    Both parts are `Fraction`s, hence always in lowest terms with a positive
    denominator; structural equality is equality in Q(i).
    """
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if not isinstance(self.re, Fraction):
            object.__setattr__(self, "re", Fraction(self.re))
        if not isinstance(self.im, Fraction):
            object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def of(value: Scalar) -> "GaussianRational":
        """Coerce an int, Fraction or GaussianRational"""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(Fraction(value))
        raise TypeError(f"cannot convert {type(value).__name__} to GaussianRational")

    @staticmethod
    def parse(text: str) -> "GaussianRational":
        """Parse literals such as "3", "-1/2", "i", "-2i", "1/2+1/3i" or "1 - i"."""
        s = text.replace(" ", "").replace("*i", "i")
        if not s:
            raise MalformedInput("empty Gaussian rational literal", "GaussianRational.parse")
        try:
            if not s.endswith("i"):
                return GaussianRational(Fraction(s))
            body = s[:-1]
            split = max(body.rfind("+"), body.rfind("-"))
            if split > 0:
                real_text, imag_text = body[:split], body[split:]
            else:
                real_text, imag_text = "0", body
            if imag_text in ("", "+"):
                imag_text = "1"
            elif imag_text == "-":
                imag_text = "-1"
            return GaussianRational(Fraction(real_text), Fraction(imag_text))
        except (ValueError, ZeroDivisionError) as e:
            raise MalformedInput(f"bad Gaussian rational literal {text!r}", "GaussianRational.parse") from e

    @staticmethod
    def random(rng: random.Random, bound: int, nonzero: bool = False) -> "GaussianRational":
        """Numerators in [-bound, bound], denominators in [1, bound].

        With `nonzero` the real numerator avoids 0, so the value is never zero.
        """
        if nonzero:
            re_num = rng.choice([k for k in range(-bound, bound + 1) if k])
        else:
            re_num = rng.randint(-bound, bound)
        re = Fraction(re_num, rng.randint(1, bound))
        im = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        return GaussianRational(re, im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = f"{self.im}i"
        if self.re == 0:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"{self.re}{sign}{imag}"

    def __repr__(self) -> str:
        return f"GaussianRational({self})"

    # --- predicates ---
    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    # --- arithmetic ---
    def __add__(self, other: Scalar) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other: Scalar) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other: Scalar) -> "GaussianRational":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            if other.im == 0:
                return GaussianRational(self.re * other.re, self.im * other.re)
            if self.im == 0:
                return GaussianRational(self.re * other.re, self.re * other.im)
            return GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Squared modulus re² + im²"""
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        n = self.norm()
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other: Scalar) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            if other.im == 0:
                return GaussianRational(self.re / other.re, self.im / other.re)
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other: Scalar) -> "GaussianRational":
        return GaussianRational.of(other) * self.inverse()

    def __pow__(self, exponent: int) -> "GaussianRational":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result


ZERO = GaussianRational()
ONE = GaussianRational(Fraction(1))
I = GaussianRational(Fraction(0), Fraction(1))
