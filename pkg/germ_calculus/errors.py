"""Exception hierarchy shared by every germ_calculus package"""

from __future__ import annotations

from typing import Optional


class GermCalcError(Exception):
    """Base class of every error raised by the engine.

    Args:
        message: Human readable description
        operator: Name of the operation that rejected its input
    """

    def __init__(self, message: str, operator: Optional[str] = None) -> None:
        super().__init__(message)
        self.operator = operator

    @property
    def name(self) -> str:
        return type(self).__name__

    def __str__(self) -> str:
        text = super().__str__()
        return f"{self.operator}: {text}" if self.operator else text


class DimensionMismatch(GermCalcError):
    pass


class BaseMismatch(GermCalcError):
    pass


class InsufficientOrder(GermCalcError):
    """Raised when an input jet is too short to certify the requested output"""

    def __init__(self, message: str, operator: Optional[str] = None, required: Optional[int] = None) -> None:
        super().__init__(message, operator)
        self.required = required


class OperatorDomainError(GermCalcError):
    """The input germ lies outside the domain of an elementary operator"""


class ImplicitFunctionUndefined(OperatorDomainError):
    pass


class DivisionNotDefined(OperatorDomainError):
    pass


class NotDeramifiable(OperatorDomainError):
    pass


class NotABlowDown(OperatorDomainError):
    pass


class InnerValueMismatch(BaseMismatch, OperatorDomainError):
    """An inner germ of a composition does not take the outer base point as its value"""


class UnsupportedExponentialBase(GermCalcError):
    pass


class SolutionCheckFailed(GermCalcError):
    pass


class RelationError(GermCalcError):
    pass


class NoInvertibleSelection(GermCalcError):
    pass


class ParseError(GermCalcError):
    """Malformed operator expression or polynomial text"""

    def __init__(self, message: str, position: int = 0) -> None:
        super().__init__(f"{message} (at position {position})", "parse_expr")
        self.position = position


class UnboundGerm(GermCalcError):
    pass


class UnknownScenario(GermCalcError):
    pass


class MalformedInput(GermCalcError):
    pass
