"""Germ Calculus - exact operator calculus on holomorphic germs"""

__version__ = "1.0.0"
