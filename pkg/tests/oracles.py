"""Independent reference computations used by the tests."""

from fractions import Fraction
from pathlib import Path

import sympy

DATA = Path(__file__).parent / "data"
GOLDEN = DATA / "power_0123.json"


def F(*xs):
    return tuple(Fraction(x) for x in xs)


def to_sympy(rows):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction)
                          else sympy.Rational(x) for x in r] for r in rows])


def from_sympy(m):
    return [tuple(Fraction(int(x.p), int(x.q)) for x in m.row(i)) for i in range(m.rows)]


def sympy_project(v, basis):
    """Identity-Gram projection via the normal equations, solved by sympy."""
    b = to_sympy(basis).T
    coeffs = (b.T * b).LUsolve(b.T * to_sympy([v]).T)
    return tuple(Fraction(int(x.p), int(x.q)) for x in b * coeffs)
