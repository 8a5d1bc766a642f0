"""Per-point hyperplane sections of the Albanese model.

For each point ``z`` the delta function is projected to ``H^0``, pushed up the
grading by iterated ``D+`` and back down by iterated ``D-``; the values of
these functions at ``z`` are the exponents of the section coefficients.
Exponents stay exact; ``exp`` is applied only by :func:`render_float`.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction

from .higgs import from_coords, mult_operator, to_coords
from .hodge import Decomposition
from .model import Configuration
from .ratlin import ONE, ZERO, format_rational, project


class WeightTooSmall(ValueError):
    pass


class UnknownLabel(KeyError):
    pass


@dataclass(frozen=True)
class SectionExponents:
    point: str
    e_T: Fraction
    e_X: tuple
    e_Y: tuple


@dataclass(frozen=True)
class CycleDivisor:
    sections: tuple
    weight: int

    @property
    def calabi_yau_dimension(self) -> int | None:
        return self.weight - 2 if self.weight >= 3 else None


def _index(config: Configuration, label: str) -> int:
    try:
        return config.index(label)
    except KeyError:
        raise UnknownLabel(label) from None


def delta_zero(dec: Decomposition, config: Configuration, label: str) -> tuple:
    """Orthogonal projection of the delta function at ``label`` onto ``H^0``."""
    j = _index(config, label)
    delta = tuple(ONE if i == j else ZERO for i in range(config.d))
    return project(delta, dec.h0, dec.gram)


def _iterate(dec: Decomposition, t: tuple, start: tuple, shift: int, count: int) -> list:
    op = mult_operator(dec, t).component(shift)
    c = to_coords(dec, start)
    out = [start]
    for _ in range(count):
        c = op.apply(c)
        out.append(from_coords(dec, c))
    return out


def right_string(dec: Decomposition, d0: tuple) -> list:
    """``[(D+(d0))^p d0 for p = 0..w-1]``; entry ``p`` lies in ``H^p``."""
    return _iterate(dec, d0, d0, 1, dec.weight - 1)


def left_string(dec: Decomposition, d0: tuple, top: tuple) -> list:
    """``(D-(d0))^m top`` for ``m = 0..w-1``, ordered by grade ``w-1`` down to ``0``."""
    return _iterate(dec, d0, top, -1, dec.weight - 1)


def section_exponents(dec: Decomposition, config: Configuration, label: str) -> SectionExponents:
    w = dec.weight
    if w < 2:
        raise WeightTooSmall(f"weight {w} < 2 has no X/Y coordinates")
    j = _index(config, label)
    d0 = delta_zero(dec, config, label)
    right = right_string(dec, d0)
    left = left_string(dec, d0, right[-1])
    # left[m] has grade w-1-m
    by_grade = {w - 1 - m: v for m, v in enumerate(left)}
    return SectionExponents(
        point=label,
        e_T=by_grade[0][j],
        e_X=tuple(right[p][j] for p in range(w - 1)),
        e_Y=tuple(by_grade[p + 1][j] for p in range(w - 1)),
    )


def cycle_map(dec: Decomposition, config: Configuration) -> CycleDivisor:
    """One section per point. Non-polarizing inputs never get here: ``decompose`` raises."""
    if dec.weight < 2:
        raise WeightTooSmall(f"weight {dec.weight} < 2 has no X/Y coordinates")
    sections = tuple(section_exponents(dec, config, label) for label in config.labels)
    return CycleDivisor(sections, dec.weight)


def exp_decimal(e: Fraction, digits: int) -> str:
    """``exp(e)`` to ``digits`` significant digits, round-half-even, fixed notation."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    e = Fraction(e)
    with decimal.localcontext() as ctx:
        ctx.prec = digits + 30
        value = (decimal.Decimal(e.numerator) / decimal.Decimal(e.denominator)).exp()
        quantum = decimal.Decimal(1).scaleb(value.adjusted() - digits + 1)
        value = value.quantize(quantum, rounding=decimal.ROUND_HALF_EVEN)
    return format(value, "f")


def divisor_to_json(divisor: CycleDivisor, digits: int | None = None) -> dict:
    sections = []
    for s in divisor.sections:
        entry = {
            "point": s.point,
            "e_T": format_rational(s.e_T),
            "e_X": [format_rational(x) for x in s.e_X],
            "e_Y": [format_rational(y) for y in s.e_Y],
        }
        if digits is not None:
            entry["coefficients"] = render_section(s, digits)
        sections.append(entry)
    return {
        "weight": divisor.weight,
        "sections": sections,
        "calabi_yau_dimension": divisor.calabi_yau_dimension,
    }


def render_section(s: SectionExponents, digits: int) -> dict:
    return {
        "T": exp_decimal(s.e_T, digits),
        "X": [exp_decimal(x, digits) for x in s.e_X],
        "Y": [exp_decimal(y, digits) for y in s.e_Y],
    }


def render_float(divisor: CycleDivisor, digits: int) -> list:
    """Section coefficients ``exp(e)`` as decimal strings, one dict per point."""
    return [dict(point=s.point, **render_section(s, digits)) for s in divisor.sections]
