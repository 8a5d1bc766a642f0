"""Finite point configurations carrying a space of extension classes.

A configuration of ``d`` labeled points has the function ring ``Q^d``
(values in the delta-function basis). The extension-class space ``E`` is a
``delta``-dimensional subspace of ``Q^d`` given by a basis of value vectors,
and a class ``alpha`` is stored by its coefficients in that basis.
"""

from __future__ import annotations

import json
import random
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import jsonschema

from .ratlin import (
    ONE,
    ZERO,
    Matrix,
    dot,
    format_rational,
    parse_rational,
    rank,
    vec,
)


class SchemaError(ValueError):
    """Input that does not satisfy the AnalysisInput schema or its invariants."""


class DuplicateParams(ValueError):
    pass


class RetriesExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class Configuration:
    labels: tuple

    def __post_init__(self):
        if len(self.labels) < 1:
            raise SchemaError("a configuration needs at least one point")
        if len(set(self.labels)) != len(self.labels):
            raise SchemaError("point labels must be distinct")

    @property
    def d(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None


@dataclass(frozen=True)
class ExtSpace:
    config: Configuration
    basis: Matrix

    def __post_init__(self):
        if self.basis.cols != self.config.d:
            raise SchemaError(
                f"extension basis vectors have length {self.basis.cols}, expected {self.config.d}")
        if self.basis.rows < 1 or rank(self.basis) != self.basis.rows:
            raise SchemaError("extension basis must be nonempty and linearly independent")

    @property
    def delta(self) -> int:
        return self.basis.rows

    def values_of(self, coeffs: Sequence) -> tuple:
        coeffs = vec(coeffs)
        if len(coeffs) != self.delta:
            raise SchemaError(f"{len(coeffs)} coefficients for a {self.delta}-dimensional space")
        return tuple(dot(coeffs, self.basis.column(j)) for j in range(self.config.d))


@dataclass(frozen=True)
class ExtClass:
    coeffs: tuple
    values: tuple

    @classmethod
    def from_coeffs(cls, ext: ExtSpace, coeffs: Sequence) -> ExtClass:
        coeffs = vec(coeffs)
        return cls(coeffs, ext.values_of(coeffs))


@dataclass(frozen=True)
class AnalysisInput:
    config: Configuration
    ext: ExtSpace
    alpha: ExtClass
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.ext.config != self.config:
            raise SchemaError("extension space is attached to a different configuration")
        if self.alpha.values != self.ext.values_of(self.alpha.coeffs):
            raise SchemaError("class values disagree with its coefficients")

    def with_alpha(self, coeffs: Sequence) -> AnalysisInput:
        return AnalysisInput(self.config, self.ext, ExtClass.from_coeffs(self.ext, coeffs),
                             dict(self.metadata))


@dataclass(frozen=True)
class Regularity:
    ok: bool
    witness: str | None = None

    def __bool__(self):
        return self.ok


def trace_gram(config: Configuration) -> Matrix:
    """Gram matrix of the trace pairing ``q(f, g) = sum_z f(z) g(z)``."""
    return Matrix.identity(config.d)


def weighted_trace_gram(weights: Sequence) -> Matrix:
    """Diagonal pairing ``sum_z w_z f(z) g(z)``; still invariant under multiplication."""
    return Matrix.diagonal(weights)


def is_regular(alpha: ExtClass, config: Configuration) -> Regularity:
    for label, value in zip(config.labels, alpha.values):
        if value == 0:
            return Regularity(False, label)
    return Regularity(True)


def theta_polynomial(ext: ExtSpace) -> list:
    """One linear form per point, as coefficient tuples in the class coordinates.

    The theta hypersurface is the product of these forms; it is never expanded.
    """
    return [ext.basis.column(j) for j in range(ext.config.d)]


def theta_value(forms: Sequence[Sequence], coeffs: Sequence) -> Fraction:
    coeffs = vec(coeffs)
    out = ONE
    for f in forms:
        out *= dot(f, coeffs)
        if not out:
            return ZERO
    return out


def default_labels(d: int) -> tuple:
    return tuple(f"z{i + 1}" for i in range(d))


def _line_basis(params: Sequence, labels: Sequence | None) -> tuple[Configuration, ExtSpace]:
    params = vec(params)
    if len(set(params)) != len(params):
        raise DuplicateParams(f"parameters must be pairwise distinct: {params}")
    if len(params) < 2:
        raise SchemaError("the line families need at least two points")
    config = Configuration(tuple(labels) if labels is not None else default_labels(len(params)))
    if config.d != len(params):
        raise SchemaError("one label per parameter")
    basis = Matrix.from_rows([(ONE,) * len(params), params])
    return config, ExtSpace(config, basis)


def generate_power(params: Sequence, labels: Sequence | None = None) -> AnalysisInput:
    """``E = span{1, t}`` sampled at distinct parameters, with ``alpha = 1``."""
    config, ext = _line_basis(params, labels)
    return AnalysisInput(config, ext, ExtClass.from_coeffs(ext, (1, 0)), {"family": "power"})


def generate_ci_line(params: Sequence, n: int, labels: Sequence | None = None) -> AnalysisInput:
    """Collinear points cut by linear forms, as a stand-in for complete intersections.

    Restrictions of linear forms on a line to the points span ``{1, t}``; the
    line section records ``h0(L) = n + 2`` so that ``delta = h0(L) - n = 2``.
    Fewer than ``h0(L)`` points is accepted and flagged ``sub_generic``.
    """
    if n < 1:
        raise SchemaError("codimension n must be positive")
    config, ext = _line_basis(params, labels)
    meta: dict[str, Any] = {"family": "ci-line", "n": n, "h0L": n + 2}
    if config.d < n + 2:
        meta["sub_generic"] = True
    return AnalysisInput(config, ext, ExtClass.from_coeffs(ext, (1, 0)), meta)


def expected_weight_bound(metadata: dict) -> int | None:
    """Upper bound ``n + 1`` on the weight for the complete-intersection family."""
    if "n" in metadata:
        return int(metadata["n"]) + 1
    return None


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-6, 6), rng.randint(1, 3))


def generate_random(d: int, delta: int, seed: int, labels: Sequence | None = None,
                    max_retries: int = 256) -> AnalysisInput:
    if not 1 <= delta <= d:
        raise SchemaError(f"need 1 <= delta <= d, got delta={delta}, d={d}")
    rng = random.Random(seed)
    config = Configuration(tuple(labels) if labels is not None else default_labels(d))
    while True:
        basis = Matrix.from_rows([[_random_rational(rng) for _ in range(d)]
                                  for _ in range(delta)], d)
        # a zero column vanishes for every class, so no regular one would exist
        if rank(basis) == delta and all(any(c) for c in basis.T.row_vectors()):
            break
    ext = ExtSpace(config, basis)
    for _ in range(max_retries):
        coeffs = [rng.randint(-5, 5) for _ in range(delta)]
        if not any(coeffs):
            continue
        alpha = ExtClass.from_coeffs(ext, coeffs)
        if is_regular(alpha, config):
            return AnalysisInput(config, ext, alpha,
                                 {"family": "random", "seed": seed})
    raise RetriesExhausted(f"no regular class in {max_retries} draws (d={d}, delta={delta})")


_RATIONAL_PATTERN = r"^-?[0-9]+(/[0-9]+)?$"

INPUT_SCHEMA = {
    "type": "object",
    "required": ["points", "ext_basis", "alpha_coeffs"],
    "additionalProperties": False,
    "properties": {
        "points": {"type": "array", "minItems": 1, "items": {"type": "string"}},
        "ext_basis": {
            "type": "array", "minItems": 1,
            "items": {"type": "array",
                      "items": {"type": "string", "pattern": _RATIONAL_PATTERN}},
        },
        "alpha_coeffs": {"type": "array",
                         "items": {"type": "string", "pattern": _RATIONAL_PATTERN}},
        "metadata": {
            "type": "object",
            "properties": {
                "n": {"type": "integer"},
                "h0L": {"type": "integer"},
                "family": {"type": "string"},
            },
        },
    },
}


def input_to_json(inp: AnalysisInput) -> dict:
    out: dict[str, Any] = {
        "points": list(inp.config.labels),
        "ext_basis": [[format_rational(x) for x in row] for row in inp.ext.basis.row_vectors()],
        "alpha_coeffs": [format_rational(x) for x in inp.alpha.coeffs],
    }
    if inp.metadata:
        out["metadata"] = dict(inp.metadata)
    return out


def input_from_json(data: Any) -> AnalysisInput:
    try:
        jsonschema.validate(data, INPUT_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SchemaError(exc.message) from None
    try:
        rows = [[parse_rational(x) for x in row] for row in data["ext_basis"]]
        coeffs = [parse_rational(x) for x in data["alpha_coeffs"]]
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    config = Configuration(tuple(data["points"]))
    for row in rows:
        if len(row) != config.d:
            raise SchemaError(f"ext_basis row of length {len(row)}, expected {config.d}")
    ext = ExtSpace(config, Matrix.from_rows(rows, config.d))
    if len(coeffs) != ext.delta:
        raise SchemaError(f"{len(coeffs)} alpha coefficients, expected {ext.delta}")
    return AnalysisInput(config, ext, ExtClass.from_coeffs(ext, coeffs),
                         dict(data.get("metadata", {})))


def load_input(path) -> AnalysisInput:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from None
    return input_from_json(data)


def dump_input(inp: AnalysisInput, path) -> None:
    with open(path, "w") as fh:
        json.dump(input_to_json(inp), fh, indent=2)
        fh.write("\n")
