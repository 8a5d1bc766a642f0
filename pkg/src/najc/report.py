"""Pipeline orchestration and JSON report fragments."""

from __future__ import annotations

import os
import random
from collections import Counter
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import jsonschema

from . import albanese, cyclemap
from .higgs import GradedOperator, RelationReport, mult_operator, verify_relations
from .hodge import (
    Decomposition,
    Filtration,
    NotPolarizing,
    Polarization,
    build_filtration,
    decompose,
    h_tilde_one,
    is_polarizing,
    kappa_fibers,
)
from .model import AnalysisInput, input_to_json, is_regular, trace_gram
from .ratlin import Matrix, Subspace, format_rational


@dataclass
class Analysis:
    inp: AnalysisInput
    gram: Matrix
    h1: Subspace
    filtration: Filtration
    polarization: Polarization
    decomposition: Decomposition
    fibers: list
    kappa_degree: int
    operators: list = field(default_factory=list)
    relations: RelationReport | None = None


def analyze(inp: AnalysisInput, gram: Matrix | None = None, relations: bool = True) -> Analysis:
    """Run filtration, decomposition and operators; raises NotRegular / NotPolarizing."""
    gram = gram if gram is not None else trace_gram(inp.config)
    h1 = h_tilde_one(inp.ext, inp.alpha)
    filt = build_filtration(h1)
    pol = is_polarizing(filt, gram)
    if not pol:
        raise NotPolarizing(pol.level)
    dec = decompose(filt, gram)
    fibers, kdeg = kappa_fibers(h1, inp.config)
    ops = [mult_operator(dec, t) for t in dec.h0.vectors()]
    rel = verify_relations(dec, ops) if relations else None
    return Analysis(inp, gram, h1, filt, pol, dec, fibers, kdeg, ops, rel)


def _matrix_json(m: Matrix) -> list:
    return [[format_rational(x) for x in row] for row in m.row_vectors()]


def hodge_fragment(a: Analysis) -> dict:
    return {
        "delta": a.inp.ext.delta,
        "weight": a.filtration.weight,
        "hilbert": list(a.filtration.hilbert),
        "ranks": list(a.decomposition.ranks),
        "polarizing": bool(a.polarization),
        "kappa_degree": a.kappa_degree,
        "adapted_basis": _matrix_json(a.decomposition.adapted_basis),
    }


def _blocks_json(op: GradedOperator, shift: int) -> list:
    out = []
    for p in range(op.weight):
        q = p + shift
        if 0 <= q < op.weight:
            out.append({"from": p, "to": q, "matrix": _matrix_json(op.blocks[(p, shift)])})
    return out


def operator_fragment(a: Analysis) -> dict:
    mults = []
    for i, op in enumerate(a.operators):
        mults.append({
            "index": i,
            "t": [format_rational(x) for x in op.t],
            "D-": _blocks_json(op, -1),
            "D0": _blocks_json(op, 0),
            "D+": _blocks_json(op, 1),
        })
    rel = a.relations
    return {
        "multipliers": mults,
        "higgs_ok": bool(rel and rel.higgs_ok),
        "checked_pairs": rel.checked_pairs if rel else 0,
    }


def build_report(inp: AnalysisInput, cycle: bool = False, digits: int | None = None,
                 gram: Matrix | None = None) -> dict:
    a = analyze(inp, gram)
    notices = []
    report: dict[str, Any] = {
        "input": input_to_json(inp),
        "diagnostics": {
            "regular": True,
            "witness": None,
            "polarizing": True,
            "failing_level": None,
            "notices": notices,
        },
        "hodge": hodge_fragment(a),
        "operators": operator_fragment(a),
    }
    if cycle:
        w = a.decomposition.weight
        if w >= 2:
            divisor = cyclemap.cycle_map(a.decomposition, inp.config)
            report["cycle"] = cyclemap.divisor_to_json(divisor, digits)
            report["albanese"] = albanese.albanese_report(w)
        else:
            report["cycle"] = None
            report["albanese"] = None
            notices.append(f"cycle map and Albanese need weight >= 2 (weight is {w})")
    return report


_RAT = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
_RAT_MATRIX = {"type": "array", "items": {"type": "array", "items": _RAT}}
_BLOCKS = {"type": "array", "items": {
    "type": "object", "required": ["from", "to", "matrix"],
    "properties": {"from": {"type": "integer"}, "to": {"type": "integer"},
                   "matrix": _RAT_MATRIX}}}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["input", "diagnostics", "hodge", "operators"],
    "properties": {
        "input": {"type": "object"},
        "diagnostics": {
            "type": "object",
            "required": ["regular", "witness", "polarizing", "failing_level", "notices"],
        },
        "hodge": {
            "type": "object",
            "required": ["delta", "weight", "hilbert", "ranks", "polarizing",
                         "kappa_degree", "adapted_basis"],
            "properties": {"adapted_basis": _RAT_MATRIX,
                           "hilbert": {"type": "array", "items": {"type": "integer"}},
                           "ranks": {"type": "array", "items": {"type": "integer"}}},
        },
        "operators": {
            "type": "object",
            "required": ["multipliers", "higgs_ok", "checked_pairs"],
            "properties": {"multipliers": {"type": "array", "items": {
                "type": "object", "required": ["index", "t", "D-", "D0", "D+"],
                "properties": {"t": {"type": "array", "items": _RAT},
                               "D-": _BLOCKS, "D0": _BLOCKS, "D+": _BLOCKS}}}},
        },
        "cycle": {"type": ["object", "null"], "properties": {
            "sections": {"type": "array", "items": {
                "type": "object", "required": ["point", "e_T", "e_X", "e_Y"],
                "properties": {"e_T": _RAT,
                               "e_X": {"type": "array", "items": _RAT},
                               "e_Y": {"type": "array", "items": _RAT}}}}}},
        "albanese": {"type": ["object", "null"]},
    },
}


def validate_report(report: dict) -> None:
    jsonschema.validate(report, REPORT_SCHEMA)


def thread_count() -> int:
    env = os.environ.get("NAJC_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class Sample:
    alpha_coeffs: tuple
    regular: bool
    polarizing: bool
    weight: int | None
    ranks: tuple | None


@dataclass(frozen=True)
class SweepResult:
    seed: int
    samples: tuple
    bound: int

    @property
    def generic_weight(self) -> int | None:
        weights = Counter(s.weight for s in self.samples if s.weight is not None)
        if not weights:
            return None
        top = max(weights.values())
        return min(w for w, c in weights.items() if c == top)

    @property
    def polarizing_count(self) -> int:
        return sum(s.polarizing for s in self.samples)

    @property
    def polarizing_fraction(self) -> float:
        return self.polarizing_count / len(self.samples)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "bound": self.bound,
            "samples": len(self.samples),
            "per_sample": [
                {
                    "alpha_coeffs": [format_rational(x) for x in s.alpha_coeffs],
                    "regular": s.regular,
                    "polarizing": s.polarizing,
                    "weight": s.weight,
                    "ranks": list(s.ranks) if s.ranks is not None else None,
                }
                for s in self.samples
            ],
            "aggregate": {
                "generic_weight": self.generic_weight,
                "polarizing_fraction": self.polarizing_fraction,
                "polarizing_count": self.polarizing_count,
            },
        }


def draw_coefficients(delta: int, samples: int, seed: int, bound: int = 10) -> list:
    """Nonzero integer vectors from the box ``[-bound, bound]^delta``."""
    rng = random.Random(seed)
    out = []
    while len(out) < samples:
        c = tuple(rng.randint(-bound, bound) for _ in range(delta))
        if any(c):
            out.append(c)
    return out


def _evaluate(inp: AnalysisInput, coeffs: Sequence, gram: Matrix) -> Sample:
    probe = inp.with_alpha(coeffs)
    if not is_regular(probe.alpha, probe.config):
        return Sample(probe.alpha.coeffs, False, False, None, None)
    filt = build_filtration(h_tilde_one(probe.ext, probe.alpha))
    if not is_polarizing(filt, gram):
        return Sample(probe.alpha.coeffs, True, False, filt.weight, None)
    dec = decompose(filt, gram)
    return Sample(probe.alpha.coeffs, True, True, filt.weight, dec.ranks)


def sweep(inp: AnalysisInput, samples: int, seed: int, bound: int = 10,
          gram: Matrix | None = None, threads: int | None = None) -> SweepResult:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    gram = gram if gram is not None else trace_gram(inp.config)
    draws = draw_coefficients(inp.ext.delta, samples, seed, bound)
    with ThreadPoolExecutor(max_workers=threads or thread_count()) as pool:
        results = list(pool.map(lambda c: _evaluate(inp, c, gram), draws))
    return SweepResult(seed, tuple(results), bound)

