"""Multiplicative filtration of the function ring and its orthogonal splitting."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .model import Configuration, ExtClass, ExtSpace, is_regular
from .ratlin import (
    ONE,
    Matrix,
    Subspace,
    det,
    gram_matrix,
    hadamard,
    orth_complement,
    span,
)


class NotRegular(ValueError):
    def __init__(self, witness: str | None):
        super().__init__(f"class vanishes at point {witness!r}")
        self.witness = witness


class MissingUnit(ValueError):
    pass


class NotPolarizing(ValueError):
    def __init__(self, level: int):
        super().__init__(f"pairing degenerates on filtration step {level}")
        self.level = level


@dataclass(frozen=True)
class Filtration:
    steps: tuple
    hilbert: tuple
    weight: int

    @property
    def top(self) -> Subspace:
        return self.steps[-1]


@dataclass(frozen=True)
class Polarization:
    ok: bool
    level: int | None = None
    determinants: tuple = ()

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class Decomposition:
    summands: tuple
    adapted_basis: Matrix
    block_offsets: tuple
    gram: Matrix

    @property
    def weight(self) -> int:
        return len(self.summands) - 1

    @property
    def ranks(self) -> tuple:
        return tuple(s.rank for s in self.summands)

    @property
    def h0(self) -> Subspace:
        return self.summands[0]

    @property
    def top_dim(self) -> int:
        """Dimension of the last filtration step, the sum of H^0..H^(w-1)."""
        return self.block_offsets[self.weight]

    def block_range(self, p: int) -> range:
        return range(self.block_offsets[p], self.block_offsets[p + 1])


def ones(d: int) -> tuple:
    return (ONE,) * d


def h_tilde_one(ext: ExtSpace, alpha: ExtClass) -> Subspace:
    """Span of the quotients ``beta / alpha`` over a basis of ``E``."""
    reg = is_regular(alpha, ext.config)
    if not reg:
        raise NotRegular(reg.witness)
    inv = [ONE / a for a in alpha.values]
    return span([hadamard(b, inv) for b in ext.basis.row_vectors()], ext.config.d)


def _products(a: Subspace, b: Subspace) -> Subspace:
    return span([hadamard(u, v) for u in a.vectors() for v in b.vectors()], a.ambient_dim)


def build_filtration(h1: Subspace) -> Filtration:
    d = h1.ambient_dim
    if not h1.contains(ones(d)):
        raise MissingUnit("the constant function 1 is not in the first step")
    steps = [h1]
    while True:
        nxt = _products(h1, steps[-1])
        if nxt == steps[-1]:
            break
        steps.append(nxt)
    return Filtration(tuple(steps), tuple(s.rank for s in steps), len(steps))


def filtration_by_monomials(h1: Subspace, max_degree: int | None = None) -> Filtration:
    """Reference construction: image of ``S^k`` as the span of all degree-k monomials.

    Independent of :func:`build_filtration`; every monomial in the basis
    vectors is materialized, up to degree ``d`` (ranks cannot grow past it).
    """
    d = h1.ambient_dim
    basis = h1.vectors()
    max_degree = max_degree or d
    steps = []
    for k in range(1, max_degree + 1):
        monomials = []
        for combo in combinations_with_replacement(range(len(basis)), k):
            v = ones(d)
            for i in combo:
                v = hadamard(v, basis[i])
            monomials.append(v)
        steps.append(span(monomials, d))
    ranks = [s.rank for s in steps]
    w = next(k for k in range(1, len(ranks) + 1) if all(r == ranks[k - 1] for r in ranks[k - 1:]))
    return Filtration(tuple(steps[:w]), tuple(ranks[:w]), w)


def is_polarizing(f: Filtration, gram: Matrix) -> Polarization:
    """Nondegeneracy of the pairing on every step (determinants in the RREF bases)."""
    dets = []
    for k, step in enumerate(f.steps, start=1):
        dk = det(gram_matrix(step.vectors(), gram)) if step.rank else ONE
        dets.append(dk)
        if dk == 0:
            return Polarization(False, k, tuple(dets))
    return Polarization(True, None, tuple(dets))


def decompose(f: Filtration, gram: Matrix) -> Decomposition:
    pol = is_polarizing(f, gram)
    if not pol:
        raise NotPolarizing(pol.level)
    d = f.steps[0].ambient_dim
    summands = []
    previous = Subspace.zero(d)
    for step in f.steps:
        summands.append(orth_complement(previous, gram, step))
        previous = step
    summands.append(orth_complement(previous, gram, Subspace.full(d)))
    rows = []
    offsets = [0]
    for s in summands:
        rows.extend(s.vectors())
        offsets.append(len(rows))
    return Decomposition(tuple(summands), Matrix.from_rows(rows, d), tuple(offsets), gram)


def kappa_fibers(h1: Subspace, config: Configuration) -> tuple[list, int]:
    """Group points with identical evaluation functionals on ``h1``."""
    groups: dict = {}
    for j, label in enumerate(config.labels):
        groups.setdefault(h1.basis.column(j), []).append(label)
    fibers = list(groups.values())
    return fibers, len(fibers)


def summand_index(dec: Decomposition, v: Sequence) -> int | None:
    """Index ``p`` with ``v`` in ``H^p``, or ``None``."""
    for p, s in enumerate(dec.summands):
        if s.contains(v):
            return p
    return None


def pairwise_orthogonal(dec: Decomposition) -> bool:
    for i, a in enumerate(dec.summands):
        for b in dec.summands[i + 1:]:
            for u in a.vectors():
                gu = dec.gram.apply(u)
                if any(sum(x * y for x, y in zip(v, gu)) for v in b.vectors()):
                    return False
    return True

