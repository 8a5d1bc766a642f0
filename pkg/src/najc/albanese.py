"""Quadric model of the nonabelian Albanese and its toric polytope.

The variety ``{X_p Y_p = T^2}`` in ``P^(2w-2)`` is parametrized by the torus
``(s, s*l_p, s/l_p)``; its exponent polytope is the cross-polytope
``conv{0, +-e_1, ..., +-e_(w-1)}``. Degree, interior points and the dual
polytope are computed exactly from a general lattice-polytope routine.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache, reduce
from math import gcd

import numpy as np

from .ratlin import vec


class ZeroPoint(ValueError):
    pass


class ZeroParameter(ValueError):
    pass


def _primitive(v: Sequence[int]) -> tuple:
    g = reduce(gcd, (abs(x) for x in v), 0)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _int_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    if len(rows) == 0:
        return 0
    # object dtype keeps exact Python ints while vectorizing the row updates
    m = np.array([list(r) for r in rows], dtype=object)
    nrows, ncols = m.shape
    r, prev = 0, 1
    for c in range(ncols):
        nz = [i for i in range(r, nrows) if m[i, c]]
        if not nz:
            continue
        if nz[0] != r:
            m[[r, nz[0]]] = m[[nz[0], r]]
        p = m[r, c]
        below = m[r + 1:]
        m[r + 1:] = (p * below - np.outer(below[:, c], m[r])) // prev
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def _int_det(rows: Sequence[Sequence[int]]) -> int:
    m = [list(r) for r in rows]
    n = len(m)
    sign, prev = 1, 1
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c]), None)
        if pr is None:
            return 0
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        p = m[c][c]
        for i in range(c + 1, n):
            m[i] = [(p * x - m[i][c] * y) // prev for x, y in zip(m[i], m[c])]
        prev = p
    return sign * m[n - 1][n - 1] if n else 1


def _solve_int(rows: list, k: int) -> tuple:
    """Integer ray ``r`` with ``rows[i] . r = [i == k]`` up to positive scaling."""
    n = len(rows)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == k))] for i, r in enumerate(rows)]
    for c in range(n):
        pr = next(i for i in range(c, n) if aug[i][c])
        aug[c], aug[pr] = aug[pr], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    sol = [aug[i][n] for i in range(n)]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in sol), 1)
    return _primitive([int(x * den) for x in sol])


def cone_facets(generators: Sequence[Sequence[int]]) -> list:
    """Facet normals ``a`` (``a . g >= 0`` for every generator) of a full-dimensional cone.

    Double description: the facets of the cone are the extreme rays of its
    dual cone, built by adding one generator constraint at a time.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    n = len(gens[0])
    chosen: list = []
    for i, g in enumerate(gens):
        if _int_rank([gens[j] for j in chosen] + [g]) == len(chosen) + 1:
            chosen.append(i)
        if len(chosen) == n:
            break
    if len(chosen) < n:
        raise ValueError("generators do not span a full-dimensional cone")
    base = [gens[i] for i in chosen]
    rays = []
    for k in range(n):
        r = _solve_int(base, k)
        zeros = 0
        for pos, i in enumerate(chosen):
            if pos != k:
                zeros |= 1 << i
        rays.append((r, zeros))
    for i, g in enumerate(gens):
        if i in chosen:
            continue
        bit = 1 << i
        pos, neg, kept = [], [], []
        for r, z in rays:
            s = sum(a * b for a, b in zip(r, g))
            if s > 0:
                pos.append((r, z, s))
                kept.append((r, z))
            elif s < 0:
                neg.append((r, z, s))
            else:
                kept.append((r, z | bit))
        zero_sets = [z for _, z in rays]
        new = []
        for rp, zp, sp in pos:
            for rq, zq, sq in neg:
                common = zp & zq
                if common.bit_count() < n - 2:
                    continue
                # adjacent iff no third ray's zero set contains the common one
                if any((z & common) == common and z != zp and z != zq for z in zero_sets):
                    continue
                r = _primitive([sp * b - sq * a for a, b in zip(rp, rq)])
                new.append((r, common | bit))
        rays = kept + new
    return sorted({r for r, _ in rays})


@dataclass(frozen=True)
class LatticePolytope:
    """Full-dimensional lattice polytope, with facets ``normal . x <= offset``."""

    vertices: tuple
    facets: tuple = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.vertices[0])

    @classmethod
    def from_points(cls, points: Sequence[Sequence[int]]) -> LatticePolytope:
        pts = sorted({tuple(int(x) for x in p) for p in points})
        n = len(pts[0])
        raw = cone_facets([p + (1,) for p in pts])
        facets = tuple((tuple(-a for a in r[:n]), r[n]) for r in raw)
        vertices = []
        for p in pts:
            tight = [f for f, b in facets if sum(x * y for x, y in zip(f, p)) == b]
            if tight and _int_rank(tight) == n:
                vertices.append(p)
        return cls(tuple(vertices), facets)

    def facet_vertex_sets(self) -> list:
        return [frozenset(i for i, v in enumerate(self.vertices)
                          if sum(x * y for x, y in zip(f, v)) == b)
                for f, b in self.facets]

    def _affine_dim(self, idx: frozenset) -> int:
        pts = [self.vertices[i] for i in sorted(idx)]
        if len(pts) <= 1:
            return 0
        return _int_rank([[a - b for a, b in zip(p, pts[0])] for p in pts[1:]])

    def triangulation(self) -> list:
        """Pulling triangulation: cone the first vertex over the faces avoiding it, recursively."""
        facet_sets = self.facet_vertex_sets()
        dims: dict = {}

        def dim(s):
            if s not in dims:
                dims[s] = self._affine_dim(s)
            return dims[s]

        def faces(s, k):
            out = set()
            for g in facet_sets:
                f = s & g
                if f != s and len(f) >= k and dim(f) == k - 1:
                    out.add(f)
            return out

        def pull(s, k):
            if len(s) == k + 1:
                return [s]
            v0 = min(s)
            return [t | {v0} for f in faces(s, k) if v0 not in f for t in pull(f, k - 1)]

        return pull(frozenset(range(len(self.vertices))), self.dimension)

    def normalized_volume(self) -> int:
        """``n!`` times the Euclidean volume: the sum of ``|det|`` over a triangulation."""
        total = 0
        for simplex in self.triangulation():
            pts = [self.vertices[i] for i in sorted(simplex)]
            total += abs(_int_det([[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]))
        return total

    def lattice_points(self, strict: bool = False) -> list:
        lo = np.min(np.array(self.vertices), axis=0)
        hi = np.max(np.array(self.vertices), axis=0)
        axes = np.indices(tuple(int(b - a + 1) for a, b in zip(lo, hi)), dtype=np.int64)
        grid = axes.reshape(len(lo), -1).T + lo.astype(np.int64)
        normals = np.array([f for f, _ in self.facets], dtype=np.int64)
        offsets = np.array([b for _, b in self.facets], dtype=np.int64)
        bound = int(np.abs(grid).max()) * int(np.abs(normals).sum(axis=1).max())
        if bound < 2 ** 52:
            # float64 products of integers this small are exact, and BLAS is much faster
            vals = grid.astype(np.float64) @ normals.T.astype(np.float64)
        else:
            vals = grid @ normals.T
        ok = np.all(vals < offsets, axis=1) if strict else np.all(vals <= offsets, axis=1)
        return [tuple(int(x) for x in p) for p in grid[ok]]

    def interior_points(self) -> list:
        return self.lattice_points(strict=True)

    def dual_vertices(self) -> list:
        """Vertices ``normal / offset`` of ``{y : x . y <= 1 on the polytope}``."""
        if any(b <= 0 for _, b in self.facets):
            raise ValueError("the origin is not an interior point")
        return [tuple(Fraction(a, b) for a in f) for f, b in self.facets]


@cache
def cross_polytope(n: int) -> LatticePolytope:
    """Exponent polytope of the torus parametrization, ``0`` listed as a generator."""
    pts = [(0,) * n]
    for i in range(n):
        for s in (1, -1):
            pts.append(tuple(s if j == i else 0 for j in range(n)))
    return LatticePolytope.from_points(pts)


@dataclass(frozen=True)
class AlbaneseModel:
    w: int

    def __post_init__(self):
        if self.w < 2:
            raise ValueError("the Albanese model needs weight w >= 2")

    @property
    def coordinates(self) -> list:
        return (["T"] + [f"X{p}" for p in range(self.w - 1)]
                + [f"Y{p}" for p in range(self.w - 1)])

    @property
    def quadrics(self) -> list:
        return [f"X{p}*Y{p} - T^2" for p in range(self.w - 1)]

    @property
    def ambient_dimension(self) -> int:
        return 2 * self.w - 2

    @property
    def polytope(self) -> LatticePolytope:
        return cross_polytope(self.w - 1)


def quadric_residuals(model: AlbaneseModel, point: Sequence) -> list:
    """``X_p Y_p - T^2`` at a point ordered ``(T, X_0.., Y_0..)``."""
    point = vec(point)
    k = model.w - 1
    if len(point) != 2 * k + 1:
        raise ValueError(f"expected {2 * k + 1} coordinates, got {len(point)}")
    if not any(point):
        raise ZeroPoint("the zero vector is not a projective point")
    t, xs, ys = point[0], point[1:1 + k], point[1 + k:]
    return [x * y - t * t for x, y in zip(xs, ys)]


def torus_point(model: AlbaneseModel, s, lambdas: Sequence) -> tuple:
    s = Fraction(s)
    lambdas = vec(lambdas)
    if len(lambdas) != model.w - 1:
        raise ValueError(f"expected {model.w - 1} torus parameters")
    if s == 0 or any(l == 0 for l in lambdas):
        raise ZeroParameter("torus parameters must be nonzero")
    return (s,) + tuple(s * l for l in lambdas) + tuple(s / l for l in lambdas)


def degree_via_volume(w: int) -> int:
    if w < 2:
        raise ValueError("degree is defined for w >= 2")
    return cross_polytope(w - 1).normalized_volume()


@dataclass(frozen=True)
class FanoReport:
    dimension: int
    interior_points: int
    dual_integral: bool
    dual_vertices: tuple = field(repr=False)
    cy_section_dimension: int | None

    @property
    def reflexive(self) -> bool:
        return self.interior_points == 1 and self.dual_integral


def fano_check(w: int) -> FanoReport:
    if w < 2:
        raise ValueError("the Fano check needs w >= 2")
    poly = cross_polytope(w - 1)
    interior = poly.interior_points()
    dual = poly.dual_vertices()
    integral = all(x.denominator == 1 for v in dual for x in v)
    return FanoReport(
        dimension=poly.dimension,
        interior_points=len(interior),
        dual_integral=integral,
        dual_vertices=tuple(sorted(dual)),
        cy_section_dimension=w - 2 if w >= 3 else None,
    )


def albanese_report(w: int) -> dict:
    fano = fano_check(w)
    return {
        "dimension": fano.dimension,
        "degree": degree_via_volume(w),
        "interior_points": fano.interior_points,
        "reflexive": fano.reflexive,
        "cy_section_dimension": fano.cy_section_dimension,
    }
