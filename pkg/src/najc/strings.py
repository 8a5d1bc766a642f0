"""The colored trivalent graph on ``w`` rungs and its path operators."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .higgs import NotInH0, mult_operator
from .hodge import Decomposition
from .ratlin import Matrix, vec

COLORS = ("0", "+", "-")
_SHIFT = {"0": 0, "+": 1, "-": -1}
_OPPOSITE = {"0": "0", "+": "-", "-": "+"}


class InvalidPath(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    origin: int
    target: int
    color: str

    @property
    def upper(self) -> tuple:
        return ("u", self.origin)

    @property
    def lower(self) -> tuple:
        return ("d", self.target)


@dataclass(frozen=True)
class Step:
    edge: Edge
    forward: bool = True

    @property
    def start(self) -> tuple:
        return self.edge.upper if self.forward else self.edge.lower

    @property
    def end(self) -> tuple:
        return self.edge.lower if self.forward else self.edge.upper


@dataclass(frozen=True)
class TrivalentGraph:
    w: int
    edges: tuple

    @property
    def vertices(self) -> list:
        return [("u", i) for i in range(self.w)] + [("d", i) for i in range(self.w)]

    def edge(self, origin: int, color: str) -> Edge:
        for e in self.edges:
            if e.origin == origin and e.color == color:
                return e
        raise InvalidPath(f"no edge of color {color!r} at upper vertex {origin}")

    def out_edges(self, i: int) -> list:
        return [e for e in self.edges if e.origin == i]

    def in_edges(self, j: int) -> list:
        return [e for e in self.edges if e.target == j]


def build_graph(w: int) -> TrivalentGraph:
    """Rungs ``i_u -> i_d`` plus ``i_u -> (i+1)_d`` and ``i_u -> (i-1)_d``, indices mod ``w``."""
    if w < 1:
        raise ValueError("the graph needs w >= 1")
    edges = []
    for i in range(w):
        edges.append(Edge(i, i, "0"))
        edges.append(Edge(i, (i + 1) % w, "+"))
        edges.append(Edge(i, (i - 1) % w, "-"))
    return TrivalentGraph(w, tuple(edges))


def effective_color(step: Step) -> str:
    return step.edge.color if step.forward else _OPPOSITE[step.edge.color]


@dataclass(frozen=True)
class Path:
    steps: tuple

    def __post_init__(self):
        for a, b in zip(self.steps, self.steps[1:]):
            if a.end != b.start:
                raise InvalidPath(f"step ending at {a.end} is followed by one starting at {b.start}")

    def __len__(self):
        return len(self.steps)

    def colors(self) -> list:
        return [effective_color(s) for s in self.steps]

    def shift(self) -> int:
        return sum(_SHIFT[c] for c in self.colors())

    def __add__(self, other: Path) -> Path:
        return Path(self.steps + other.steps)


def parse_path(graph: TrivalentGraph, text: str) -> Path:
    """Parse ``"i:c:f,i:c:r,..."``: the color-``c`` edge at upper vertex ``i``, forward or reverse."""
    steps = []
    for chunk in text.split(","):
        parts = chunk.strip().split(":")
        if len(parts) != 3 or parts[1] not in COLORS or parts[2] not in ("f", "r"):
            raise InvalidPath(f"bad step {chunk!r}")
        try:
            i = int(parts[0])
        except ValueError:
            raise InvalidPath(f"bad vertex index in {chunk!r}") from None
        if not 0 <= i < graph.w:
            raise InvalidPath(f"vertex {i} outside 0..{graph.w - 1}")
        steps.append(Step(graph.edge(i, parts[1]), parts[2] == "f"))
    return Path(tuple(steps))


def path_operator(dec: Decomposition, path: Path, multipliers: Sequence) -> Matrix:
    """``D^{c_l}(t_l) o ... o D^{c_1}(t_1)`` on the last filtration step.

    ``multipliers`` is either one vector per step or a single vector, which is
    then used for every step.
    """
    if len(path) == 0:
        raise InvalidPath("empty path")
    if multipliers and not isinstance(multipliers[0], (list, tuple)):
        multipliers = [multipliers]
    multipliers = [vec(t) for t in multipliers]
    if len(multipliers) == 1:
        multipliers = multipliers * len(path)
    if len(multipliers) != len(path):
        raise InvalidPath(f"{len(multipliers)} multipliers for a path of length {len(path)}")
    for t in multipliers:
        if not dec.h0.contains(t):
            raise NotInH0("multiplier is not in H^0")
    cache: dict = {}
    result = None
    for step, t in zip(path.steps, multipliers):
        if t not in cache:
            cache[t] = mult_operator(dec, t)
        factor = cache[t].component(_SHIFT[effective_color(step)])
        result = factor if result is None else factor @ result
    return result
