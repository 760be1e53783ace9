"""Balanced bipartite graphs, matchings and the edge-set algebra on them.

Edges are referred to by their index in the graph's canonical edge list,
which is always sorted lexicographically by ``(left, right)``.  Every
"first edge" tie-break in the package refers to that order.  Matchings and
other edge sets are plain ``frozenset`` objects of edge indices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import GraphTooLarge, InputError

MAX_N = 16

EdgeSet = frozenset


def ceil_log2(x: int) -> int:
    """Smallest ``c`` with ``2**c >= x`` (0 for ``x <= 1``)."""
    if x < 1:
        raise InputError(f"ceil_log2 needs a positive argument, got {x}")
    return (x - 1).bit_length()


@dataclass(frozen=True)
class BipartiteGraph:
    """A bipartite graph with ``n`` vertices on each side.

    ``edges`` may be given in any order; it is stored sorted.  Duplicate or
    out-of-range edges raise :class:`InputError`.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()
    max_n: int = field(default=MAX_N, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError(f"n must be a positive integer, got {self.n!r}")
        if self.n > self.max_n:
            raise GraphTooLarge(f"n={self.n} exceeds the supported maximum {self.max_n}")
        edges = tuple(sorted((int(u), int(v)) for u, v in self.edges))
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"edge ({u}, {v}) out of range for n={self.n}")
        if len(set(edges)) != len(edges):
            raise InputError("duplicate edge in edge list")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def complete(cls, n: int) -> BipartiteGraph:
        return cls(n, tuple((u, v) for u in range(n) for v in range(n)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def index(self) -> dict[tuple[int, int], int]:
        """Map ``(left, right)`` to the edge's canonical index."""
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def left_adjacency(self) -> tuple[tuple[int, ...], ...]:
        """For every left vertex, the indices of its incident edges."""
        adj = [[] for _ in range(self.n)]
        for i, (u, _) in enumerate(self.edges):
            adj[u].append(i)
        return tuple(tuple(a) for a in adj)

    def edge_index(self, u: int, v: int) -> int:
        try:
            return self.index[(u, v)]
        except KeyError:
            raise InputError(f"({u}, {v}) is not an edge") from None

    def check_edge_set(self, edges: Iterable[int]) -> frozenset:
        s = frozenset(edges)
        for i in s:
            if not (isinstance(i, int) and 0 <= i < self.num_edges):
                raise InputError(f"edge index {i!r} out of range (|E|={self.num_edges})")
        return s

    def without_edge(self, e: int) -> BipartiteGraph:
        """The graph with edge ``e`` removed.

        Indices below ``e`` are unchanged and indices above it shift down by
        one; use :func:`lift_index` to map back.
        """
        self.check_edge_set([e])
        return BipartiteGraph(self.n, self.edges[:e] + self.edges[e + 1:], self.max_n)

    def pairs(self, edges: Iterable[int]) -> list[tuple[int, int]]:
        return sorted(self.edges[i] for i in edges)

    def weight(self, edges: Iterable[int], weights: Sequence[int]) -> int:
        return sum(weights[i] for i in edges)


def lift_index(i: int, removed: int) -> int:
    """Map an edge index of ``G.without_edge(removed)`` back to ``G``."""
    return i if i < removed else i + 1


def validate_matching(G: BipartiteGraph, M: Iterable[int]) -> bool:
    """True iff no two edges of ``M`` share an endpoint."""
    M = G.check_edge_set(M)
    left, right = set(), set()
    for i in M:
        u, v = G.edges[i]
        if u in left or v in right:
            return False
        left.add(u)
        right.add(v)
    return True


def symmetric_difference(M1: Iterable[int], M2: Iterable[int],
                         graph: BipartiteGraph | None = None) -> frozenset:
    """``(M1 - M2) | (M2 - M1)``; indices are range-checked when ``graph`` is given."""
    a, b = frozenset(M1), frozenset(M2)
    if graph is not None:
        graph.check_edge_set(a | b)
    return a ^ b


def xor_apply(M: Iterable[int], S: Iterable[int],
              graph: BipartiteGraph | None = None) -> frozenset:
    """``(M | S) - (M & S)``.  The result need not be a matching."""
    a, b = frozenset(M), frozenset(S)
    if graph is not None:
        graph.check_edge_set(a | b)
    return (a | b) - (a & b)


class ComponentKind(enum.Enum):
    EVEN_CYCLE = "even alternating cycle"
    EVEN_PATH = "even alternating path"
    AUGMENTING_M1 = "augmenting path w.r.t. M1"
    AUGMENTING_M2 = "augmenting path w.r.t. M2"


@dataclass(frozen=True)
class Component:
    kind: ComponentKind
    edges: frozenset


def classify_components(G: BipartiteGraph, H: Iterable[int], M1: Iterable[int],
                        M2: Iterable[int]) -> list[Component]:
    """Split ``H = M1 ^ M2`` into connected components and label each one.

    Components are returned ordered by their smallest edge index.
    """
    H, M1, M2 = G.check_edge_set(H), frozenset(M1), frozenset(M2)
    if H != M1 ^ M2:
        raise InputError("H must equal the symmetric difference of M1 and M2")

    incident: dict[tuple[str, int], list[int]] = {}
    for i in H:
        u, v = G.edges[i]
        incident.setdefault(("L", u), []).append(i)
        incident.setdefault(("R", v), []).append(i)

    seen: set[int] = set()
    out = []
    for start in sorted(H):
        if start in seen:
            continue
        comp, stack = set(), [start]
        while stack:
            i = stack.pop()
            if i in comp:
                continue
            comp.add(i)
            u, v = G.edges[i]
            stack.extend(incident[("L", u)])
            stack.extend(incident[("R", v)])
        seen |= comp

        vertices = {("L", G.edges[i][0]) for i in comp} | {("R", G.edges[i][1]) for i in comp}
        degrees = [len(incident[x]) for x in vertices]
        assert max(degrees) <= 2, "a vertex meets two edges of the same matching"
        for x in vertices:
            if len(incident[x]) == 2:
                a, b = incident[x]
                assert (a in M1) != (b in M1), "component does not alternate"

        in_m1 = sum(1 for i in comp if i in M1)
        in_m2 = len(comp) - in_m1
        if all(d == 2 for d in degrees):
            assert in_m1 == in_m2
            kind = ComponentKind.EVEN_CYCLE
        elif in_m1 == in_m2:
            kind = ComponentKind.EVEN_PATH
        elif in_m2 == in_m1 + 1:
            kind = ComponentKind.AUGMENTING_M1
        elif in_m1 == in_m2 + 1:
            kind = ComponentKind.AUGMENTING_M2
        else:  # pragma: no cover - impossible for alternating paths
            raise AssertionError("unclassifiable component")
        out.append(Component(kind, frozenset(comp)))
    return out


def read_graph(text: str) -> BipartiteGraph:
    """Parse the text format: ``"n m"`` then ``m`` lines ``"u v"``."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or len(lines[0]) != 2:
        raise InputError("graph file must start with a line 'n m'")
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
        pairs = [(int(a), int(b)) for a, b in lines[1:]]
    except ValueError as exc:
        raise InputError(f"malformed graph file: {exc}") from None
    if len(pairs) != m:
        raise InputError(f"header announces {m} edges but {len(pairs)} follow")
    if len(set(pairs)) != len(pairs):
        raise InputError("duplicate edge line in graph file")
    return BipartiteGraph(n, tuple(pairs))


def write_graph(G: BipartiteGraph) -> str:
    return "\n".join([f"{G.n} {G.num_edges}"] + [f"{u} {v}" for u, v in G.edges]) + "\n"
