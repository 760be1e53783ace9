"""Residual graphs of a matching, threshold edges and weight recovery.

Vertex numbering inside a :class:`ResidualGraph`: ``0`` is the source,
``1`` the sink, left vertex ``u`` is ``2 + u`` and right vertex ``v`` is
``2 + n + v``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import ContractViolation, InputError, PreconditionViolation
from .graph import BipartiteGraph, lift_index, validate_matching
from .isolation import extract_isolated_size_k
from .paths import has_nonpositive_cycle, reachable, walk_distances

SOURCE, SINK = 0, 1


class Arc(NamedTuple):
    tail: int
    head: int
    weight: int
    edge: int | None  # originating edge of G, None for source/sink arcs


@dataclass(frozen=True)
class ResidualGraph:
    n: int
    arcs: tuple[Arc, ...]

    @property
    def num_vertices(self) -> int:
        return 2 * self.n + 2

    def left(self, u: int) -> int:
        return 2 + u

    def right(self, v: int) -> int:
        return 2 + self.n + v

    def vertex_name(self, x: int) -> str:
        if x == SOURCE:
            return "s"
        if x == SINK:
            return "t"
        if x < 2 + self.n:
            return f"L{x - 2}"
        return f"R{x - 2 - self.n}"

    def arc_of_edge(self, e: int) -> int:
        """Position in ``arcs`` of the arc coming from edge ``e``."""
        for pos, a in enumerate(self.arcs):
            if a.edge == e:
                return pos
        raise InputError(f"edge {e} has no arc")

    def dump(self) -> str:
        """One line per arc: ``tail head weight origin``."""
        lines = []
        for a in self.arcs:
            origin = "-" if a.edge is None else str(a.edge)
            lines.append(f"{self.vertex_name(a.tail)} {self.vertex_name(a.head)} {a.weight} {origin}")
        return "\n".join(lines)


def alternating_weight(M: frozenset, W: Sequence[int], e: int) -> int:
    return -W[e] if e in M else W[e]


def build_residual(G: BipartiteGraph, M, W: Sequence[int],
                   skip_edge: int | None = None) -> ResidualGraph:
    """Residual graph of matching ``M``; ``skip_edge`` leaves that edge's arc out."""
    M = frozenset(M)
    if not validate_matching(G, M):
        raise InputError("not a matching")
    if len(W) != G.num_edges:
        raise InputError("weight vector length does not match the edge list")
    n = G.n
    matched_l = {G.edges[i][0] for i in M}
    matched_r = {G.edges[i][1] for i in M}
    arcs = [Arc(SOURCE, 2 + u, 0, None) for u in range(n) if u not in matched_l]
    arcs += [Arc(2 + n + v, SINK, 0, None) for v in range(n) if v not in matched_r]
    for i, (u, v) in enumerate(G.edges):
        if i == skip_edge:
            continue
        if i in M:
            arcs.append(Arc(2 + n + v, 2 + u, -W[i], i))
        else:
            arcs.append(Arc(2 + u, 2 + n + v, W[i], i))
    return ResidualGraph(n, tuple(arcs))


def min_weight_path(R: ResidualGraph, a: int, b: int, skip_arc: int | None = None,
                    check_cycles: bool = False) -> int | None:
    """Minimum weight of a simple ``a``-``b`` path, ``None`` if unreachable.

    Requires that every cycle has positive weight; with ``check_cycles``
    that is verified and :class:`PreconditionViolation` raised otherwise.
    """
    arcs = [a_ for i, a_ in enumerate(R.arcs) if i != skip_arc]
    if check_cycles and has_nonpositive_cycle(R.num_vertices, arcs):
        raise PreconditionViolation("residual graph has a cycle of non-positive weight")
    return walk_distances(R.num_vertices, arcs, a)[b]


def is_maximum(G: BipartiteGraph, M, W: Sequence[int] | None = None) -> bool:
    """True iff the sink is unreachable from the source, i.e. ``M`` is maximum."""
    if W is None:
        W = [0] * G.num_edges
    R = build_residual(G, M, W)
    return SINK not in reachable(R.num_vertices, R.arcs, SOURCE)


def find_threshold_edge(G: BipartiteGraph, M, W: Sequence[int]) -> int | None:
    """First non-matching edge lying on some but not all minimum s-t paths."""
    M = frozenset(M)
    R = build_residual(G, M, W)
    V = R.num_vertices
    from_s = walk_distances(V, R.arcs, SOURCE)
    to_t = walk_distances(V, R.arcs, SINK, reverse=True)
    best = from_s[SINK]
    if best is None:
        return None
    for pos, arc in enumerate(R.arcs):
        if arc.edge is None or arc.edge in M:
            continue
        du, dv = from_s[arc.tail], to_t[arc.head]
        if du is None or dv is None or du + arc.weight + dv != best:
            continue
        if walk_distances(V, R.arcs, SOURCE, skip=pos)[SINK] == best:
            return arc.edge
    return None


class Outcome(enum.Enum):
    BOT = "bot"
    ISOLATED = "isolated"
    THRESHOLD = "threshold"


@dataclass(frozen=True)
class IsolationOutcome:
    """Result of testing size ``k + 1`` given the isolated size-``k`` matching."""

    kind: Outcome
    matching: frozenset  # the isolated size-k matching
    edge: int | None = None  # threshold edge, only for THRESHOLD


def check_k_plus_1(G: BipartiteGraph, k: int, W: Sequence[int],
                   backend: str = "mvv") -> IsolationOutcome:
    """Decide between: no larger matching / isolated at k+1 / threshold edge.

    Requires that ``W`` isolates a size-``k`` matching; otherwise
    :class:`PromiseViolation` propagates from the extraction.
    """
    M = extract_isolated_size_k(G, k, W, backend)
    if is_maximum(G, M, W):
        return IsolationOutcome(Outcome.BOT, M)
    e = find_threshold_edge(G, M, W)
    if e is None:
        return IsolationOutcome(Outcome.ISOLATED, M)
    return IsolationOutcome(Outcome.THRESHOLD, M, e)


def recover_weight(G: BipartiteGraph, k: int, W: Sequence[int], e: int,
                   backend: str = "mvv") -> int:
    """Recompute ``W[e]`` of a threshold edge from the other weights.

    ``W[e]`` itself is never read.  The isolated size-``k`` matching is
    rebuilt on ``G`` minus ``e`` and the weight is
    ``d'(s, t) - d(s, u) - d(v, t)`` with every distance taken in the
    residual graph without ``e``'s arc.
    """
    G.check_edge_set([e])
    W_rest = [w for i, w in enumerate(W) if i != e]
    M_rest = extract_isolated_size_k(G.without_edge(e), k, W_rest, backend)
    M = frozenset(lift_index(i, e) for i in M_rest)
    placeholder = list(W)
    placeholder[e] = 0
    R = build_residual(G, M, placeholder, skip_edge=e)
    u, v = G.edges[e]
    V = R.num_vertices
    from_s = walk_distances(V, R.arcs, SOURCE)
    to_t = walk_distances(V, R.arcs, SINK, reverse=True)
    d_st, d_su, d_vt = from_s[SINK], from_s[R.left(u)], to_t[R.right(v)]
    if d_st is None or d_su is None or d_vt is None:
        raise ContractViolation(f"edge {e} is not a threshold edge: a distance is infinite")
    return d_st - (d_su + d_vt)
