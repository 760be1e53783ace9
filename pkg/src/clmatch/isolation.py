"""Extracting the unique minimum-weight matching of a given size.

The determinant route pads ``G`` to a graph ``G'`` whose perfect matchings
are exactly the extensions of size-``k`` matchings of ``G``, then reads the
unique minimum perfect matching of ``G'`` off the low-order bits of the
determinant and adjugate of its matrix ``N[i][j] = 2**W'(i, j)``.  The
combinatorial route enumerates matchings directly.  Both routes certify
their answer before returning it, so a non-isolating weight assignment
raises :class:`PromiseViolation` instead of producing a wrong matching.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .determinant import det_and_adjugate, two_adic_valuation
from .errors import InputError, PromiseViolation
from .graph import BipartiteGraph, validate_matching
from .paths import has_nonpositive_cycle

BACKENDS = ("mvv", "combinatorial")


@dataclass(frozen=True)
class ExtendedGraph:
    """The padded graph ``G'`` for matchings of size ``k``.

    Local vertex ids run over ``range(size)`` on each side, originals first.
    Global 1-based ids: left originals ``1..n``, left new ``n+1..2n-k``,
    right originals ``2n-k+1..3n-k``, right new ``3n-k+1..2(2n-k)``.
    ``origin[i]`` is the index in ``base`` of extended edge ``i``, or
    ``None`` for clique edges.
    """

    base: BipartiteGraph
    k: int
    scale: int
    edges: tuple[tuple[int, int], ...]
    weights: tuple[int, ...]
    origin: tuple[int | None, ...]

    @property
    def size(self) -> int:
        return 2 * self.base.n - self.k

    def left_id(self, i: int) -> int:
        return i + 1

    def right_id(self, j: int) -> int:
        return self.size + j + 1

    def matrix(self) -> list[list[int]]:
        m = self.size
        N = [[0] * m for _ in range(m)]
        for (i, j), w in zip(self.edges, self.weights):
            N[i][j] = 1 << w
        return N


def clique_weight_bound(n: int, k: int) -> int:
    """Largest total clique weight a perfect matching of ``G'`` can carry.

    Every new vertex is matched by exactly one clique edge, whose other end
    is an original vertex of the opposite side.
    """
    m = 2 * n - k
    left_new = range(n + 1, m + 1)
    right_new = range(m + n + 1, 2 * m + 1)
    return sum(x * (m + n) for x in left_new) + sum(x * n for x in right_new)


def extend_to_perfect(G: BipartiteGraph, k: int, W: Sequence[int],
                      scale: str | int = "exact") -> ExtendedGraph:
    """Build ``G'`` and ``W'`` for size-``k`` matchings of ``G``.

    ``scale="exact"`` multiplies base weights by one more than
    :func:`clique_weight_bound`; ``"polynomial"`` uses ``10 * n**4``; an int is
    used as given.
    """
    n = G.n
    if not 0 <= k <= n:
        raise InputError(f"k={k} outside [0, {n}]")
    if len(W) != G.num_edges:
        raise InputError("weight vector length does not match the edge list")
    if scale == "exact":
        S = clique_weight_bound(n, k) + 1
    elif scale == "polynomial":
        S = 10 * n ** 4
    else:
        S = int(scale)
    m = 2 * n - k
    edges, weights, origin = [], [], []
    for idx, (u, v) in enumerate(G.edges):
        edges.append((u, v))
        weights.append(W[idx] * S)
        origin.append(idx)
    for u in range(n):
        for j in range(n, m):
            edges.append((u, j))
            weights.append((u + 1) * (m + j + 1))
            origin.append(None)
    for i in range(n, m):
        for v in range(n):
            edges.append((i, v))
            weights.append((i + 1) * (m + v + 1))
            origin.append(None)
    return ExtendedGraph(G, k, S, tuple(edges), tuple(weights), tuple(origin))


def clique_unique_matching(s: int, left_indices: Sequence[int],
                           right_indices: Sequence[int]) -> list[tuple[int, int]]:
    """The minimum perfect matching of an ``s x s`` clique under ``w(u, v) = u * v``.

    Pairs the i-th smallest left index with the i-th largest right index.
    """
    if len(left_indices) != s or len(right_indices) != s:
        raise InputError("index lists must both have length s")
    if list(left_indices) != sorted(left_indices) or list(right_indices) != sorted(right_indices):
        raise InputError("index lists must be sorted increasing")
    return [(left_indices[i], right_indices[s - 1 - i]) for i in range(s)]


def _mvv_perfect(ext: ExtendedGraph) -> frozenset:
    N = ext.matrix()
    det, adj = det_and_adjugate(N)
    if det == 0:
        raise PromiseViolation("Edmonds matrix is singular: no perfect matching survives")
    w_star = two_adic_valuation(det)
    chosen = []
    for idx, ((i, j), w) in enumerate(zip(ext.edges, ext.weights)):
        minor = adj[j][i]
        if minor == 0:
            continue
        # |minor| * 2**w / 2**w_star is odd exactly when the valuations add up.
        if two_adic_valuation(minor) + w == w_star:
            chosen.append(idx)
    return frozenset(chosen)


def extract_isolated_perfect(ext: ExtendedGraph) -> frozenset:
    """Indices (into ``ext.edges``) of the unique minimum perfect matching of ``G'``."""
    M = _mvv_perfect(ext)
    m = ext.size
    lefts = {ext.edges[i][0] for i in M}
    rights = {ext.edges[i][1] for i in M}
    if len(M) != m or len(lefts) != m or len(rights) != m:
        raise PromiseViolation("minor test did not yield a perfect matching")
    arcs = []
    for i, ((u, v), w) in enumerate(zip(ext.edges, ext.weights)):
        if i in M:
            arcs.append((m + v, u, -w))
        else:
            arcs.append((u, m + v, w))
    if has_nonpositive_cycle(2 * m, arcs):
        raise PromiseViolation("weights do not isolate a perfect matching of G'")
    return M


def _enumerate_size_k(G: BipartiteGraph, k: int, W: Sequence[int]):
    """Yield ``(weight, edges)`` for every size-``k`` matching of ``G``."""
    adj = G.left_adjacency
    n = G.n

    def rec(u, used_right, chosen, weight):
        need = k - len(chosen)
        if need == 0:
            yield weight, frozenset(chosen)
            return
        if n - u < need:
            return
        yield from rec(u + 1, used_right, chosen, weight)
        for i in adj[u]:
            v = G.edges[i][1]
            if not used_right & (1 << v):
                chosen.append(i)
                yield from rec(u + 1, used_right | (1 << v), chosen, weight + W[i])
                chosen.pop()

    yield from rec(0, 0, [], 0)


def _combinatorial_size_k(G: BipartiteGraph, k: int, W: Sequence[int]) -> frozenset:
    best, winners = None, []
    for w, M in _enumerate_size_k(G, k, W):
        if best is None or w < best:
            best, winners = w, [M]
        elif w == best:
            winners.append(M)
    if not winners:
        raise PromiseViolation(f"no matching of size {k} exists")
    if len(winners) > 1:
        raise PromiseViolation(f"{len(winners)} matchings of size {k} tie at weight {best}")
    return winners[0]


def certify_unique_minimum(G: BipartiteGraph, M: frozenset, W: Sequence[int]) -> bool:
    """True iff ``M`` is the unique minimum-weight matching of size ``|M|``.

    Any other matching of the same size differs from ``M`` by a set of
    alternating cycles in the flow residual network of ``M`` (source and
    sink arcs included in both directions), and the weight changes by the
    cycle's weight.  So ``M`` is the unique minimum iff that network has
    no cycle of weight ``<= 0``.
    """
    if not validate_matching(G, M):
        return False
    n = G.n
    s, t = 0, 1
    matched_l = {G.edges[i][0] for i in M}
    matched_r = {G.edges[i][1] for i in M}
    arcs = []
    for u in range(n):
        arcs.append((u + 2, s, 0) if u in matched_l else (s, u + 2, 0))
    for v in range(n):
        arcs.append((t, n + 2 + v, 0) if v in matched_r else (n + 2 + v, t, 0))
    for i, (u, v) in enumerate(G.edges):
        if i in M:
            arcs.append((n + 2 + v, u + 2, -W[i]))
        else:
            arcs.append((u + 2, n + 2 + v, W[i]))
    return not has_nonpositive_cycle(2 * n + 2, arcs)


def extract_isolated_size_k(G: BipartiteGraph, k: int, W: Sequence[int],
                            backend: str = "mvv", scale: str | int = "exact") -> frozenset:
    """The unique minimum-weight size-``k`` matching of ``G`` under ``W``.

    Raises :class:`PromiseViolation` when no size-``k`` matching exists or
    when the minimum is attained more than once.
    """
    if not 0 <= k <= G.n:
        raise InputError(f"k={k} outside [0, {G.n}]")
    if len(W) != G.num_edges:
        raise InputError("weight vector length does not match the edge list")
    if k == 0:
        return frozenset()
    if backend == "mvv":
        ext = extend_to_perfect(G, k, W, scale)
        Mp = extract_isolated_perfect(ext)
        M = frozenset(ext.origin[i] for i in Mp if ext.origin[i] is not None)
    elif backend == "combinatorial":
        M = _combinatorial_size_k(G, k, W)
    else:
        raise InputError(f"unknown backend {backend!r}; choose from {BACKENDS}")
    if len(M) != k or not certify_unique_minimum(G, M, W):
        raise PromiseViolation(f"weights do not isolate a matching of size {k}")
    return M
