"""Ground-truth oracles: exhaustive matching enumeration and Hopcroft-Karp.

Nothing here imports the extraction, residual or driver modules; the
oracles only read ``G.n`` and ``G.edges``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Sequence

from .errors import InputError

ENUMERATION_BOUND = 8


@dataclass
class OracleReport:
    max_size: int
    count_by_size: dict[int, int]
    min_weight: dict[int, int] = field(default_factory=dict)
    argmins: dict[int, list[frozenset]] = field(default_factory=dict)
    matchings: list[frozenset] | None = None

    def isolating(self, k: int) -> bool:
        return len(self.argmins.get(k, ())) == 1

    def to_dict(self) -> dict:
        return {
            "max_size": self.max_size,
            "count_by_size": {str(k): v for k, v in sorted(self.count_by_size.items())},
            "min_weight": {str(k): v for k, v in sorted(self.min_weight.items())},
            "isolating": {str(k): self.isolating(k) for k in sorted(self.count_by_size)},
        }


def all_matchings(G, k: int | None = None):
    """Yield every matching of ``G`` (of size ``k`` only, if given)."""
    n = G.n
    if n > ENUMERATION_BOUND:
        raise InputError(f"enumeration refused for n={n} > {ENUMERATION_BOUND}")
    index = {e: i for i, e in enumerate(G.edges)}
    sizes = range(n + 1) if k is None else [k]
    for size in sizes:
        for lefts in combinations(range(n), size):
            for rights in permutations(range(n), size):
                try:
                    yield frozenset(index[(u, v)] for u, v in zip(lefts, rights))
                except KeyError:
                    continue


def brute_force_matchings(G, weights: Sequence[int] | None = None, k: int | None = None,
                          keep_all: bool = False) -> OracleReport:
    """Enumerate matchings and summarise sizes, minimum weights and isolation."""
    W = weights if weights is not None else [0] * len(G.edges)
    counts: dict[int, int] = {}
    min_w: dict[int, int] = {}
    argmins: dict[int, list[frozenset]] = {}
    kept = [] if keep_all else None
    for M in all_matchings(G, k):
        size = len(M)
        counts[size] = counts.get(size, 0) + 1
        w = sum(W[i] for i in M)
        if size not in min_w or w < min_w[size]:
            min_w[size], argmins[size] = w, [M]
        elif w == min_w[size]:
            argmins[size].append(M)
        if kept is not None:
            kept.append(M)
    return OracleReport(max(counts, default=0), counts, min_w, argmins, kept)


def max_matching_size(G) -> int:
    return brute_force_matchings(G).max_size


def oracle_is_isolating(G, k: int, W: Sequence[int]) -> bool:
    """True iff exactly one size-``k`` matching attains the minimum weight."""
    return brute_force_matchings(G, W, k).isolating(k)


def oracle_min_matching(G, k: int, W: Sequence[int]) -> frozenset | None:
    """The unique minimum size-``k`` matching, or ``None`` if not isolated."""
    rep = brute_force_matchings(G, W, k)
    return rep.argmins[k][0] if rep.isolating(k) else None


def hopcroft_karp(G) -> frozenset:
    """Maximum matching by Hopcroft-Karp; returns edge indices."""
    n = G.n
    adj = [[] for _ in range(n)]
    for u, v in G.edges:
        adj[u].append(v)
    pair_l = [-1] * n
    pair_r = [-1] * n
    dist = [0] * n
    unreached = n + 1

    def bfs() -> bool:
        q = deque()
        for u in range(n):
            if pair_l[u] == -1:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = unreached
        found = False
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = pair_r[v]
                if w == -1:
                    found = True
                elif dist[w] == unreached:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adj[u]:
            w = pair_r[v]
            if w == -1 or (dist[w] == dist[u] + 1 and dfs(w)):
                pair_l[u], pair_r[v] = v, u
                return True
        dist[u] = unreached
        return False

    while bfs():
        for u in range(n):
            if pair_l[u] == -1:
                dfs(u)
    index = {e: i for i, e in enumerate(G.edges)}
    return frozenset(index[(u, pair_l[u])] for u in range(n) if pair_l[u] != -1)
