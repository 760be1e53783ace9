"""Shortest walks and cycle checks on small weighted digraphs.

Arcs are ``(tail, head, weight)`` triples over vertices ``0..num_vertices-1``.
"""

from __future__ import annotations

from typing import Sequence

Arc = tuple  # (tail, head, weight, ...); extra fields are ignored


def walk_distances(num_vertices: int, arcs: Sequence[Arc], source: int,
                   skip: int | None = None, reverse: bool = False) -> list[int | None]:
    """Minimum weight of a walk with at most ``len(arcs)`` arcs from ``source``.

    ``None`` marks unreachable vertices.  ``skip`` is the position of an arc
    to leave out; ``reverse`` computes distances *to* ``source`` instead.
    When the graph has no cycle of non-positive weight the minimising walk
    is a simple path, so these are simple-path distances.
    """
    dist: list[int | None] = [None] * num_vertices
    dist[source] = 0
    live = [a for i, a in enumerate(arcs) if i != skip]
    if reverse:
        live = [(a[1], a[0], a[2]) for a in live]
    for _ in range(len(live)):
        changed = False
        prev = dist[:]
        for a in live:
            du = prev[a[0]]
            if du is None:
                continue
            cand = du + a[2]
            dv = dist[a[1]]
            if dv is None or cand < dv:
                dist[a[1]] = cand
                changed = True
        if not changed:
            break
    return dist


def reachable(num_vertices: int, arcs: Sequence[Arc], source: int) -> set[int]:
    out: dict[int, list[int]] = {}
    for a in arcs:
        out.setdefault(a[0], []).append(a[1])
    seen, stack = {source}, [source]
    while stack:
        x = stack.pop()
        for y in out.get(x, ()):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def has_nonpositive_cycle(num_vertices: int, arcs: Sequence[Arc]) -> bool:
    """True iff some directed cycle has total weight ``<= 0``.

    Each weight ``w`` becomes ``w * (V + 1) - 1``: a simple cycle has at
    most ``V`` arcs, so its new weight is negative exactly when the old one
    was ``<= 0``.  A negative cycle is then found by Bellman-Ford started
    from every vertex at once.
    """
    scale = num_vertices + 1
    scaled = [(a[0], a[1], a[2] * scale - 1) for a in arcs]
    dist = [0] * num_vertices
    for _ in range(num_vertices):
        changed = False
        for u, v, w in scaled:
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                changed = True
        if not changed:
            return False
    return True
