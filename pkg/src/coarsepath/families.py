"""Small named graph families used by tests, examples and the corpus."""

from __future__ import annotations

from .graph import Graph


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with center 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def spider(legs: int, length: int) -> Graph:
    """Center 0 with ``legs`` paths of ``length`` vertices each.

    Leg ``i`` occupies vertices ``1 + i*length .. (i+1)*length``, tip last.
    """
    edges = []
    for i in range(legs):
        prev = 0
        for j in range(length):
            v = 1 + i * length + j
            edges.append((prev, v))
            prev = v
    return Graph(1 + legs * length, edges)


def ladder(rungs: int) -> Graph:
    """2 x rungs grid; top row 0..rungs-1, bottom row rungs..2*rungs-1."""
    edges = []
    for i in range(rungs):
        edges.append((i, rungs + i))
        if i + 1 < rungs:
            edges.append((i, i + 1))
            edges.append((rungs + i, rungs + i + 1))
    return Graph(2 * rungs, edges)
