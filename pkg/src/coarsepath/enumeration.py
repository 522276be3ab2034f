"""Isomorph-free enumeration of small connected graphs and random sampling.

Every connected graph has a vertex whose removal leaves it connected, so
all connected graphs on ``n`` vertices arise by joining a new vertex to a
nonempty subset of a connected graph on ``n - 1`` vertices.  Duplicates are
removed with a canonical form computed by colour refinement plus
individualization; twins in the cell being split are interchangeable, so
only one of each twin class is tried.
"""

from __future__ import annotations

import random
from collections.abc import Iterator
from functools import lru_cache

from .errors import TooLarge
from .graph import Graph, iter_bits, parse_graph6

MAX_ENUMERATION_N = 8


def _refine(masks: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement; cells are split by neighbour counts into every cell."""
    while True:
        cell_masks = [sum(1 << v for v in c) for c in cells]
        out: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                sig = tuple(bin(masks[v] & cm).count("1") for cm in cell_masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                changed = True
            for sig in sorted(groups):
                out.append(groups[sig])
        cells = out
        if not changed:
            return cells


def _code(masks: tuple[int, ...], perm: list[int]) -> int:
    code = 0
    for j in range(1, len(perm)):
        mj = masks[perm[j]]
        for i in range(j):
            code = code << 1 | (mj >> perm[i] & 1)
    return code


def _twin_representatives(masks: tuple[int, ...], cell: list[int]) -> list[int]:
    reps: list[int] = []
    for v in cell:
        if not any(masks[v] & ~(1 << u) == masks[u] & ~(1 << v) for u in reps):
            reps.append(v)
    return reps


def canonical_order(g: Graph) -> list[int]:
    """Vertex order whose relabelled adjacency code is minimal among explored leaves.

    Isomorphic graphs get identical relabelled graphs.
    """
    masks = g.masks
    best: list = [None, None]

    def search(cells: list[list[int]]) -> None:
        cells = _refine(masks, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            perm = [c[0] for c in cells]
            code = _code(masks, perm)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, perm
            return
        cell = cells[target]
        for v in _twin_representatives(masks, cell):
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1 :])

    search([list(range(g.n))])
    return best[1]


def canonical_form(g: Graph) -> Graph:
    perm = canonical_order(g)
    pos = {v: i for i, v in enumerate(perm)}
    return Graph(g.n, [(pos[u], pos[v]) for u, v in g.edges])


@lru_cache(maxsize=None)
def _connected_graphs(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph(1, []),)
    found: dict[tuple[int, int], Graph] = {}
    for base in _connected_graphs(n - 1):
        for subset in range(1, 1 << (n - 1)):
            h = Graph(n, list(base.edges) + [(u, n - 1) for u in iter_bits(subset)])
            perm = canonical_order(h)
            key = (h.m, _code(h.masks, perm))
            if key not in found:
                pos = {v: i for i, v in enumerate(perm)}
                found[key] = Graph(n, [(pos[u], pos[v]) for u, v in h.edges])
    return tuple(found[k] for k in sorted(found))


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """Each connected graph on ``n`` vertices once, canonically labelled, in a fixed order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > MAX_ENUMERATION_N:
        raise TooLarge(f"enumeration is limited to n <= {MAX_ENUMERATION_N}")
    yield from _connected_graphs(n)


def read_graph6_corpus(text: str) -> list[Graph]:
    """One graph6 string per non-blank line."""
    return [parse_graph6(line) for line in text.splitlines() if line.strip()]


def random_connected_graph(n: int, p: float, seed) -> Graph:
    """G(n, p) conditioned on being connected, by rejection; deterministic in ``seed``."""
    if not 0 < p <= 1:
        raise ValueError(f"edge probability must lie in (0, 1], got {p}")
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(seed)
    while True:
        edges = [(u, v) for v in range(n) for u in range(v) if rng.random() < p]
        if _is_connected(n, edges):
            return Graph(n, edges)


def _is_connected(n: int, edges: list[tuple[int, int]]) -> bool:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parts = n
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            parts -= 1
    return parts == 1
