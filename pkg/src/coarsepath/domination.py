"""Dominating pairs and dominating shortest paths."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .errors import NotAPath, NotShortestPath, TooManyPaths
from .graph import Graph
from .layering import Caterpillar, best_extended_layering, extended_layering

DEFAULT_PATH_CAP = 10**6


@dataclass(frozen=True)
class DominationWitness:
    kind: str  # "pair" | "path"
    vertices: tuple[int, ...]
    k: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "vertices": list(self.vertices), "k": self.k}


def check_path(g: Graph, path: Sequence[int]) -> None:
    if not path:
        raise NotAPath("empty path")
    if len(set(path)) != len(path) or any(not 0 <= v < g.n for v in path):
        raise NotAPath(f"{list(path)} is not a simple vertex sequence")
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            raise NotAPath(f"{a}-{b} is not an edge")


def is_shortest_path(g: Graph, path: Sequence[int]) -> bool:
    return g.dist[path[0]][path[-1]] == len(path) - 1


def check_shortest_path(g: Graph, path: Sequence[int]) -> None:
    check_path(g, path)
    if not is_shortest_path(g, path):
        raise NotShortestPath(f"{list(path)} is not a shortest {path[0]}-{path[-1]} path")


def path_eccentricity(g: Graph, path: Sequence[int]) -> int:
    """Largest distance from a vertex of G to the path."""
    check_path(g, path)
    dist = g.dist
    return max(min(dist[v][x] for x in path) for v in range(g.n))


def is_k_dominating_pair(g: Graph, x: int, y: int, k: int) -> bool:
    """Every x-y path passes within distance k of every vertex.

    Equivalently, every ``w`` far (more than k) from both ends has a
    radius-k disk that separates ``x`` from ``y``.
    """
    if x == y:
        raise ValueError("a dominating pair needs two distinct vertices")
    dist = g.dist
    full = g.full_mask
    for w in range(g.n):
        if dist[w][x] <= k or dist[w][y] <= k:
            continue
        allowed = full & ~g.disk_mask(w, k)
        if g.component_mask(x, allowed) >> y & 1:
            return False
    return True


def dpr(g: Graph) -> tuple[int, tuple[int, int]]:
    """Smallest k admitting a k-dominating pair, with the lexicographically first pair."""
    if g.n == 1:
        return 0, (0, 0)
    for k in range(g.n):
        for x in range(g.n):
            for y in range(x + 1, g.n):
                if is_k_dominating_pair(g, x, y, k):
                    return k, (x, y)
    raise AssertionError("unreachable: any pair dominates at k = n-1")


def iter_shortest_paths(g: Graph, s: int, t: int):
    """All shortest s-t paths, in lexicographic order."""
    dist = g.dist
    dt = dist[t]
    path = [s]

    def rec(u: int):
        if u == t:
            yield tuple(path)
            return
        for w in g.adjacency[u]:
            if dt[w] == dt[u] - 1:
                path.append(w)
                yield from rec(w)
                path.pop()

    yield from rec(s)


def exact_dsp(g: Graph, cap: int = DEFAULT_PATH_CAP) -> tuple[int, tuple[int, ...]]:
    """Minimum eccentricity over all shortest paths (single vertices included).

    Raises :class:`TooManyPaths` once more than ``cap`` paths have been examined.
    """
    dist = g.dist
    n = g.n
    seen = 0
    best = None
    for s in range(n):
        for t in range(s, n):
            for path in iter_shortest_paths(g, s, t):
                seen += 1
                if seen > cap:
                    raise TooManyPaths(f"more than {cap} shortest paths")
                ecc = max(min(dist[v][x] for x in path) for v in range(n))
                if best is None or ecc < best[0]:
                    best = (ecc, path)
    return best


def _lowest_parent_geodesic(g: Graph, s: int, t: int) -> tuple[int, ...]:
    dist = g.dist
    path = [t]
    while path[-1] != s:
        u = path[-1]
        path.append(min(w for w in g.adjacency[u] if dist[s][w] == dist[s][u] - 1))
    return tuple(reversed(path))


def heuristic_dsp(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Geodesics from best extended-layering starts to their farthest vertices.

    An upper bound on the exact value, with no proven guarantee.
    """
    delta, _, _ = best_extended_layering(g)
    best = None
    for s in range(g.n):
        if extended_layering(g, s)[1] != delta:
            continue
        ecc = g.eccentricities[s]
        for t in range(g.n):
            if g.dist[s][t] != ecc:
                continue
            path = _lowest_parent_geodesic(g, s, t)
            k = path_eccentricity(g, path)
            if best is None or k < best[0]:
                best = (k, path)
    return best


def caterpillar_from_dominating_path(g: Graph, path: Sequence[int]) -> Caterpillar:
    """Spine is the path; every other vertex hangs on its nearest path vertex (earliest wins)."""
    check_shortest_path(g, path)
    on_path = set(path)
    dist = g.dist
    attach = {}
    for v in range(g.n):
        if v not in on_path:
            attach[v] = min(path, key=lambda x, row=dist[v]: (row[x], path.index(x)))
    return Caterpillar(tuple(path), attach)
