"""Disk interception index and fat K3 / K1,3 minors.

A disk ``D(x, r)`` intercepts ``y`` and ``z`` when deleting it leaves no
``y``-``z`` path; a disk that swallows an endpoint intercepts trivially.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import ExtractionFailed, PreconditionFailed
from .graph import Graph, iter_bits, mask_of


def disk_intercepts(g: Graph, center: int, r: int, a: int, b: int) -> bool:
    allowed = g.full_mask & ~g.disk_mask(center, r)
    return not g.component_mask(a, allowed) >> b & 1


def _first_intercept(g: Graph) -> list[list[list[int]]]:
    """``t[x][y][z]``: least r such that ``D(x, r)`` intercepts ``y`` and ``z``."""
    n = g.n
    full = g.full_mask
    out = []
    for x in range(n):
        table = [[-1] * n for _ in range(n)]
        for r in range(g.eccentricities[x] + 1):
            labels = g.component_labels(full & ~g.disk_mask(x, r))
            for y in range(n):
                row = table[y]
                ly = labels[y]
                for z in range(n):
                    if row[z] < 0 and (ly < 0 or ly != labels[z]):
                        row[z] = r
        out.append(table)
    return out


def bfs_path(g: Graph, a: int, b: int, allowed: int) -> Optional[tuple[int, ...]]:
    """Shortest ``a``-``b`` path inside ``allowed``; neighbours explored in label order."""
    if not (allowed >> a & 1 and allowed >> b & 1):
        return None
    parent = {a: a}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            break
        for w in g.adjacency[u]:
            if allowed >> w & 1 and w not in parent:
                parent[w] = u
                queue.append(w)
    if b not in parent:
        return None
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return tuple(reversed(path))


def geodesic(g: Graph, a: int, b: int) -> tuple[int, ...]:
    return bfs_path(g, a, b, g.full_mask)


def avoidance_paths(g: Graph, triple: tuple[int, int, int], level: int):
    """Paths ``P(a,b)``, ``P(b,c)``, ``P(a,c)``, each avoiding the radius-``level`` disk of the third."""
    a, b, c = triple
    full = g.full_mask
    return (
        bfs_path(g, a, b, full & ~g.disk_mask(c, level)),
        bfs_path(g, b, c, full & ~g.disk_mask(a, level)),
        bfs_path(g, a, c, full & ~g.disk_mask(b, level)),
    )


@dataclass(frozen=True)
class MciCertificate:
    r: int
    triple: Optional[tuple[int, int, int]]
    paths: tuple[tuple[int, ...], ...] = ()

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "triple": list(self.triple) if self.triple else None,
            "paths": [list(p) for p in self.paths],
        }


def triple_radii(g: Graph) -> dict[tuple[int, int, int], int]:
    """For each triple, the least radius at which some member intercepts the other two."""
    t = _first_intercept(g)
    return {
        (a, b, c): min(t[a][b][c], t[b][a][c], t[c][a][b])
        for a, b, c in combinations(range(g.n), 3)
    }


def mci(g: Graph) -> tuple[int, MciCertificate]:
    """Exact index with the first triple attaining it and its avoidance paths one level down."""
    if g.n < 3:
        return 0, MciCertificate(0, None)
    radii = triple_radii(g)
    r = max(radii.values())
    triple = min(t for t, v in radii.items() if v == r)
    paths = avoidance_paths(g, triple, r - 1) if r >= 1 else ()
    return r, MciCertificate(r, triple, paths)


@dataclass(frozen=True)
class FatMinorWitness:
    """Branch sets and connecting paths.

    For ``K3`` the branch sets are ``H1, H2, H3`` and the paths join
    ``(H1,H2), (H2,H3), (H1,H3)``.  For ``K13`` the branch sets are
    ``H0, H1, H2, H3`` and path ``i`` joins ``H(i+1)`` to ``H0``.
    """

    kind: str
    branch_sets: tuple[frozenset[int], ...]
    paths: tuple[tuple[int, ...], ...]
    K: int

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "branch_sets": [sorted(h) for h in self.branch_sets],
            "paths": [list(p) for p in self.paths],
            "K": self.K,
        }

    @classmethod
    def from_json(cls, data: dict) -> "FatMinorWitness":
        return cls(
            data["kind"],
            tuple(frozenset(h) for h in data["branch_sets"]),
            tuple(tuple(p) for p in data["paths"]),
            int(data["K"]),
        )


@dataclass(frozen=True)
class FatVerdict:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _set_distance(g: Graph, xs: Sequence[int], ys: Sequence[int]) -> int:
    dist = g.dist
    return min(dist[x][y] for x in xs for y in ys)


def _is_simple_path(g: Graph, p: Sequence[int]) -> bool:
    if not p or len(set(p)) != len(p) or any(not 0 <= v < g.n for v in p):
        return False
    return all(g.has_edge(a, b) for a, b in zip(p, p[1:]))


def _joins(p: Sequence[int], hi: frozenset[int], hj: frozenset[int]) -> bool:
    ends_ok = (p[0] in hi and p[-1] in hj) or (p[0] in hj and p[-1] in hi)
    return ends_ok and sum(v in hi for v in p) == 1 and sum(v in hj for v in p) == 1


def verify_fat_minor(g: Graph, w: FatMinorWitness) -> FatVerdict:
    """Check every condition of a K-fat K3 or K1,3 minor; report the first that fails."""
    K = w.K
    if K < 1:
        return FatVerdict(False, "K must be positive")
    if w.kind == "K3":
        if len(w.branch_sets) != 3 or len(w.paths) != 3:
            return FatVerdict(False, "K3 needs three branch sets and three paths")
        ends = [(0, 1), (1, 2), (0, 2)]
    elif w.kind == "K13":
        if len(w.branch_sets) != 4 or len(w.paths) != 3:
            return FatVerdict(False, "K13 needs four branch sets and three paths")
        ends = [(1, 0), (2, 0), (3, 0)]
    else:
        return FatVerdict(False, f"unknown minor kind {w.kind!r}")
    hs = w.branch_sets
    for i, h in enumerate(hs):
        if not h or any(not 0 <= v < g.n for v in h):
            return FatVerdict(False, f"branch set {i} is empty or not a vertex set")
        m = mask_of(h)
        if g.component_mask(min(h), m) != m:
            return FatVerdict(False, f"branch set {i} is not connected")
    for idx, (p, (i, j)) in enumerate(zip(w.paths, ends)):
        if not _is_simple_path(g, p):
            return FatVerdict(False, f"path {idx} is not a simple path")
        if not _joins(p, hs[i], hs[j]):
            return FatVerdict(False, f"path {idx} does not join branch sets {i} and {j} properly")
    for i, j in combinations(range(len(hs)), 2):
        if _set_distance(g, hs[i], hs[j]) < K:
            return FatVerdict(False, f"branch sets {i} and {j} are closer than {K}")
    outer = range(len(hs)) if w.kind == "K3" else range(1, 4)
    for idx, (p, (i, j)) in enumerate(zip(w.paths, ends)):
        for k in outer:
            if k not in (i, j) and _set_distance(g, p, hs[k]) < K:
                return FatVerdict(False, f"path {idx} is closer than {K} to branch set {k}")
    for a, b in combinations(range(3), 2):
        if _set_distance(g, w.paths[a], w.paths[b]) < K:
            return FatVerdict(False, f"paths {a} and {b} are closer than {K}")
    return FatVerdict(True)


def _frontier(g: Graph, path: Sequence[int], center: int, f: int) -> int:
    """Index of the last path vertex (counting from ``center``'s end) inside ``D(center, f)``."""
    row = g.dist[center]
    idx = range(len(path)) if path[0] == center else range(len(path) - 1, -1, -1)
    last = None
    for i in idx:
        if row[path[i]] <= f:
            last = i
    return last


def _middle(path: Sequence[int], i: int, j: int) -> tuple[int, ...]:
    lo, hi = min(i, j), max(i, j)
    return tuple(path[lo : hi + 1])


def _closest_pair(g: Graph, xs: Sequence[int], ys: Sequence[int]) -> tuple[int, int, int]:
    dist = g.dist
    return min((dist[x][y], x, y) for x in xs for y in ys)


def _spoke(g: Graph, start: int, target: int, hub: frozenset[int]) -> tuple[int, ...]:
    path = geodesic(g, start, target)
    for i, v in enumerate(path):
        if v in hub:
            return path[: i + 1]
    return path


def _build(g: Graph, triple: tuple[int, int, int], K: int) -> FatMinorWitness:
    level = 4 * K - 1
    f = 3 * K // 2
    a, b, c = triple
    p_ab, p_bc, p_ac = avoidance_paths(g, triple, level)
    mids = {
        (a, b): _middle(p_ab, _frontier(g, p_ab, a, f), _frontier(g, p_ab, b, f)),
        (b, c): _middle(p_bc, _frontier(g, p_bc, b, f), _frontier(g, p_bc, c, f)),
        (a, c): _middle(p_ac, _frontier(g, p_ac, a, f), _frontier(g, p_ac, c, f)),
    }
    full_paths = {(a, b): p_ab, (b, c): p_bc, (a, c): p_ac}
    for e1, e2 in (((a, b), (b, c)), ((a, b), (a, c)), ((b, c), (a, c))):
        d, x, y = _closest_pair(g, mids[e1], mids[e2])
        if d >= K:
            continue
        shared = (set(e1) & set(e2)).pop()
        o1 = e1[0] if e1[1] == shared else e1[1]
        o2 = e2[0] if e2[1] == shared else e2[1]
        hub = frozenset(mids[e1]) | frozenset(mids[e2]) | frozenset(geodesic(g, x, y))
        p1, p2 = full_paths[e1], full_paths[e2]
        spokes = (
            _spoke(g, shared, p1[_frontier(g, p1, shared, f)], hub),
            _spoke(g, o1, p1[_frontier(g, p1, o1, f)], hub),
            _spoke(g, o2, p2[_frontier(g, p2, o2, f)], hub),
        )
        sets = (hub, frozenset([shared]), frozenset([o1]), frozenset([o2]))
        return FatMinorWitness("K13", sets, spokes, K)
    disks = tuple(frozenset(iter_bits(g.disk_mask(x, f))) for x in triple)
    return FatMinorWitness("K3", disks, (mids[(a, b)], mids[(b, c)], mids[(a, c)]), K)


def extract_fat_minor(g: Graph, K: int) -> FatMinorWitness:
    """A verified K-fat K3 or K1,3 minor, built from a triple no disk of radius 4K-1 intercepts.

    The certificate's triple is tried first, then every other such triple in
    lexicographic order.
    """
    if K < 1:
        raise PreconditionFailed(f"K must be positive, got {K}")
    r, cert = mci(g)
    level = 4 * K - 1
    if r <= level:
        raise PreconditionFailed(f"index {r} does not exceed 4K-1 = {level}")
    radii = triple_radii(g)
    candidates = [cert.triple] + [t for t in sorted(radii) if radii[t] > level and t != cert.triple]
    for triple in candidates:
        w = _build(g, triple, K)
        if verify_fat_minor(g, w):
            return w
    raise ExtractionFailed(f"no candidate triple produced a verified {K}-fat minor")


def fat_minor_lower_bound(g: Graph) -> tuple[int, Optional[FatMinorWitness]]:
    """Largest K <= index/4 whose extraction verifies, with its witness (0, None if none)."""
    r, _ = mci(g)
    for K in range(r // 4, 0, -1):
        try:
            return K, extract_fat_minor(g, K)
        except ExtractionFailed:
            continue
    return 0, None
