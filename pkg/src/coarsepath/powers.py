"""Asteroidal triples, cocomparability orderings and graph powers.

Cocomparability is recognised by transitively orienting the complement
with implication classes: repeatedly take the forcing class of some
remaining edge, fail if it contains an edge in both directions, and
remove its edges otherwise.  The union of the classes taken is then a
transitive orientation, and any topological order of it is a layout with
no ``x < y < z`` such that ``xz`` is an edge while ``xy`` and ``yz`` are not.
"""

from __future__ import annotations

import heapq
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

from .decomposition import PathDecomposition, _require_valid, set_diameter
from .domination import check_shortest_path, path_eccentricity
from .errors import InvalidK, NotDominating
from .graph import Graph, iter_bits, power
from .layering import Caterpillar, distortion


@dataclass(frozen=True)
class LinearLayout:
    sigma: tuple[int, ...]
    mu: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigma", tuple(self.sigma))
        if sorted(self.sigma) != list(range(len(self.sigma))):
            raise ValueError(f"{self.sigma} is not a permutation")

    def to_json(self) -> dict:
        return {"sigma": list(self.sigma), "mu": self.mu}


@dataclass(frozen=True)
class CcpVerdict:
    ok: bool
    triple: Optional[tuple[int, int, int]] = None

    def __bool__(self) -> bool:
        return self.ok


def _avoid_labels(g: Graph) -> list[list[int]]:
    # labels[v][u]: component of u in G - N[v], or -1 if u is in N[v]
    full = g.full_mask
    return [g.component_labels(full & ~(g.masks[v] | 1 << v)) for v in range(g.n)]


def find_asteroidal_triple(g: Graph) -> Optional[tuple[int, int, int]]:
    """Lexicographically first asteroidal triple, or None when G is AT-free."""
    labels = _avoid_labels(g)
    masks = g.masks
    n = g.n
    for a in range(n):
        for b in range(a + 1, n):
            if masks[a] >> b & 1:
                continue
            for c in range(b + 1, n):
                if masks[a] >> c & 1 or masks[b] >> c & 1:
                    continue
                la, lb, lc = labels[a], labels[b], labels[c]
                if lc[a] == lc[b] and la[b] == la[c] and lb[a] == lb[c]:
                    return (a, b, c)
    return None


def is_admissible(g: Graph, v: int, labels: Optional[list[list[int]]] = None) -> bool:
    """No pair x, y where x reaches v avoiding N[y] and y reaches v avoiding N[x]."""
    labels = labels or _avoid_labels(g)
    for x in range(g.n):
        lx = labels[x]
        for y in range(x + 1, g.n):
            ly = labels[y]
            if ly[x] != -1 and ly[x] == ly[v] and lx[y] != -1 and lx[y] == lx[v]:
                return False
    return True


def find_admissible_vertex(g: Graph) -> Optional[int]:
    labels = _avoid_labels(g)
    for v in range(g.n):
        if is_admissible(g, v, labels):
            return v
    return None


def pat(g: Graph) -> tuple[int, int]:
    """Least k >= 1 with G^k AT-free, plus an admissible vertex of G^k."""
    k = 1
    while True:
        gk = power(g, k)
        if find_asteroidal_triple(gk) is None:
            v = find_admissible_vertex(gk)
            if v is None:
                raise RuntimeError("AT-free graph without an admissible vertex")
            return k, v
        k += 1


def _power_masks(g: Graph, mu: int) -> list[int]:
    dist = g.dist
    out = []
    for u in range(g.n):
        m = 0
        for v, d in enumerate(dist[u]):
            if 1 <= d <= mu:
                m |= 1 << v
        out.append(m)
    return out


def verify_ccp(g: Graph, sigma: Sequence[int], mu: int = 1) -> CcpVerdict:
    """Check that ``sigma`` orders G^mu with no ``x<y<z``, ``xz`` edge, ``xy`` and ``yz`` non-edges.

    The reported triple is the first violation by the position of ``y``,
    then ``x``, then ``z``.
    """
    if mu < 1:
        raise InvalidK(f"power must be >= 1, got {mu}")
    if sorted(sigma) != list(range(g.n)):
        raise ValueError(f"{list(sigma)} is not a permutation")
    adj = _power_masks(g, mu)
    n = g.n
    prefix = [0] * (n + 1)
    for i, v in enumerate(sigma):
        prefix[i + 1] = prefix[i] | 1 << v
    full = g.full_mask
    for j, y in enumerate(sigma):
        before = prefix[j] & ~adj[y]
        after = full & ~prefix[j + 1] & ~adj[y]
        if not before or not after:
            continue
        for x in sigma[:j]:
            if before >> x & 1 and adj[x] & after:
                hits = adj[x] & after
                z = next(v for v in sigma[j + 1 :] if hits >> v & 1)
                return CcpVerdict(False, (x, y, z))
    return CcpVerdict(True)


def _transitive_orientation(n: int, adj: list[int]) -> Optional[list[tuple[int, int]]]:
    """Transitive orientation of the graph with adjacency masks ``adj``, or None."""
    remaining = [m for m in adj]
    chosen: list[tuple[int, int]] = []
    while True:
        start = next(((u, (remaining[u] & -remaining[u]).bit_length() - 1) for u in range(n) if remaining[u]), None)
        if start is None:
            return chosen
        cls = {start}
        stack = [start]
        while stack:
            a, b = stack.pop()
            # (a, b) forces (a, b') when b b' is absent, and (a', b) when a a' is absent
            for b2 in iter_bits(remaining[a] & ~remaining[b] & ~(1 << b)):
                if (a, b2) not in cls:
                    cls.add((a, b2))
                    stack.append((a, b2))
            for a2 in iter_bits(remaining[b] & ~remaining[a] & ~(1 << a)):
                if (a2, b) not in cls:
                    cls.add((a2, b))
                    stack.append((a2, b))
        if any((b, a) in cls for a, b in cls):
            return None
        for a, b in cls:
            remaining[a] &= ~(1 << b)
            remaining[b] &= ~(1 << a)
        chosen.extend(cls)


def _topological_order(n: int, arcs: list[tuple[int, int]]) -> list[int]:
    succ: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for a, b in arcs:
        succ[a].append(b)
        indeg[b] += 1
    heap = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) != n:
        raise RuntimeError("orientation has a cycle")
    return order


def cocomparability_layout(g: Graph) -> Optional[LinearLayout]:
    """A ccp-layout of G itself (power 1), or None if G is not cocomparability."""
    full = g.full_mask
    comp = [full & ~(g.masks[v] | 1 << v) for v in range(g.n)]
    arcs = _transitive_orientation(g.n, comp)
    if arcs is None:
        return None
    sigma = _topological_order(g.n, arcs)
    if not verify_ccp(g, sigma, 1):
        raise RuntimeError("complement orientation did not yield a ccp-layout")
    return LinearLayout(tuple(sigma), 1)


def pcc(g: Graph) -> int:
    """Least k >= 1 with G^k cocomparability."""
    k = 1
    while cocomparability_layout(power(g, k)) is None:
        k += 1
    return k


def _checked(g: Graph, sigma: list[int], mu: int, what: str) -> LinearLayout:
    verdict = verify_ccp(g, sigma, mu)
    if not verdict:
        raise RuntimeError(f"{what} layout fails at mu={mu}: triple {verdict.triple}")
    return LinearLayout(tuple(sigma), mu)


def ccp_from_decomposition(g: Graph, pd: PathDecomposition) -> LinearLayout:
    """Order by leftmost bag, then label; a ccp-layout of G^(2 * length)."""
    _require_valid(g, pd)
    lam = max((set_diameter(g, sorted(b)) for b in pd.bags), default=0)
    first = pd.leftmost()
    sigma = sorted(range(g.n), key=lambda v: (first[v], v))
    return _checked(g, sigma, max(1, 2 * lam), "decomposition")


def ccp_from_caterpillar(g: Graph, t: Caterpillar) -> LinearLayout:
    """Spine order with each spine vertex's leaves placed right after it."""
    delta = distortion(g, t)
    leaves: dict[int, list[int]] = {}
    for leaf, anchor in t.attach.items():
        leaves.setdefault(anchor, []).append(leaf)
    sigma = []
    for x in t.spine:
        sigma.append(x)
        sigma.extend(sorted(leaves.get(x, [])))
    return _checked(g, sigma, 3 * delta + 2, "caterpillar")


def ccp_from_dominating_path(g: Graph, path: Sequence[int], k: int) -> LinearLayout:
    """Branches of a BFS tree grown from the path, each placed after its root."""
    if k < 1:
        raise InvalidK(f"need k >= 1, got {k}")
    check_shortest_path(g, path)
    ecc = path_eccentricity(g, path)
    if ecc > k:
        raise NotDominating(f"path eccentricity {ecc} exceeds k={k}")
    root = [-1] * g.n
    depth = [0] * g.n
    frontier = list(path)
    for x in path:
        root[x] = x
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.adjacency[u]:
                if root[w] < 0:
                    root[w], depth[w] = root[u], depth[u] + 1
                    nxt.append(w)
        frontier = nxt
    sigma = []
    for x in path:
        sigma.append(x)
        branch = [v for v in range(g.n) if root[v] == x and v != x]
        sigma.extend(sorted(branch, key=lambda v: (depth[v], v)))
    return _checked(g, sigma, 6 * k, "dominating-path")
