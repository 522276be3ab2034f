"""Path-decompositions: validation, bag metrics, and exact length/breadth oracles.

The exact oracles minimise over *normalized* decompositions, those produced
by :func:`from_order`.  Every path-decomposition, after ordering vertices by
the index of their leftmost bag, normalizes to bags that are subsets of the
original ones, so neither length nor breadth can increase; hence the
minimum over vertex orderings is the true optimum.  Inner length and inner
breadth are not monotone under shrinking bags and are only evaluated on a
given decomposition.

The minimum over orderings is computed by dynamic programming over vertex
subsets: the bag created when ``v`` is placed after prefix ``S`` is
``{v} | active(S)`` where ``active(S)`` are the members of ``S`` that still
have a neighbour outside ``S``, so the cost of a step depends only on
``(S, v)``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import InvalidDecomposition, NotAPermutation, TooLarge
from .graph import Graph, iter_bits, mask_of

DEFAULT_ORACLE_CAP = 9


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, bags: Iterable[Iterable[int]]) -> "PathDecomposition":
        return cls(tuple(frozenset(b) for b in bags))

    def __len__(self) -> int:
        return len(self.bags)

    def leftmost(self) -> dict[int, int]:
        """Index of the first bag containing each vertex."""
        first: dict[int, int] = {}
        for i, bag in enumerate(self.bags):
            for v in bag:
                first.setdefault(v, i)
        return first

    def to_json(self) -> dict:
        return {"bags": [sorted(b) for b in self.bags]}

    @classmethod
    def from_json(cls, data: dict) -> "PathDecomposition":
        return cls.of(data["bags"])


@dataclass(frozen=True)
class Violation:
    kind: str  # "range" | "coverage" | "edge" | "contiguity"
    witness: tuple[int, ...]
    message: str


@dataclass(frozen=True)
class DecompositionMetrics:
    length: int
    breadth: int
    inner_length: int
    inner_breadth: int
    strong_breadth: Optional[int]
    inner_disconnected: bool = False

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "breadth": self.breadth,
            "inner_length": self.inner_length,
            "inner_breadth": self.inner_breadth,
            "strong_breadth": self.strong_breadth,
            "inner_disconnected": self.inner_disconnected,
        }


def validate(g: Graph, pd: PathDecomposition) -> list[Violation]:
    """Check the three decomposition properties; an empty list means valid."""
    out: list[Violation] = []
    seen = set()
    for i, bag in enumerate(pd.bags):
        for v in sorted(bag):
            if not 0 <= v < g.n:
                out.append(Violation("range", (v, i), f"bag {i} holds non-vertex {v}"))
            seen.add(v)
    for v in range(g.n):
        if v not in seen:
            out.append(Violation("coverage", (v,), f"vertex {v} is in no bag"))

    masks = [mask_of(b) for b in pd.bags]
    for u, v in g.edges:
        pair = (1 << u) | (1 << v)
        if not any(m & pair == pair for m in masks):
            out.append(Violation("edge", (u, v), f"edge {u}-{v} lies in no bag"))

    for v in range(g.n):
        idx = [i for i, m in enumerate(masks) if m >> v & 1]
        for a, b in zip(idx, idx[1:]):
            if b != a + 1:
                out.append(
                    Violation(
                        "contiguity",
                        (v, a, a + 1, b),
                        f"vertex {v} is in bags {a} and {b} but not in bag {a + 1}",
                    )
                )
                break
    return out


def is_valid(g: Graph, pd: PathDecomposition) -> bool:
    return not validate(g, pd)


def _require_valid(g: Graph, pd: PathDecomposition) -> None:
    problems = validate(g, pd)
    if problems:
        raise InvalidDecomposition("; ".join(p.message for p in problems))


def set_diameter(g: Graph, vertices: Sequence[int]) -> int:
    dist = g.dist
    best = 0
    for i, u in enumerate(vertices):
        row = dist[u]
        for v in vertices[i + 1 :]:
            if row[v] > best:
                best = row[v]
    return best


def set_radius(g: Graph, vertices: Sequence[int]) -> int:
    """Smallest r with ``vertices`` inside one disk of radius r (center anywhere)."""
    if not vertices:
        return 0
    dist = g.dist
    return min(max(dist[c][u] for u in vertices) for c in range(g.n))


def _induced_distances(g: Graph, mask: int) -> dict[int, dict[int, int]]:
    out = {}
    for s in iter_bits(mask):
        d = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in iter_bits(g.masks[u] & mask):
                    if w not in d:
                        d[w] = d[u] + 1
                        nxt.append(w)
            frontier = nxt
        out[s] = d
    return out


def _disk_radii(g: Graph, mask: int) -> set[int]:
    """Radii r with the bag equal to ``D(v, r)`` for some bag vertex v."""
    out = set()
    for v in iter_bits(mask):
        for r in range(g.n):
            d = g.disk_mask(v, r)
            if d == mask:
                out.add(r)
            elif d & ~mask:
                break
    return out


def metrics(g: Graph, pd: PathDecomposition) -> DecompositionMetrics:
    """Length, breadth, inner variants and strong breadth of a valid decomposition.

    Inner distances are taken in ``G[X_i]``.  When some bag induces a
    disconnected subgraph only finite distances are used and
    ``inner_disconnected`` is set.  ``strong_breadth`` is the least r such
    that every bag equals a disk ``D(v, r)`` centred at one of its own
    vertices, or ``None`` when no common r exists.
    """
    _require_valid(g, pd)
    length = breadth = inner_length = inner_breadth = 0
    radii = set(range(g.n))
    disconnected = False
    for bag in pd.bags:
        if not bag:
            continue
        verts = sorted(bag)
        mask = mask_of(verts)
        length = max(length, set_diameter(g, verts))
        breadth = max(breadth, set_radius(g, verts))
        inner = _induced_distances(g, mask)
        if any(len(inner[v]) != len(verts) for v in verts):
            disconnected = True
        ecc = {v: max(inner[v].values()) for v in verts}
        inner_length = max(inner_length, max(ecc.values()))
        inner_breadth = max(inner_breadth, min(ecc.values()))
        if radii:
            radii &= _disk_radii(g, mask)
    strong = min(radii) if radii else None
    return DecompositionMetrics(length, breadth, inner_length, inner_breadth, strong, disconnected)


def from_order(g: Graph, order: Sequence[int]) -> PathDecomposition:
    """Normalized decomposition of a vertex ordering.

    Bag ``i`` is ``order[i]`` together with every earlier vertex that has a
    neighbour at position ``>= i``.
    """
    if sorted(order) != list(range(g.n)):
        raise NotAPermutation(f"{list(order)!r} is not a permutation of 0..{g.n - 1}")
    placed = 0
    bags = []
    for v in order:
        active = [u for u in iter_bits(placed) if g.masks[u] & ~placed]
        bags.append(frozenset(active) | {v})
        placed |= 1 << v
    return PathDecomposition(tuple(bags))


def _active(g: Graph, placed: int) -> list[int]:
    masks = g.masks
    return [u for u in iter_bits(placed) if masks[u] & ~placed]


def _length_step(g: Graph) -> Callable[[list[int], int], dict[int, int]]:
    dist = g.dist

    def costs(active: list[int], rest: int) -> dict[int, int]:
        base = set_diameter(g, active)
        out = {}
        for v in iter_bits(rest):
            row = dist[v]
            out[v] = max(base, max((row[u] for u in active), default=0))
        return out

    return costs


def _breadth_step(g: Graph) -> Callable[[list[int], int], dict[int, int]]:
    dist = g.dist
    n = g.n

    def costs(active: list[int], rest: int) -> dict[int, int]:
        ecc = [max((dist[c][u] for u in active), default=0) for c in range(n)]
        out = {}
        for v in iter_bits(rest):
            col = dist[v]
            out[v] = min(e if e >= col[c] else col[c] for c, e in enumerate(ecc))
        return out

    return costs


def _optimal_order(g: Graph, step, max_n: int, what: str) -> tuple[int, list[int]]:
    if g.n > max_n:
        raise TooLarge(f"{what} oracle capped at n={max_n}, graph has n={g.n}")
    full = g.full_mask
    best = [0] * (full + 1)
    choice = [-1] * (full + 1)
    for placed in range(full - 1, -1, -1):
        costs = step(_active(g, placed), full & ~placed)
        b, ch = None, -1
        for v, c in costs.items():
            val = max(c, best[placed | 1 << v])
            if b is None or val < b:
                b, ch = val, v
        best[placed], choice[placed] = b, ch
    order, placed = [], 0
    while placed != full:
        v = choice[placed]
        order.append(v)
        placed |= 1 << v
    return best[0], order


def exact_path_length(g: Graph, max_n: int = DEFAULT_ORACLE_CAP) -> tuple[int, PathDecomposition]:
    """Path-length with a witness decomposition (lexicographically first optimal ordering)."""
    value, order = _optimal_order(g, _length_step(g), max_n, "path-length")
    return value, from_order(g, order)


def exact_path_breadth(g: Graph, max_n: int = DEFAULT_ORACLE_CAP) -> tuple[int, PathDecomposition]:
    value, order = _optimal_order(g, _breadth_step(g), max_n, "path-breadth")
    return value, from_order(g, order)
