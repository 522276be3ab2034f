"""BFS layerings, extended layerings and caterpillar embeddings."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from .decomposition import PathDecomposition, set_diameter, set_radius, validate
from .errors import DistortionExceeded, TooLarge
from .graph import Graph, iter_bits, set_of

DEFAULT_ADC_CAP = 7


@dataclass(frozen=True)
class Layering:
    source: int
    layers: tuple[frozenset[int], ...]
    length: int
    breadth: int


def layering(g: Graph, s: int) -> Layering:
    layers = tuple(set_of(m) for m in g.sphere_masks(s))
    length = max(set_diameter(g, sorted(layer)) for layer in layers)
    breadth = max(set_radius(g, sorted(layer)) for layer in layers[1:]) if len(layers) > 1 else 0
    return Layering(s, layers, length, breadth)


def extended_layering(g: Graph, s: int) -> tuple[PathDecomposition, int, int]:
    """Bags ``L_i`` plus the previous-layer neighbours of ``L_i``, for ``i >= 1``.

    Returns the decomposition with its length and breadth.  A one-vertex
    graph has no layer beyond ``L_0``; its decomposition is the single bag
    ``{s}``.
    """
    spheres = g.sphere_masks(s)
    if len(spheres) == 1:
        pd = PathDecomposition((frozenset([s]),))
        return pd, 0, 0
    bags = []
    masks = g.masks
    for i in range(1, len(spheres)):
        below = spheres[i - 1]
        down = 0
        for v in iter_bits(spheres[i]):
            down |= masks[v] & below
        bags.append(sorted(iter_bits(spheres[i] | down)))
    length = max(set_diameter(g, b) for b in bags)
    breadth = max(set_radius(g, b) for b in bags)
    return PathDecomposition.of(bags), length, breadth


def best_extended_layering(g: Graph) -> tuple[int, int, int]:
    """``(delta, rho, s)``: both minima taken independently over start vertices."""
    delta = rho = None
    best_s = 0
    for s in range(g.n):
        _, d, r = extended_layering(g, s)
        if delta is None or d < delta:
            delta, best_s = d, s
        if rho is None or r < rho:
            rho = r
    return delta, rho, best_s


@dataclass(frozen=True)
class Caterpillar:
    """A caterpillar tree on ``0..n-1``: a spine plus leaves hung on spine vertices."""

    spine: tuple[int, ...]
    attach: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        spine = tuple(self.spine)
        attach = dict(sorted(self.attach.items()))
        object.__setattr__(self, "spine", spine)
        object.__setattr__(self, "attach", attach)
        if not spine or len(set(spine)) != len(spine):
            raise ValueError(f"spine must be a nonempty sequence of distinct vertices: {spine}")
        index = {v: i for i, v in enumerate(spine)}
        for leaf, anchor in attach.items():
            if leaf in index:
                raise ValueError(f"vertex {leaf} is both on the spine and attached")
            if anchor not in index:
                raise ValueError(f"vertex {leaf} attached to non-spine vertex {anchor}")
        n = len(spine) + len(attach)
        if set(index) | set(attach) != set(range(n)):
            raise ValueError("caterpillar vertices must be exactly 0..n-1")
        pos = [0] * n
        off = [0] * n
        for v, i in index.items():
            pos[v] = i
        for leaf, anchor in attach.items():
            pos[leaf] = index[anchor]
            off[leaf] = 1
        object.__setattr__(self, "_pos", tuple(pos))
        object.__setattr__(self, "_off", tuple(off))

    def __hash__(self) -> int:
        return hash((self.spine, tuple(self.attach.items())))

    @property
    def n(self) -> int:
        return len(self._pos)

    def anchor_index(self, v: int) -> int:
        """Spine index of ``v`` or of the spine vertex it hangs from."""
        return self._pos[v]

    def is_leaf(self, v: int) -> bool:
        return bool(self._off[v])

    def distance(self, u: int, v: int) -> int:
        if u == v:
            return 0
        return abs(self._pos[u] - self._pos[v]) + self._off[u] + self._off[v]

    def edges(self) -> list[tuple[int, int]]:
        out = [tuple(sorted(e)) for e in zip(self.spine, self.spine[1:])]
        out += [tuple(sorted(e)) for e in self.attach.items()]
        return sorted(out)

    def as_graph(self) -> Graph:
        return Graph(self.n, self.edges())

    def to_json(self) -> dict:
        return {"spine": list(self.spine), "attach": {str(k): v for k, v in self.attach.items()}}

    @classmethod
    def from_json(cls, data: dict) -> "Caterpillar":
        return cls(tuple(data["spine"]), {int(k): int(v) for k, v in data["attach"].items()})


def canonical_caterpillar(g: Graph, s: int) -> Caterpillar:
    """Spine is a BFS geodesic from ``s``; each ``u`` in layer ``i`` hangs on spine vertex ``i-1``.

    The geodesic ends at the lowest-numbered vertex of the last layer and
    walks back through lowest-numbered parents.
    """
    spheres = g.sphere_masks(s)
    q = len(spheres) - 1
    path = [(spheres[q] & -spheres[q]).bit_length() - 1]
    for i in range(q - 1, -1, -1):
        parents = g.masks[path[-1]] & spheres[i]
        path.append((parents & -parents).bit_length() - 1)
    path.reverse()
    on_path = set(path)
    attach = {}
    for i in range(1, q + 1):
        for u in iter_bits(spheres[i]):
            if u not in on_path:
                attach[u] = path[i - 1]
    return Caterpillar(tuple(path), attach)


def distortion(g: Graph, t: Caterpillar) -> int:
    """Largest ``|d_G(u, v) - d_T(u, v)|`` over all pairs."""
    if t.n != g.n:
        raise ValueError("caterpillar and graph have different vertex sets")
    dist = g.dist
    worst = 0
    for u in range(g.n):
        row = dist[u]
        for v in range(u + 1, g.n):
            gap = abs(row[v] - t.distance(u, v))
            if gap > worst:
                worst = gap
    return worst


def approx_adc(g: Graph) -> tuple[Caterpillar, int]:
    """Best canonical caterpillar over all start vertices (lowest start wins ties)."""
    best = None
    for s in range(g.n):
        t = canonical_caterpillar(g, s)
        k = distortion(g, t)
        if best is None or k < best[1]:
            best = (t, k)
    return best


def min_layering_length(g: Graph) -> int:
    return min(layering(g, s).length for s in range(g.n))


def _search_caterpillar(g: Graph, s: int, k: int):
    """Backtracking search for a caterpillar with distortion <= k whose spine starts at ``s``.

    Every vertex gets a spine index ``p`` and a leaf flag ``off``; tree
    distance between distinct vertices is ``|p_u - p_v| + off_u + off_v``.
    Spines are taken maximal, so spine endpoints carry no leaves, and the
    far endpoint must have a larger label than ``s`` (each spine is then
    explored from one end only).
    """
    n = g.n
    dist = g.dist
    order = sorted(range(n), key=lambda v: (dist[s][v], v))
    assert order[0] == s
    pos = [0] * n
    off = [0] * n
    spine_at: dict[int, int] = {0: s}

    def candidates(u: int):
        d = dist[s][u]
        out = []
        for t in range(max(1, d - k), d + k + 1):
            out.append((t, 0))
            if t >= 2:
                out.append((t - 1, 1))
        out.sort(key=lambda c: (abs(c[0] + c[1] - d), c[1], c[0]))
        return out

    domains = [candidates(u) for u in order]
    placed: list[int] = [s]
    found: list = []

    def consistent(u: int, p: int, o: int) -> bool:
        row = dist[u]
        for w in placed:
            dt = abs(p - pos[w]) + o + off[w]
            gap = row[w] - dt
            if gap > k or -gap > k:
                return False
        return True

    def rec(idx: int, max_spine: int, max_leaf: int) -> bool:
        remaining = n - idx
        need = max(max_spine, max_leaf + 1)
        if need + 1 - len(spine_at) > remaining:
            return False
        if idx == n:
            q = max_spine
            if len(spine_at) == q + 1 and max_leaf < q and spine_at[q] > s:
                found.append((dict(spine_at), list(pos), list(off)))
                return True
            return False
        u = order[idx]
        for p, o in domains[idx]:
            if o == 0 and p in spine_at:
                continue
            if not consistent(u, p, o):
                continue
            pos[u], off[u] = p, o
            placed.append(u)
            if o == 0:
                spine_at[p] = u
                ok = rec(idx + 1, max(max_spine, p), max_leaf)
                del spine_at[p]
            else:
                ok = rec(idx + 1, max_spine, max(max_leaf, p))
            placed.pop()
            if ok:
                return True
        return False

    if not rec(1, 0, 0):
        return None
    spine_at, pos, off = found[0]
    q = max(spine_at)
    spine = tuple(spine_at[i] for i in range(q + 1))
    attach = {v: spine_at[pos[v]] for v in range(n) if off[v]}
    return Caterpillar(spine, attach)


def exact_adc(g: Graph, max_n: int = DEFAULT_ADC_CAP) -> tuple[int, Caterpillar]:
    """Minimum distortion over all caterpillars on ``V(G)``, with a witness.

    Values below the canonical-caterpillar bound are decided by exhaustive
    backtracking; the bound itself is attained by a measured caterpillar.
    """
    if g.n > max_n:
        raise TooLarge(f"adc oracle capped at n={max_n}, graph has n={g.n}")
    upper_t, upper = approx_adc(g)
    if g.n == 1:
        return 0, upper_t
    for k in range(upper):
        for s in range(g.n):
            t = _search_caterpillar(g, s, k)
            if t is not None:
                return k, t
    return upper, upper_t


def enumerate_caterpillars(n: int):
    """Every labelled caterpillar on ``0..n-1`` (with repeats across spine choices).

    Brute-force reference used to cross-check :func:`exact_adc` on small graphs.
    """
    from itertools import permutations, product

    for size in range(1, n + 1):
        for spine in permutations(range(n), size):
            if size > 1 and spine[0] > spine[-1]:
                continue
            rest = [v for v in range(n) if v not in spine]
            for anchors in product(spine, repeat=len(rest)):
                yield Caterpillar(spine, dict(zip(rest, anchors)))


def _interval_bags(t: Caterpillar, k: int) -> list[list[int]]:
    # interval of u: [2j + 2off, 2j + 2(k+1) - 2off]; two intervals meet iff d_T <= k+1
    spans = []
    for u in range(t.n):
        j, o = t.anchor_index(u), int(t.is_leaf(u))
        spans.append((2 * j + 2 * o, 2 * j + 2 * (k + 1) - 2 * o, u))
    points = sorted({a for a, _, _ in spans})
    return [sorted(u for a, b, u in spans if a <= x <= b) for x in points]


def _edge_bags(t: Caterpillar) -> list[list[int]]:
    if t.n == 1:
        return [[t.spine[0]]]
    leaves: dict[int, list[int]] = {}
    for leaf, anchor in t.attach.items():
        leaves.setdefault(anchor, []).append(leaf)
    bags = []
    for i, x in enumerate(t.spine):
        for leaf in sorted(leaves.get(x, [])):
            bags.append(sorted((x, leaf)))
        if i + 1 < len(t.spine):
            bags.append(sorted((x, t.spine[i + 1])))
    return bags


def _drop_redundant(bags: list[list[int]]) -> list[list[int]]:
    sets = [set(b) for b in bags]
    changed = True
    while changed and len(sets) > 1:
        changed = False
        for i, b in enumerate(sets):
            nbrs = [sets[j] for j in (i - 1, i + 1) if 0 <= j < len(sets)]
            if any(b <= other for other in nbrs):
                del sets[i]
                changed = True
                break
    return [sorted(b) for b in sets]


def decomposition_from_caterpillar(g: Graph, t: Caterpillar, k: int) -> PathDecomposition:
    """Clique-path of ``T^(k+1)``, which is a decomposition of G of length <= 2k+1."""
    measured = distortion(g, t)
    if measured > k:
        raise DistortionExceeded(f"caterpillar distortion {measured} exceeds k={k}")
    bags = _edge_bags(t) if k == 0 else _drop_redundant(_interval_bags(t, k))
    for bag in bags:
        for i, u in enumerate(bag):
            for v in bag[i + 1 :]:
                if t.distance(u, v) > k + 1:
                    raise RuntimeError(f"bag {bag} is not a clique of T^{k + 1}")
    pd = PathDecomposition.of(bags)
    problems = validate(g, pd)
    if problems:
        raise RuntimeError(f"caterpillar decomposition invalid: {problems[0].message}")
    return pd


def caterpillar_from_sequence(spine: Sequence[int], attach: Mapping[int, int]) -> Caterpillar:
    return Caterpillar(tuple(spine), dict(attach))
