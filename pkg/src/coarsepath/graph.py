"""Connected simple graphs with cached hop distances.

Vertices are the integers ``0..n-1``.  Vertex sets are exposed as
``frozenset`` objects; internally most algorithms work on ``int`` bitmasks
(bit ``v`` set means vertex ``v`` is a member), which is what the ``*_mask``
helpers return.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator
from functools import cached_property

from .errors import InvalidK, NotConnected, NotSimple, ParseError

GRAPH6_HEADER = ">>graph6<<"


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int] | int) -> int:
    if isinstance(vertices, int):
        return vertices
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def set_of(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


class Graph:
    """Immutable connected simple undirected graph.

    The distance matrix is built on first access; building it is
    deterministic, so concurrent first readers at worst compute the same
    value twice.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 1:
            raise NotConnected("graph has no vertices")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        norm = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise NotSimple(f"loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in norm:
                raise NotSimple(f"repeated edge {e}")
            norm.add(e)
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.edges = tuple(sorted(norm))
        self.adjacency = tuple(tuple(sorted(s)) for s in nbrs)
        self.masks = tuple(mask_of(s) for s in nbrs)
        if self.component_mask(0, self.full_mask) != self.full_mask:
            raise NotConnected("graph is not connected")

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    @cached_property
    def dist(self) -> tuple[tuple[int, ...], ...]:
        rows = []
        for s in range(self.n):
            d = [-1] * self.n
            d[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if d[w] < 0:
                        d[w] = d[u] + 1
                        queue.append(w)
            rows.append(tuple(d))
        return tuple(rows)

    @cached_property
    def eccentricities(self) -> tuple[int, ...]:
        return tuple(max(row) for row in self.dist)

    @property
    def diameter(self) -> int:
        return max(self.eccentricities)

    @property
    def radius(self) -> int:
        return min(self.eccentricities)

    @cached_property
    def _spheres(self) -> tuple[tuple[int, ...], ...]:
        # _spheres[s][r] = mask of vertices at distance exactly r from s
        out = []
        for s in range(self.n):
            row = self.dist[s]
            spheres = [0] * (max(row) + 1)
            for v, d in enumerate(row):
                spheres[d] |= 1 << v
            out.append(tuple(spheres))
        return tuple(out)

    @cached_property
    def _balls(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for spheres in self._spheres:
            acc, balls = 0, []
            for sphere in spheres:
                acc |= sphere
                balls.append(acc)
            out.append(tuple(balls))
        return tuple(out)

    def disk_mask(self, s: int, r: int) -> int:
        balls = self._balls[s]
        return balls[r] if r < len(balls) else balls[-1]

    def sphere_masks(self, s: int) -> tuple[int, ...]:
        return self._spheres[s]

    def component_mask(self, start: int, allowed: int) -> int:
        """Vertices reachable from ``start`` inside ``allowed`` (0 if start not allowed)."""
        if not allowed >> start & 1:
            return 0
        comp = frontier = 1 << start
        masks = self.masks
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= masks[v]
            frontier = nxt & allowed & ~comp
            comp |= frontier
        return comp

    def component_labels(self, allowed: int) -> list[int]:
        """Label components of ``G[allowed]``; vertices outside get -1."""
        labels = [-1] * self.n
        rest = allowed
        label = 0
        while rest:
            start = (rest & -rest).bit_length() - 1
            comp = self.component_mask(start, allowed)
            for v in iter_bits(comp):
                labels[v] = label
            rest &= ~comp
            label += 1
        return labels

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, graph6={to_graph6(self)!r})"


def all_pairs_distances(g: Graph) -> tuple[tuple[int, ...], ...]:
    return g.dist


def power(g: Graph, k: int) -> Graph:
    """The k-th power: same vertices, ``uv`` an edge iff ``1 <= d(u, v) <= k``."""
    if k < 1:
        raise InvalidK(f"power requires k >= 1, got {k}")
    if k == 1:
        return g
    dist = g.dist
    edges = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if dist[u][v] <= k]
    return Graph(g.n, edges)


def disk(g: Graph, s: int, r: int) -> frozenset[int]:
    if r < 0:
        raise ValueError("radius must be nonnegative")
    return set_of(g.disk_mask(s, r))


def connected_avoiding(g: Graph, a: int, b: int, removed: Iterable[int] | int) -> bool:
    """True iff ``a`` and ``b`` survive and share a component of ``G - removed``.

    An endpoint inside ``removed`` counts as separated.
    """
    allowed = g.full_mask & ~mask_of(removed)
    return bool(g.component_mask(a, allowed) >> b & 1)


def _encode_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return chr(126) * 2 + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: Graph) -> str:
    bits = []
    masks = g.masks
    for j in range(1, g.n):
        mj = masks[j]
        for i in range(j):
            bits.append(mj >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for pos in range(0, len(bits), 6):
        value = 0
        for b in bits[pos : pos + 6]:
            value = value << 1 | b
        body.append(chr(value + 63))
    return _encode_size(g.n) + "".join(body)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER) :]
    if s.startswith(":") or s.startswith(";"):
        raise ParseError("sparse6/digraph6 input is not supported")
    if not s:
        raise ParseError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= x <= 63 for x in data):
        raise ParseError(f"invalid graph6 character in {s!r}")
    if data[0] != 63:
        n, pos = data[0], 1
    elif len(data) > 1 and data[1] != 63:
        if len(data) < 4:
            raise ParseError("truncated graph6 size field")
        n, pos = (data[1] << 12) | (data[2] << 6) | data[3], 4
    else:
        if len(data) < 8:
            raise ParseError("truncated graph6 size field")
        n = 0
        for x in data[2:8]:
            n = n << 6 | x
        pos = 8
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != expected:
        raise ParseError(f"graph6 body has {len(body)} bytes, expected {expected} for n={n}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    for k in range(nbits, 6 * expected):
        if body[k // 6] >> (5 - k % 6) & 1:
            raise ParseError("nonzero graph6 padding bits")
    return Graph(n, edges)


def parse_edgelist(text: str) -> Graph:
    """One ``u v`` pair per line (0-based); a lone ``v`` declares a vertex."""
    edges = []
    top = -1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) > 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            ids = [int(p) for p in parts]
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex in {raw!r}") from None
        if any(v < 0 for v in ids):
            raise ParseError(f"line {lineno}: negative vertex id")
        top = max(top, *ids)
        if len(ids) == 2:
            edges.append((ids[0], ids[1]))
    if top < 0:
        raise ParseError("edge list declares no vertices")
    return Graph(top + 1, edges)


def to_edgelist(g: Graph) -> str:
    if g.n == 1:
        return "0\n"
    return "".join(f"{u} {v}\n" for u, v in g.edges)


def load_graph(text: str, format: str = "graph6") -> Graph:
    if format == "graph6":
        return parse_graph6(text)
    if format == "edgelist":
        return parse_edgelist(text)
    raise ValueError(f"unknown graph format {format!r}")
