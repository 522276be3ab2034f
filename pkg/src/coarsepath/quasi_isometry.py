"""Quasi-isometries from graphs onto weighted paths.

All quantities are exact :class:`fractions.Fraction` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Optional

from .decomposition import PathDecomposition, set_diameter, validate
from .errors import QiInvalid
from .graph import Graph
from .layering import approx_adc


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _parse_frac(s) -> Fraction:
    return Fraction(s)


@dataclass(frozen=True)
class WeightedPath:
    """Path ``x_0 .. x_{p-1}`` with positive edge weights."""

    weights: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        w = tuple(Fraction(x) for x in self.weights)
        if any(x <= 0 for x in w):
            raise ValueError("path weights must be positive")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "_prefix", (Fraction(0), *accumulate(w)))

    @classmethod
    def unweighted(cls, nodes: int) -> "WeightedPath":
        if nodes < 1:
            raise ValueError("a path needs at least one node")
        return cls((Fraction(1),) * (nodes - 1))

    @property
    def nodes(self) -> int:
        return len(self.weights) + 1

    def distance(self, i: int, j: int) -> Fraction:
        return abs(self._prefix[i] - self._prefix[j])


@dataclass(frozen=True)
class QuasiIsometryMap:
    psi: tuple[int, ...]
    L: Fraction
    C: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "psi", tuple(self.psi))
        object.__setattr__(self, "L", Fraction(self.L))
        object.__setattr__(self, "C", Fraction(self.C))


@dataclass(frozen=True)
class QiVerdict:
    ok: bool
    reason: str = ""
    pair: Optional[tuple[int, int]] = None
    slack: Optional[Fraction] = None

    def __bool__(self) -> bool:
        return self.ok


def qi_to_json(p: WeightedPath, m: QuasiIsometryMap) -> dict:
    return {
        "path_weights": [_frac_str(w) for w in p.weights],
        "psi": {str(v): node for v, node in enumerate(m.psi)},
        "L": _frac_str(m.L),
        "C": _frac_str(m.C),
    }


def qi_from_json(data: dict) -> tuple[WeightedPath, QuasiIsometryMap]:
    p = WeightedPath(tuple(_parse_frac(w) for w in data["path_weights"]))
    psi_map = {int(k): int(v) for k, v in data["psi"].items()}
    psi = tuple(psi_map[v] for v in range(len(psi_map)))
    return p, QuasiIsometryMap(psi, _parse_frac(data["L"]), _parse_frac(data["C"]))


def verify_qi(g: Graph, p: WeightedPath, m: QuasiIsometryMap) -> QiVerdict:
    """Check both quasi-isometry conditions exactly.

    On failure of the distance condition the reported pair is the one with
    the most negative slack (lowest pair first among equals).
    """
    if m.L < 1 or m.C < 0:
        return QiVerdict(False, f"need L >= 1 and C >= 0, got L={m.L}, C={m.C}")
    if len(m.psi) != g.n or any(not 0 <= x < p.nodes for x in m.psi):
        return QiVerdict(False, "psi must map every vertex to a path node")
    L, C = m.L, m.C
    dist = g.dist
    worst: Optional[tuple[Fraction, tuple[int, int]]] = None
    for u in range(g.n):
        for v in range(u + 1, g.n):
            dg = dist[u][v]
            dp = p.distance(m.psi[u], m.psi[v])
            slack = min(dp - (Fraction(dg) / L - C), L * dg + C - dp)
            if worst is None or slack < worst[0]:
                worst = (slack, (u, v))
    if worst is not None and worst[0] < 0:
        return QiVerdict(False, "distance condition violated", worst[1], worst[0])
    for y in range(p.nodes):
        if not any(p.distance(x, y) <= C for x in m.psi):
            return QiVerdict(False, f"path node {y} is farther than C from the image")
    return QiVerdict(True, "", worst[1] if worst else None, worst[0] if worst else None)


def quasi_isometry_to_path(g: Graph) -> tuple[WeightedPath, QuasiIsometryMap]:
    """Project every vertex onto its spine anchor of the best canonical caterpillar.

    ``L`` is 1 and ``C`` is the smallest additive constant valid for this
    projection, which never exceeds the caterpillar's distortion plus 2.
    """
    t, _ = approx_adc(g)
    p = WeightedPath.unweighted(len(t.spine))
    psi = tuple(t.anchor_index(v) for v in range(g.n))
    dist = g.dist
    c = 0
    for u in range(g.n):
        for v in range(u + 1, g.n):
            c = max(c, abs(dist[u][v] - abs(psi[u] - psi[v])))
    m = QuasiIsometryMap(psi, Fraction(1), Fraction(c))
    verdict = verify_qi(g, p, m)
    if not verdict:
        raise RuntimeError(f"projection failed its own check: {verdict.reason}")
    return p, m


def contract_to_image(p: WeightedPath, m: QuasiIsometryMap) -> tuple[WeightedPath, QuasiIsometryMap]:
    """Drop path nodes outside ``psi``'s image, merging their edge weights.

    Distances between image nodes are unchanged.
    """
    used = sorted(set(m.psi))
    renumber = {x: i for i, x in enumerate(used)}
    weights = tuple(p.distance(a, b) for a, b in zip(used, used[1:]))
    return WeightedPath(weights), QuasiIsometryMap(tuple(renumber[x] for x in m.psi), m.L, m.C)


def decomposition_from_qi(g: Graph, p: WeightedPath, m: QuasiIsometryMap) -> PathDecomposition:
    """Bag ``i`` holds each ``u`` with ``psi(u) >= i`` and ``d_P(x_i, psi(u)) <= L + C``.

    The result is a decomposition of length at most ``L(L + 2C)``.
    """
    verdict = verify_qi(g, p, m)
    if not verdict:
        raise QiInvalid(verdict.reason)
    p, m = contract_to_image(p, m)
    reach = m.L + m.C
    bags = []
    for i in range(p.nodes):
        bag = [u for u in range(g.n) if m.psi[u] >= i and p.distance(i, m.psi[u]) <= reach]
        if bag:
            bags.append(bag)
    pd = PathDecomposition.of(bags)
    problems = validate(g, pd)
    if problems:
        raise RuntimeError(f"quasi-isometry decomposition invalid: {problems[0].message}")
    bound = m.L * (m.L + 2 * m.C)
    if max(set_diameter(g, sorted(b)) for b in pd.bags) > bound:
        raise RuntimeError("quasi-isometry decomposition exceeds its length bound")
    return pd


def qi_length_bound(m: QuasiIsometryMap) -> Fraction:
    return m.L * (m.L + 2 * m.C)


