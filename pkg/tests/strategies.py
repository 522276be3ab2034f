"""Hypothesis strategies producing connected graphs."""

from __future__ import annotations

from hypothesis import strategies as st

from coarsepath.graph import Graph


@st.composite
def connected_graphs(draw, min_n: int = 1, max_n: int = 8):
    """A random spanning tree plus random extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    pairs = [(u, v) for v in range(n) for u in range(v) if (u, v) not in edges]
    if pairs:
        extra = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs), unique=True))
        edges.update(extra)
    perm = draw(st.permutations(range(n)))
    return Graph(n, [(perm[u], perm[v]) for u, v in edges])
