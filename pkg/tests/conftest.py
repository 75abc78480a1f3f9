from __future__ import annotations

import itertools

from hypothesis import strategies as st

from avdcolor.graph import MultiGraph


@st.composite
def simple_graphs(draw, min_n: int = 1, max_n: int = 12, min_edges: int = 0):
    n = draw(st.integers(min_n, max_n))
    slots = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(slots), max_size=len(slots)))
    edges = [s for s, k in zip(slots, keep) if k]
    if len(edges) < min_edges:
        edges = slots[: max(min_edges, len(edges))]
    return MultiGraph(n, edges)


@st.composite
def multigraphs(draw, max_n: int = 8, max_m: int = 20, cap: int = 3):
    n = draw(st.integers(2, max_n))
    pairs = draw(
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1]),
            max_size=max_m,
        )
    )
    counts: dict[tuple[int, int], int] = {}
    edges = []
    for u, v in pairs:
        key = (min(u, v), max(u, v))
        if counts.get(key, 0) < cap:
            counts[key] = counts.get(key, 0) + 1
            edges.append((u, v))
    return MultiGraph(n, edges, cap=cap)


def without_isolated_edges(g: MultiGraph) -> bool:
    return all(not (g.degree(u) == 1 and g.degree(v) == 1) for u, v in g.edges)
