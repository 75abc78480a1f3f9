from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from avdcolor.coloring import (
    PartialEdgeColoring,
    available_colors,
    bad_vertices,
    color_set,
    indistinguishable_pairs,
    proper_edge_coloring,
    unused_graph,
    verify_avd,
    verify_proper,
)
from avdcolor.errors import EdgeAlreadyColored, NotProper, NotTotal, PaletteTooSmall
from avdcolor.generators import complete, cycle, gnp, path, regular
from avdcolor.graph import MultiGraph, build_graph

from conftest import multigraphs, simple_graphs


def test_color_sets_on_path():
    g = path(3)
    c = PartialEdgeColoring(g, 2, [1, 2])
    assert color_set(c, 0) == {1}
    assert color_set(c, 1) == {1, 2}
    assert verify_avd(c) == []


def test_unused_edges_excluded_from_sets():
    c = PartialEdgeColoring(path(3), 3, [0, 2])
    assert color_set(c, 1) == {2}
    assert c.unused_edges() == [0]


def test_verify_avd_requires_total():
    with pytest.raises(NotTotal):
        verify_avd(PartialEdgeColoring(path(3), 2, [1, 0]))


def test_verify_avd_requires_proper():
    with pytest.raises(NotProper):
        verify_avd(PartialEdgeColoring(path(3), 2, [1, 1]))


def test_verify_proper_lists_conflicts():
    g = build_graph(4, [(0, 1), (1, 2), (1, 3)])
    c = PartialEdgeColoring(g, 3, [1, 1, 1])
    assert verify_proper(c) == [(0, 1), (0, 2), (1, 2)]


def test_c4_with_two_colours_is_proper_not_avd():
    c = PartialEdgeColoring(cycle(4), 2, [1, 2, 1, 2])
    assert verify_proper(c) == []
    assert len(verify_avd(c)) == 4
    assert bad_vertices(c) == {0, 1, 2, 3}


def test_c5_with_five_colours_distinguishes():
    c = PartialEdgeColoring(cycle(5), 5, [1, 2, 3, 4, 5])
    assert verify_avd(c) == []


def test_parallel_edges_count_once_in_pairs():
    g = build_graph(3, [(0, 1), (0, 1), (1, 2)], cap=2)
    c = PartialEdgeColoring(g, 3, [1, 2, 3])
    assert indistinguishable_pairs(c) == []
    c2 = PartialEdgeColoring(g, 3, [1, 2, 0])
    assert indistinguishable_pairs(c2) == [(0, 1)]


def test_available_colours():
    g = path(4)
    c = PartialEdgeColoring(g, 4, [1, 0, 3])
    assert available_colors(c, 1) == {2, 4}
    with pytest.raises(EdgeAlreadyColored):
        available_colors(c, 0)


def test_unused_graph_keeps_vertex_set():
    c = PartialEdgeColoring(cycle(5), 3, [1, 0, 2, 0, 3])
    U, ids = unused_graph(c)
    assert U.n == 5
    assert ids == (1, 3)
    assert U.edges == ((1, 2), (3, 4))


def test_colour_range_checked():
    with pytest.raises(ValueError):
        PartialEdgeColoring(path(3), 2, [1, 3])
    c = PartialEdgeColoring(path(3), 2)
    with pytest.raises(ValueError):
        c.assign(0, 0)


def test_json_round_trip():
    g = cycle(5)
    c = PartialEdgeColoring(g, 6, [1, 2, 0, 4, 5])
    assert PartialEdgeColoring.from_json(g, c.to_json()) == c


def test_vizing_palette_check():
    with pytest.raises(PaletteTooSmall):
        proper_edge_coloring(complete(4), 3)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_vizing_complete_graphs(n):
    g = complete(n)
    c = proper_edge_coloring(g, g.max_degree + 1)
    assert c.is_total()
    assert verify_proper(c) == []
    assert max(c.colors) <= g.max_degree + 1


def test_vizing_large_regular_graph():
    g = regular(300, 40, seed=2)
    c = proper_edge_coloring(g, 41)
    assert c.is_total() and verify_proper(c) == []


def test_vizing_shannon_multigraph():
    # three vertices, each pair doubled: Δ=4, μ=2, needs 6 colours
    g = build_graph(3, [(0, 1), (0, 1), (1, 2), (1, 2), (0, 2), (0, 2)], cap=2)
    c = proper_edge_coloring(g, 6)
    assert c.is_total() and verify_proper(c) == []
    assert len(set(c.colors)) == 6


@settings(max_examples=300)
@given(simple_graphs(max_n=12))
def test_vizing_simple_property(g: MultiGraph):
    c = proper_edge_coloring(g, g.max_degree + 1)
    assert c.is_total()
    assert verify_proper(c) == []
    assert all(1 <= x <= g.max_degree + 1 for x in c.colors)


@settings(max_examples=300)
@given(multigraphs())
def test_vizing_multigraph_property(g: MultiGraph):
    k = g.max_degree + g.max_multiplicity
    c = proper_edge_coloring(g, k)
    assert c.is_total()
    assert verify_proper(c) == []


@given(st.integers(0, 10_000))
def test_vizing_random_gnp(seed):
    g = gnp(25, 0.3, seed)
    c = proper_edge_coloring(g, g.max_degree + 1)
    assert verify_proper(c) == []


@given(simple_graphs(max_n=8), st.data())
def test_indistinguishable_matches_definition(g: MultiGraph, data):
    k = g.max_degree + 2
    colors = [data.draw(st.integers(0, k)) for _ in range(g.m)]
    c = PartialEdgeColoring(g, k, colors)
    expected = [(u, v) for u, v in g.adjacent_pairs() if color_set(c, u) == color_set(c, v)]
    assert indistinguishable_pairs(c) == expected
