from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from avdcolor.coloring import PartialEdgeColoring
from avdcolor.errors import IndexOutOfRange, LoopRejected, ParseError
from avdcolor.generators import complete, complete_bipartite, cycle, generate, gnp, path, regular

from avdcolor.io import parse_edge_list, read_coloring, serialize_edge_list, write_coloring

from conftest import multigraphs


def test_parse_k2():
    g = parse_edge_list("2 1\n0 1")
    assert g.n == 2 and g.edges == ((0, 1),)


def test_parse_c5_with_comments():
    text = "# a five-cycle\n5 5\n0 1\n1 2\n\n2 3\n# chord-free\n3 4\n4 0\n"
    assert parse_edge_list(text) == cycle(5)


def test_parse_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        parse_edge_list("3 2\n0 1\n0 3")


def test_parse_loop():
    with pytest.raises(LoopRejected):
        parse_edge_list("3 1\n1 1")


@pytest.mark.parametrize(
    "text,line",
    [("", 0), ("2\n", 1), ("2 1\n0 x\n", 2), ("2 2\n0 1\n", 2), ("3 1\n0 1 2\n", 2), ("2 1\n-1 0\n", 2)],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_edge_list(text)
    assert info.value.line == line


def test_parallel_edges_need_cap():
    text = "2 2\n0 1\n0 1\n"
    assert parse_edge_list(text, cap=2).multiplicity(0, 1) == 2


FAMILIES = [
    path(6),
    cycle(7),
    complete(5),
    complete_bipartite(3, 4),
    gnp(30, 0.2, seed=1),
    regular(20, 3, seed=4),
]


@pytest.mark.parametrize("g", FAMILIES, ids=repr)
def test_round_trip_families(g):
    back = parse_edge_list(serialize_edge_list(g))
    assert back == g
    assert back.same_multiset(g)


@settings(max_examples=200)
@given(multigraphs())
def test_round_trip_multigraphs(g):
    back = parse_edge_list(serialize_edge_list(g), cap=g.cap)
    assert back.n == g.n and back.same_multiset(g)


@given(st.integers(4, 30), st.integers(0, 1000))
def test_round_trip_regular(n, seed):
    d = 3 if n % 2 == 0 else 2
    g = generate("regular", n, d, seed)
    assert all(x == d for x in g.degrees())
    assert parse_edge_list(serialize_edge_list(g)) == g


def test_coloring_file_round_trip(tmp_path):
    g = cycle(5)
    c = PartialEdgeColoring(g, 5, [1, 2, 3, 4, 5])
    path_ = tmp_path / "c.json"
    write_coloring(c, path_)
    assert read_coloring(g, path_) == c


def test_coloring_file_errors(tmp_path):
    g = cycle(5)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError):
        read_coloring(g, bad)
    bad.write_text('{"k": 3}')
    with pytest.raises(ParseError):
        read_coloring(g, bad)
    bad.write_text('{"colors": [1, 2, 3, 1, 2]}')
    assert read_coloring(g, bad).k == 3


def test_generator_dispatch_errors():
    from avdcolor.errors import InfeasibleFamily

    with pytest.raises(InfeasibleFamily):
        generate("regular", 5, 3, 1)
    with pytest.raises(InfeasibleFamily):
        generate("nope", 3)
    with pytest.raises(InfeasibleFamily):
        generate("cycle")
    assert generate("complete", "4").m == 6
    assert generate("cycle", 5).max_degree == 2


def test_generators_seed_deterministic():
    assert gnp(40, 0.3, seed=9) == gnp(40, 0.3, seed=9)
    assert regular(30, 4, seed=9) == regular(30, 4, seed=9)
    g = generate("regular", 10, 3, 7)
    assert g.is_simple() and set(g.degrees()) == {3}


def test_bipartite_generator_is_bipartite():
    g = generate("bipartite_gnp", 5, 6, 0.5, 3)
    assert all((u < 5) != (v < 5) for u, v in g.edges)


def test_small_connected_catalog_counts():
    from avdcolor.generators import small_connected_graphs

    counts = {}
    for g in small_connected_graphs(5):
        counts[g.n] = counts.get(g.n, 0) + 1
    # connected graphs up to isomorphism on 1..5 vertices
    assert counts == {1: 1, 2: 1, 3: 2, 4: 6, 5: 21}
