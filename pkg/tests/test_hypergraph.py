import pytest
from hypothesis import given

from hypermis.hypergraph import (
    Graph,
    HypergraphError,
    bipartite_view,
    build,
    small_example,
    induced,
    parse,
    parse_graph,
    serialize,
    serialize_graph,
    server_graph,
    stats,
)

from conftest import hypergraphs


def test_build_normalizes_and_dedupes():
    h = build(4, [(2, 0, 2), (0, 2), (3,)])
    assert h.edges == ((0, 2), (3,))
    assert build(3, [(0, 1), (1, 0)], allow_duplicates=True).m == 2


@pytest.mark.parametrize("edges", [[()], [(0, 5)], [(-1,)]])
def test_build_rejects_bad_edges(edges):
    with pytest.raises(HypergraphError):
        build(3, edges)


def test_small_example_stats():
    h = small_example()
    assert stats(h) == (2, 3, h.avg_degree())
    assert h.avg_degree() * 4 == 7
    assert server_graph(h).neighbors(3) == {1, 2}


def test_bipartite_links_match_incidence():
    h = small_example()
    bv = bipartite_view(h)
    assert len(bv.links) == sum(len(e) for e in h.edges)
    assert (3, 1) in bv.links


def test_induced_keeps_only_contained_edges():
    v = induced(small_example(), {1, 2, 3})
    assert [sorted(e) for e in v.edge_sets()] == [[1, 3], [2, 3]]


@pytest.mark.parametrize("text", [
    "", "3", "2 1\n3 1 2", "2 1\n2 1 3", "2 2\n2 1 2", "2 1\n2 1 x", "-1 0",
])
def test_parse_errors(text):
    with pytest.raises(HypergraphError):
        parse(text)


def test_parse_comments_and_blank_lines():
    h = parse("# header\n4 3\n\n3 1 2 3  # first\n2 2 4\n2 3 4\n")
    assert h == small_example()


@given(hypergraphs())
def test_roundtrip(h):
    assert parse(serialize(h)) == h


@given(hypergraphs())
def test_degree_sum_equals_size_sum(h):
    assert sum(h.degree(v) for v in h.vertices) == sum(len(e) for e in h.edges)


def test_graph_roundtrip_and_errors():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert parse_graph(serialize_graph(g)) == g
    with pytest.raises(HypergraphError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(HypergraphError):
        parse_graph("2 1\n1 3\n")
