import pytest
from hypothesis import given, strategies as st

from graphpsd.graphs import (
    Graph,
    GraphError,
    build_graph,
    complete_graph,
    find_open_triangle,
    format_graph,
    is_connected,
    is_tree,
    max_degree,
    parse_graph,
    path_graph,
    random_tree,
    star_graph,
)


def test_path_edges():
    assert path_graph(3).edges == frozenset({(0, 1), (1, 2)})


def test_star_edges_and_degree():
    g = star_graph(4)
    assert g.edges == frozenset({(0, 1), (0, 2), (0, 3)})
    assert max_degree(g) == 3


def test_random_tree_is_tree():
    g = random_tree(8, seed=42)
    assert len(g.edges) == 7
    assert is_connected(g)
    assert is_tree(g)


@given(st.integers(2, 40), st.integers(0, 10_000))
def test_random_tree_always_tree(n, seed):
    assert is_tree(random_tree(n, seed))


def test_random_tree_deterministic():
    assert random_tree(12, 7).edges == random_tree(12, 7).edges


def test_max_degree_families():
    assert max_degree(star_graph(5)) == 4
    assert max_degree(path_graph(5)) == 2
    assert max_degree(complete_graph(6)) == 5


def test_is_tree_families():
    assert is_tree(path_graph(4))
    assert not is_tree(complete_graph(3))
    assert is_tree(star_graph(7))


def test_open_triangle():
    assert find_open_triangle(path_graph(3)) == (1, 0, 2)
    assert find_open_triangle(complete_graph(4)) is None
    assert find_open_triangle(star_graph(3)) == (0, 1, 2)


def test_open_triangle_is_open():
    g = random_tree(9, 3)
    i, j, k = find_open_triangle(g)
    assert g.has_edge(i, j) and g.has_edge(i, k) and not g.has_edge(j, k)


def test_build_graph_dispatch():
    assert build_graph("path", 3) == path_graph(3)
    assert build_graph("star", 4) == star_graph(4)
    assert build_graph("complete", 4) == complete_graph(4)
    assert is_tree(build_graph("random_tree", 6, seed=1))
    with pytest.raises(GraphError):
        build_graph("wheel", 5)


def test_graph_validation():
    with pytest.raises(GraphError):
        Graph(3, frozenset({(0, 3)}))
    with pytest.raises(GraphError):
        Graph(3, frozenset({(1, 1)}))


def test_format_parse_roundtrip():
    for g in (path_graph(5), star_graph(4), random_tree(10, 0)):
        assert parse_graph(format_graph(g)) == g


def test_parse_rejects_garbage():
    with pytest.raises(GraphError):
        parse_graph("3 1\n2 2\n")
