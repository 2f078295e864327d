import math

import numpy as np
import pytest

from graphpsd.graphs import Graph, path_graph, star_graph
from graphpsd.matrices import (
    MatrixError,
    apply_entrywise,
    elimination_order,
    format_matrix,
    hadamard_power,
    is_psd,
    parse_matrix,
    pattern_of,
    quadratic_form,
    random_psd_pattern_entries,
    random_psd_with_pattern,
    spectral_boundary_band,
)

B211 = np.array([[2.0, 1, 1], [1, 1, 0], [1, 0, 1]])


def test_pattern_of():
    assert pattern_of(B211) == star_graph(3)
    assert pattern_of(np.zeros((4, 4))) == Graph(4, frozenset())
    assert pattern_of(np.eye(3)) == Graph(3, frozenset())


def test_hadamard_power_values():
    a = np.array([[1.0, 2], [2, 4]])
    assert np.array_equal(hadamard_power(a, 2), [[1, 4], [4, 16]])
    z = np.array([[0.0, 3], [3, 0]])
    assert np.array_equal(hadamard_power(z, 0), [[0, 1], [1, 0]])
    h = np.array([[4.0, 9], [9, 4]])
    assert np.allclose(hadamard_power(h, 0.5), [[2, 3], [3, 2]])


def test_hadamard_fractional_negative_rejected():
    with pytest.raises(MatrixError):
        hadamard_power(np.array([[1.0, -1], [-1, 1]]), 0.5)


def test_quadratic_form():
    assert quadratic_form(np.eye(2), np.array([3.0, 4])) == 25
    assert quadratic_form(np.array([[1.0, 2], [2, 4]]), np.array([1.0, -1])) == 1
    assert quadratic_form(np.ones((3, 3)), np.array([1.0, -2, 1])) == 0


def test_is_psd_examples():
    v = is_psd(B211)
    assert v.is_psd and abs(v.min_eigenvalue) < 1e-12
    assert not is_psd(np.array([[1.0, 1, 1], [1, 1, 0], [1, 0, 1]])).is_psd
    assert is_psd(np.eye(7)).is_psd


def test_boundary_band():
    assert spectral_boundary_band(B211)  # singular: right on the boundary
    assert not spectral_boundary_band(np.eye(2))


def test_apply_entrywise():
    out = apply_entrywise(np.square, B211, star_graph(3))
    assert np.array_equal(out, [[4, 1, 1], [1, 1, 0], [1, 0, 1]])
    root = apply_entrywise(np.sqrt, B211, star_graph(3))
    assert math.isclose(root[0, 0], math.sqrt(2))
    assert not is_psd(root).is_psd
    zero = apply_entrywise(lambda x: 0.0 * x, B211, star_graph(3))
    assert not zero.any()


def test_apply_entrywise_masks_off_pattern():
    # entries outside the graph are forced to zero, not passed through f
    a = np.array([[1.0, 0.5], [0.5, 1]])
    out = apply_entrywise(lambda x: x + 1.0, a, Graph(2, frozenset()))
    assert np.array_equal(out, np.diag([2.0, 2.0]))


@pytest.mark.parametrize("seed", range(25))
def test_random_psd_pattern_and_oracle(seed):
    g = path_graph(3)
    a = random_psd_with_pattern(g, 4.0, seed)
    assert is_psd(a).is_psd
    pat = pattern_of(a)
    assert pat.edges <= g.edges


def test_random_psd_range():
    a = random_psd_with_pattern(star_graph(6), 1.0, seed=5)
    assert np.all(np.abs(a) < 1.0)
    assert np.all(np.diag(a) >= 0)


def test_random_psd_single_vertex():
    a = random_psd_with_pattern(Graph(1, frozenset()), 2.0, seed=0)
    assert a.shape == (1, 1) and a[0, 0] >= 0


def test_sparse_sampler_matches_dense():
    g = path_graph(6)
    diag, off = random_psd_pattern_entries(g, 3.0, seed=9)
    dense = random_psd_with_pattern(g, 3.0, seed=9)
    assert np.allclose(np.diag(dense), diag)
    for (i, j), v in off.items():
        assert math.isclose(dense[i, j], v)


def test_elimination_order_leaves_first():
    order, parent = elimination_order(path_graph(4))
    assert sorted(order) == [0, 1, 2, 3]
    assert parent[order[-1]] == -1
    seen = set()
    for v in order[:-1]:
        assert parent[v] >= 0 and parent[v] not in seen
        seen.add(v)


def test_format_parse_roundtrip():
    a = random_psd_with_pattern(star_graph(4), 2.0, seed=3)
    b = parse_matrix(format_matrix(a))
    assert np.allclose(a, b, atol=1e-12)


def test_check_asymmetric_rejected():
    with pytest.raises(MatrixError):
        is_psd(np.array([[1.0, 2], [0, 1]]))
