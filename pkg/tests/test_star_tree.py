import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from graphpsd.graphs import path_graph, star_graph
from graphpsd.matrices import hadamard_power, is_psd, spectral_boundary_band
from graphpsd.star_tree import (
    StarMatrix,
    random_psd_star,
    random_star,
    star_det,
    star_eigenvalues_equal_p,
    star_factor,
    star_factor_am,
    star_psd_check,
    tree_psd_check,
    tree_psd_check_sparse,
)


def test_star_psd_boundary_equality():
    s = StarMatrix((2.0, 1.0, 1.0), (1.0, 1.0))
    v = star_psd_check(s)
    assert v.is_psd
    oracle = is_psd(s.to_dense())
    assert oracle.is_psd and abs(oracle.min_eigenvalue) < 1e-12


def test_star_psd_condition3_fails():
    v = star_psd_check(StarMatrix((1.9, 1.0, 1.0), (1.0, 1.0)))
    assert not v.is_psd and v.failed_condition == 3
    assert not is_psd(StarMatrix((1.9, 1.0, 1.0), (1.0, 1.0)).to_dense()).is_psd


def test_star_psd_condition2_fails():
    v = star_psd_check(StarMatrix((1.0, 0.0, 1.0), (0.5, 0.0)))
    assert not v.is_psd and v.failed_condition == 2


def test_star_psd_condition1_fails():
    v = star_psd_check(StarMatrix((1.0, -0.5, 1.0), (0.0, 0.0)))
    assert not v.is_psd and v.failed_condition == 1


def test_star_factor_boundary():
    s = StarMatrix((2.0, 1.0, 1.0), (1.0, 1.0))
    assert star_factor_am(s, 1) == 0.0
    l1 = star_factor(s, 1)
    assert np.allclose(l1[0], [0.0, 1.0, 1.0])
    assert np.allclose(l1 @ l1.T, s.to_dense())


def test_star_factor_am_value():
    assert star_factor_am(StarMatrix((4.0, 1.0, 1.0), (1.0, 1.0)), 2) == 14.0


def test_star_factor_zero_p_convention():
    s = StarMatrix((1.0, 0.0, 1.0), (0.0, 1.0))
    l1 = star_factor(s, 1)
    assert l1[0, 1] == 0.0
    assert np.allclose(l1 @ l1.T, s.to_dense())


@settings(max_examples=100)
@given(st.integers(1, 8), st.integers(1, 4), st.integers(0, 10_000))
def test_star_factor_reproduces_power(d, m, seed):
    rng = np.random.default_rng(seed)
    s = random_psd_star(d, rng)
    lm = star_factor(s, m)
    assert np.allclose(lm @ lm.T, hadamard_power(s.to_dense(), m), atol=1e-9)


def test_star_det_values():
    assert star_det(StarMatrix((2.0, 1.0, 1.0), (1.0, 1.0))) == 0.0
    assert star_det(StarMatrix((3.0, 1.0, 2.0), (1.0, 1.0))) == 3.0
    assert star_det(StarMatrix((3.0, 1.0, 2.0), (0.0, 0.0))) == 6.0


def test_star_eigs_equal_p():
    ev = sorted(star_eigenvalues_equal_p(StarMatrix((2.0, 1.0, 1.0), (1.0, 1.0))))
    assert np.allclose(ev, [0.0, 1.0, 3.0])
    assert np.allclose(
        sorted(star_eigenvalues_equal_p(StarMatrix((1.0, 1.0, 1.0), (0.0, 0.0)))),
        [1.0, 1.0, 1.0],
    )
    ev = sorted(star_eigenvalues_equal_p(StarMatrix((5.0, 1.0, 1.0, 1.0), (1.0, 1.0, 1.0))))
    assert np.allclose(ev, sorted([1.0, 1.0, (6 - math.sqrt(28)) / 2, (6 + math.sqrt(28)) / 2]))


def test_tree_psd_path_examples():
    t = path_graph(3)
    assert tree_psd_check(np.array([[1.0, 1, 0], [1, 2, 1], [0, 1, 1]]), t)
    assert not tree_psd_check(np.array([[1.0, 1, 0], [1, 1.9, 1], [0, 1, 1]]), t)


def test_tree_psd_star_matches_star_check():
    b211 = np.array([[2.0, 1, 1], [1, 1, 0], [1, 0, 1]])
    assert tree_psd_check(b211, star_graph(3))


def test_tree_psd_rejects_off_pattern():
    t = path_graph(3)
    a = np.array([[1.0, 0.2, 0.2], [0.2, 1, 0.2], [0.2, 0.2, 1]])
    with pytest.raises(Exception):
        tree_psd_check(a, t)


def test_tree_sparse_zero_pivot_branch():
    # zero leaf diagonal with zero incident edge is fine; nonzero edge is not
    t = path_graph(2)
    assert tree_psd_check_sparse(t, [1.0, 0.0], {})
    assert not tree_psd_check_sparse(t, [1.0, 0.0], {(0, 1): 0.5})


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10), st.integers(0, 10_000))
def test_star_check_agrees_with_oracle(d, seed):
    rng = np.random.default_rng(seed)
    s = random_star(d, rng)
    dense = s.to_dense()
    if spectral_boundary_band(dense):
        return
    assert star_psd_check(s).is_psd == is_psd(dense).is_psd


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 8), st.integers(0, 10_000))
def test_random_psd_star_is_psd(d, seed):
    s = random_psd_star(d, np.random.default_rng(seed))
    assert star_psd_check(s).is_psd
