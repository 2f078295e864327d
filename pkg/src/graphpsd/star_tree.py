"""Closed-form PSD tests for star and tree sparsity patterns.

A star matrix has center diagonal p1, leaf diagonals p2..p_{d+1}, first-row
entries alpha2..alpha_{d+1}, and zeros elsewhere.  Tree patterns are tested by
leaf elimination with scalar Schur complements and never touch an eigensolver.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from .graphs import Graph, GraphError, is_forest
from .matrices import DEFAULT_PSD_TOL, MatrixError, check_symmetric


@dataclass(frozen=True)
class StarMatrix:
    """Star-patterned symmetric matrix: p has length d+1, alpha has length d."""

    p: tuple
    alpha: tuple

    def __post_init__(self):
        if len(self.p) != len(self.alpha) + 1:
            raise MatrixError(
                f"need len(p) == len(alpha) + 1, got {len(self.p)} and {len(self.alpha)}"
            )
        object.__setattr__(self, "p", tuple(float(x) for x in self.p))
        object.__setattr__(self, "alpha", tuple(float(x) for x in self.alpha))

    @property
    def d(self) -> int:
        return len(self.alpha)

    def to_dense(self) -> np.ndarray:
        n = self.d + 1
        a = np.zeros((n, n))
        a[np.arange(n), np.arange(n)] = self.p
        a[0, 1:] = self.alpha
        a[1:, 0] = self.alpha
        return a

    @classmethod
    def from_dense(cls, a: np.ndarray) -> "StarMatrix":
        a = check_symmetric(a)
        n = a.shape[0]
        body = a[1:, 1:].copy()
        np.fill_diagonal(body, 0.0)
        if np.any(body != 0.0):
            raise MatrixError("matrix is not star-patterned with center 0")
        return cls(tuple(np.diag(a)), tuple(a[0, 1:]))


@dataclass(frozen=True)
class StarVerdict:
    is_psd: bool
    failed_condition: Optional[int]  # 1, 2 or 3; None when PSD


def star_psd_check(s: StarMatrix) -> StarVerdict:
    """PSD iff all p_i >= 0, (p_i = 0 implies alpha_i = 0), and
    p1 >= sum of alpha_i^2 / p_i over leaves with p_i != 0."""
    if any(pi < 0 for pi in s.p):
        return StarVerdict(False, 1)
    for pi, ai in zip(s.p[1:], s.alpha):
        if pi == 0.0 and ai != 0.0:
            return StarVerdict(False, 2)
    load = sum(ai * ai / pi for pi, ai in zip(s.p[1:], s.alpha) if pi != 0.0)
    if s.p[0] < load:
        return StarVerdict(False, 3)
    return StarVerdict(True, None)


def star_slack(s: StarMatrix) -> float:
    """p1 minus the leaf load; negative slack quantifies the PSD violation."""
    load = sum(ai * ai / pi for pi, ai in zip(s.p[1:], s.alpha) if pi != 0.0)
    return s.p[0] - load


def star_factor_am(s: StarMatrix, m: int) -> float:
    return s.p[0] ** m - sum(
        ai ** (2 * m) / pi ** m for pi, ai in zip(s.p[1:], s.alpha) if pi != 0.0
    )


def star_factor(s: StarMatrix, m: int) -> np.ndarray:
    """Upper-triangular L_m with L_m L_m^T equal to the m-th Hadamard power.

    The column for a leaf with p_i = 0 is zero by convention.
    """
    if m < 1:
        raise MatrixError("m must be a positive integer")
    verdict = star_psd_check(s)
    if not verdict.is_psd:
        raise MatrixError(f"star matrix is not PSD (condition {verdict.failed_condition})")
    am = star_factor_am(s, m)
    if am < 0:
        # roundoff can drive the exact-arithmetic a_m slightly negative
        if am > -1e-12 * max(1.0, abs(s.p[0]) ** m):
            am = 0.0
        else:
            raise MatrixError(f"factorization undefined: a_{m} = {am} < 0")
    n = s.d + 1
    lm = np.zeros((n, n))
    lm[0, 0] = math.sqrt(am)
    for i, (pi, ai) in enumerate(zip(s.p[1:], s.alpha), start=1):
        if pi != 0.0:
            lm[0, i] = ai ** m * pi ** (-m / 2.0)
            lm[i, i] = pi ** (m / 2.0)
    return lm


def star_det(s: StarMatrix) -> float:
    """prod p_i  -  sum_i alpha_i^2 * prod of the other leaf diagonals."""
    total = math.prod(s.p)
    for i, ai in enumerate(s.alpha):
        rest = math.prod(pj for j, pj in enumerate(s.p[1:]) if j != i)
        total -= ai * ai * rest
    return total


def star_eigenvalues_equal_p(s: StarMatrix) -> list:
    """Eigenvalues when all leaf diagonals are equal: p2 repeated d-1 times plus
    the two roots of the rank-two perturbation."""
    if s.d < 1:
        raise MatrixError("need at least one leaf")
    p2 = s.p[1]
    if any(pi != p2 for pi in s.p[1:]):
        raise MatrixError("leaf diagonals must be exactly equal")
    p1 = s.p[0]
    disc = math.sqrt((p1 - p2) ** 2 + 4.0 * sum(ai * ai for ai in s.alpha))
    hi = (p1 + p2 + disc) / 2.0
    lo = (p1 + p2 - disc) / 2.0
    return [p2] * (s.d - 1) + [hi, lo]


def tree_psd_check_sparse(
    t: Graph,
    diag: np.ndarray,
    off: Dict[Tuple[int, int], float],
    tol: float = DEFAULT_PSD_TOL,
) -> bool:
    """Leaf-elimination PSD test on sparse (diag, off) entries with pattern in
    the forest t.  Runs in O(n log n) for the leaf heap."""
    if not is_forest(t):
        raise GraphError("pattern graph is not a forest")
    n = t.n
    for (i, j), val in off.items():
        if val != 0.0 and not t.has_edge(i, j):
            raise MatrixError(f"entry {(i, j)} violates the tree pattern")
    scale = max(1.0, float(np.max(np.abs(diag))) if n else 1.0)
    if off:
        scale = max(scale, max(abs(v) for v in off.values()))
    thr = tol * scale

    d = np.array(diag, dtype=float)
    adj = [set(nbrs) for nbrs in t.adjacency()]
    deg = [len(s) for s in adj]
    heap = [v for v in range(n) if deg[v] <= 1]
    heapq.heapify(heap)
    removed = [False] * n
    while heap:
        v = heapq.heappop(heap)
        if removed[v]:
            continue
        removed[v] = True
        if not adj[v]:
            if d[v] < -thr:
                return False
            continue
        (u,) = adj[v]
        a_uv = off.get((min(u, v), max(u, v)), 0.0)
        if d[v] > thr:
            d[u] -= a_uv * a_uv / d[v]
        elif d[v] >= -thr:
            if abs(a_uv) > thr:
                return False
        else:
            return False
        adj[u].discard(v)
        deg[u] -= 1
        if deg[u] <= 1:
            heapq.heappush(heap, u)
    return True


def tree_psd_check(a: np.ndarray, t: Graph, tol: float = DEFAULT_PSD_TOL) -> bool:
    """Dense front end for the leaf-elimination PSD test."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if t.n != n:
        raise MatrixError(f"graph has {t.n} vertices, matrix has {n}")
    off = {}
    for i in range(n):
        for j in range(i + 1, n):
            if a[i, j] != 0.0:
                off[(i, j)] = a[i, j]
    return tree_psd_check_sparse(t, np.diag(a).copy(), off, tol)


def random_star(d: int, rng: np.random.Generator, low: float = -2.0, high: float = 2.0) -> StarMatrix:
    """Star matrix with i.i.d. uniform entries (not necessarily PSD)."""
    return StarMatrix(tuple(rng.uniform(low, high, d + 1)), tuple(rng.uniform(low, high, d)))


def random_psd_star(d: int, rng: np.random.Generator, boundary_prob: float = 0.3) -> StarMatrix:
    """PSD star sample; with probability boundary_prob the center diagonal sits
    exactly at the leaf load, which is where nontrivial kernels live.  Some
    draws also force alpha_i = p_i on a leaf to populate the joint kernel."""
    p_leaf = rng.uniform(0.1, 2.0, d)
    alpha = rng.uniform(-1.0, 1.0, d) * np.sqrt(p_leaf)
    if d >= 1 and rng.uniform() < 0.3:
        i = int(rng.integers(d))
        alpha[i] = p_leaf[i]
    # accumulate exactly like star_psd_check so boundary draws land on the
    # criterion's notion of equality, not one ulp below it
    load = sum(ai * ai / pi for pi, ai in zip(p_leaf, alpha) if pi != 0.0)
    if rng.uniform() < boundary_prob:
        p1 = load
    else:
        p1 = load * (1.0 + rng.uniform(0.0, 1.0)) + rng.uniform(0.0, 0.5)
    return StarMatrix((p1,) + tuple(p_leaf), tuple(alpha))
