"""Symmetric matrices with sparsity patterns: Hadamard powers, quadratic forms,
PSD testing, entrywise maps, and seeded sampling of pattern-constrained PSD
matrices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Tuple

import numpy as np

from .graphs import Graph, GraphError, is_forest

DEFAULT_PSD_TOL = 1e-9


class MatrixError(ValueError):
    pass


@dataclass(frozen=True)
class PsdVerdict:
    is_psd: bool
    min_eigenvalue: float
    tolerance_used: float


def check_symmetric(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise MatrixError(f"expected a square matrix, got shape {a.shape}")
    if not np.array_equal(a, a.T):
        raise MatrixError("matrix is not exactly symmetric")
    if not np.all(np.isfinite(a)):
        raise MatrixError("matrix has non-finite entries")
    return a


def pattern_of(a: np.ndarray) -> Graph:
    """Graph with edge (i, j), i != j, wherever the entry is nonzero (exact)."""
    a = check_symmetric(a)
    n = a.shape[0]
    edges = {(i, j) for i in range(n) for j in range(i + 1, n) if a[i, j] != 0.0}
    return Graph(n, frozenset(edges))


def hadamard_power(a: np.ndarray, exponent: float) -> np.ndarray:
    """Entrywise power; exponent 0 yields the 0/1 support matrix."""
    a = np.asarray(a, dtype=float)
    if exponent < 0:
        raise MatrixError("exponent must be nonnegative")
    if exponent == 0:
        return (a != 0.0).astype(float)
    if float(exponent).is_integer():
        return a ** float(exponent)
    if np.any(a < 0):
        raise MatrixError("non-integer Hadamard power of a matrix with negative entries")
    return a ** float(exponent)


def quadratic_form(a: np.ndarray, beta: np.ndarray) -> float:
    a = np.asarray(a, dtype=float)
    beta = np.asarray(beta, dtype=float)
    if beta.shape != (a.shape[0],):
        raise MatrixError(f"vector length {beta.shape} does not match n={a.shape[0]}")
    return float(beta @ a @ beta)


def is_psd(a: np.ndarray, tol: float = DEFAULT_PSD_TOL) -> PsdVerdict:
    """Spectral PSD oracle: PSD iff lambda_min >= -tol * max(1, spectral radius)."""
    if tol <= 0:
        raise MatrixError("tolerance must be positive")
    a = check_symmetric(a)
    eigs = np.linalg.eigvalsh(a)
    lam_min = float(eigs[0])
    radius = float(np.max(np.abs(eigs))) if eigs.size else 0.0
    return PsdVerdict(lam_min >= -tol * max(1.0, radius), lam_min, tol)


def spectral_boundary_band(a: np.ndarray, tol: float = DEFAULT_PSD_TOL) -> bool:
    """True when lambda_min sits within the tolerance band around zero, where
    floating-point verdicts are allowed to disagree."""
    eigs = np.linalg.eigvalsh(np.asarray(a, dtype=float))
    lam_min, lam_max = float(eigs[0]), float(eigs[-1])
    return abs(lam_min) <= tol * max(1.0, abs(lam_max))


def apply_entrywise(f: Callable[[np.ndarray], np.ndarray], a: np.ndarray, g: Graph) -> np.ndarray:
    """f on diagonal and edge entries, zero off the pattern."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if g.n != n:
        raise MatrixError(f"graph has {g.n} vertices, matrix has {n}")
    mask = np.eye(n, dtype=bool)
    for i, j in g.edges:
        mask[i, j] = mask[j, i] = True
    out = np.zeros_like(a)
    out[mask] = np.asarray(f(a[mask]), dtype=float)
    return out


def elimination_order(g: Graph):
    """Leaf-first perfect elimination order of a forest.

    Returns (order, parent) where parent[v] is the neighbor of v eliminated
    after v (or -1 for the last vertex of its component).
    """
    if not is_forest(g):
        raise GraphError("pattern is not a forest")
    import heapq

    adj = [set(nbrs) for nbrs in g.adjacency()]
    deg = [len(s) for s in adj]
    heap = [v for v in range(g.n) if deg[v] <= 1]
    heapq.heapify(heap)
    removed = [False] * g.n
    order, parent = [], [-1] * g.n
    while heap:
        v = heapq.heappop(heap)
        if removed[v]:
            continue
        removed[v] = True
        order.append(v)
        for u in adj[v]:
            if not removed[u]:
                parent[v] = u
                adj[u].discard(v)
                deg[u] -= 1
                if deg[u] <= 1:
                    heapq.heappush(heap, u)
    return order, parent


def random_psd_pattern_entries(g: Graph, range_max: float, seed: int):
    """Sparse sampler for PSD matrices with pattern inside a forest g.

    Returns (diag, off) with off keyed by (i, j), i < j.  The matrix is built
    as L L^T for a lower-triangular L in a leaf-first elimination order, so the
    pattern needs no projection, then rescaled to keep every entry below
    range_max.
    """
    if range_max <= 0:
        raise MatrixError("range_max must be positive")
    order, parent = elimination_order(g)
    rng = np.random.default_rng(seed)
    diag = np.zeros(g.n)
    off: Dict[Tuple[int, int], float] = {}
    for v in order:
        lvv = rng.uniform(0.3, 1.5)
        diag[v] += lvv * lvv
        u = parent[v]
        if u >= 0:
            luv = rng.uniform(0.0, 1.0)
            diag[u] += luv * luv
            key = (min(u, v), max(u, v))
            off[key] = off.get(key, 0.0) + lvv * luv
    peak = max(diag.max(), max(off.values(), default=0.0))
    scale = 0.999 * range_max / peak
    diag *= scale
    for key in off:
        off[key] *= scale
    return diag, off


def random_psd_with_pattern(g: Graph, range_max: float, seed: int) -> np.ndarray:
    """Dense A in the PSD cone of the forest pattern g, entries in [0, range_max)."""
    diag, off = random_psd_pattern_entries(g, range_max, seed)
    a = np.diag(diag)
    for (i, j), val in off.items():
        a[i, j] = a[j, i] = val
    return a


def format_matrix(a: np.ndarray) -> str:
    a = check_symmetric(a)
    n = a.shape[0]
    lines = [str(n)]
    for i in range(n):
        for j in range(i, n):
            if a[i, j] != 0.0:
                lines.append(f"{i} {j} {float(a[i, j])!r}")
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MatrixError("empty matrix text")
    n = int(lines[0])
    a = np.zeros((n, n))
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise MatrixError(f"bad entry line {ln!r}")
        i, j, val = int(parts[0]), int(parts[1]), float(parts[2])
        if not (0 <= i <= j < n):
            raise MatrixError(f"entry {ln!r} out of range")
        a[i, j] = a[j, i] = val
    return a
