"""Witness vectors for Schur-power quadratic forms.

A vector beta is an order-k witness for a symmetric matrix A when it
annihilates the quadratic forms of the Hadamard powers A^(0)..A^(k-1) and is
strictly positive on that of A^(k).  This module certifies membership,
constructs witnesses for rank-one (Vandermonde) and star matrices, derives
order bounds per graph, and houses the kernel-stability and derivative-sign
diagnostics built on the same quadratic forms.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .functions import DomainError, EntrywiseFunction
from .graphs import Graph, GraphError, max_degree
from .matrices import (
    MatrixError,
    check_symmetric,
    format_matrix,
    hadamard_power,
    is_psd,
    quadratic_form,
)
from .star_tree import StarMatrix, star_psd_check

KERNEL_TOL = 1e-10
POSITIVITY_TOL = 1e-8


class WitnessError(Exception):
    pass


@dataclass(frozen=True)
class WitnessRecord:
    k: int
    beta: Tuple[float, ...]
    kernel_residual: float
    positivity_margin: float


@dataclass(frozen=True)
class WitnessSet:
    matrix: np.ndarray
    witnesses: Tuple[WitnessRecord, ...]

    def to_json(self) -> str:
        payload = {
            "matrix": format_matrix(self.matrix),
            "witnesses": [
                {
                    "k": w.k,
                    "beta": list(w.beta),
                    "kernel_residual": w.kernel_residual,
                    "positivity_margin": w.positivity_margin,
                }
                for w in self.witnesses
            ],
        }
        return json.dumps(payload, indent=2)

    def recertify(self, tol: float = KERNEL_TOL) -> bool:
        return all(
            nk_membership(self.matrix, np.asarray(w.beta), w.k, tol=tol)
            for w in self.witnesses
        )


def nk_residuals(a: np.ndarray, beta: np.ndarray, k: int) -> Tuple[float, float]:
    """(max normalized kernel residual over orders < k, positivity margin at
    order k).  Both are scaled by ||beta||^2; the kernel residual is further
    divided by the Frobenius norm of the relevant power."""
    a = check_symmetric(a)
    beta = np.asarray(beta, dtype=float)
    if beta.shape != (a.shape[0],):
        raise MatrixError(f"vector length {beta.shape} does not match {a.shape}")
    nrm2 = float(beta @ beta)
    if nrm2 == 0.0:
        return 0.0, 0.0
    resid = 0.0
    for m in range(k):
        am = hadamard_power(a, m)
        denom = nrm2 * max(float(np.linalg.norm(am)), np.finfo(float).tiny)
        resid = max(resid, abs(quadratic_form(am, beta)) / denom)
    margin = quadratic_form(hadamard_power(a, k), beta) / nrm2
    return resid, margin


def nk_membership(
    a: np.ndarray,
    beta: np.ndarray,
    k: int,
    tol: float = KERNEL_TOL,
    pos_tol: float = POSITIVITY_TOL,
) -> bool:
    """True iff beta kills the quadratic forms of A^(0)..A^(k-1) within tol and
    is strictly positive on A^(k).  k = 0 tests positivity on the support
    matrix only.  The positivity cutoff is deliberately two decades looser
    than the kernel tolerance."""
    if k < 0:
        raise WitnessError("order must be nonnegative")
    beta = np.asarray(beta, dtype=float)
    nrm2 = float(beta @ beta)
    if nrm2 == 0.0:
        return False
    resid, margin = nk_residuals(a, beta, k)
    return resid <= tol and margin > pos_tol


def eta_bound(a: np.ndarray) -> int:
    """Number of distinct nonzero entries of A.  No order-k witness exists for
    k >= eta(A): the power vectors of the distinct entries already span the
    constraint space."""
    a = check_symmetric(a)
    vals = a[np.triu_indices_from(a)]
    return int(np.unique(vals[vals != 0.0]).size)


def witness_search(
    a: np.ndarray, k: int, trials: int = 1000, seed: int = 0
) -> Optional[np.ndarray]:
    """Randomized search for an order-k witness; None when nothing is found.
    A None result is evidence, not proof."""
    rng = np.random.default_rng(seed)
    a = check_symmetric(a)
    # Project random draws onto the joint kernel of the lower powers before
    # certifying, otherwise random vectors never meet the 1e-10 residual bar.
    stack = np.vstack([hadamard_power(a, m) for m in range(k)]) if k else None
    basis = None
    if stack is not None:
        _, s, vt = np.linalg.svd(stack)
        cutoff = 1e-12 * max(1.0, s[0]) if s.size else 0.0
        null_rows = vt[np.sum(s > cutoff):]
        if null_rows.size == 0:
            return None
        basis = null_rows
    for _ in range(trials):
        beta = rng.standard_normal(a.shape[0])
        if basis is not None:
            beta = basis.T @ (basis @ beta)
        if np.linalg.norm(beta) < 1e-12:
            continue
        if nk_membership(a, beta, k):
            return beta
    return None


def _orthonormalize(vectors: Sequence[np.ndarray]) -> List[np.ndarray]:
    """Modified Gram-Schmidt with a second pass; drops dependent vectors."""
    basis: List[np.ndarray] = []
    for v in vectors:
        w = np.array(v, dtype=float)
        for _ in range(2):
            for u in basis:
                w -= (u @ w) * u
        nrm = np.linalg.norm(w)
        if nrm > 1e-12 * max(1.0, float(np.linalg.norm(v))):
            basis.append(w / nrm)
    return basis


def _project_perp(v: np.ndarray, basis: Sequence[np.ndarray]) -> np.ndarray:
    w = np.array(v, dtype=float)
    for _ in range(2):
        for u in basis:
            w -= (u @ w) * u
    return w


def _certified_record(a: np.ndarray, beta: np.ndarray, k: int) -> WitnessRecord:
    resid, margin = nk_residuals(a, beta, k)
    nrm2 = float(beta @ beta)
    if not (nrm2 > 0 and resid <= KERNEL_TOL and margin > POSITIVITY_TOL):
        raise WitnessError(
            f"order-{k} witness failed certification "
            f"(residual {resid:.3e}, margin {margin:.3e})"
        )
    return WitnessRecord(k, tuple(float(x) for x in beta), resid, margin)


def vandermonde_witnesses(alphas: Sequence[float]) -> WitnessSet:
    """Witnesses of every order 1..n-1 for the rank-one matrix A = aa^T built
    from distinct nonzero alphas.  beta_k is the component of the k-th power
    vector orthogonal to the lower ones; Vandermonde independence makes it
    nonzero and (beta . alpha^(k))^2 > 0."""
    al = np.asarray(alphas, dtype=float)
    n = al.size
    if np.any(al == 0.0) or np.unique(al).size != n:
        raise WitnessError("alphas must be distinct and nonzero")
    a = np.outer(al, al)
    records = []
    basis: List[np.ndarray] = [np.ones(n) / math.sqrt(n)]
    for k in range(1, n):
        pk = al ** k
        beta = _project_perp(pk, basis)
        beta /= np.linalg.norm(beta)
        records.append(_certified_record(a, beta, k))
        basis = _orthonormalize(basis + [pk])
    return WitnessSet(a, tuple(records))


def _star_power_vector(alphas: np.ndarray, k: int, n: int, idx: np.ndarray) -> np.ndarray:
    v = np.zeros(n)
    v[idx] = alphas ** k
    v[idx[0]] = alphas[0] ** k / 2.0
    return v


def star_witnesses(
    d: int,
    alphas: Sequence[float],
    ambient_n: int,
    max_order: Optional[int] = None,
    vertices: Optional[Sequence[int]] = None,
) -> WitnessSet:
    """Witnesses of orders 1..d for the hollow star matrix
    A = e_c a^T + a e_c^T built from d+1 distinct nonzero alphas.

    The quadratic form of each power of A is 2 beta_c (beta . a^(k)), where
    a^(k) carries the halved center coordinate alphas[0]^k / 2 so that the
    single diagonal entry is absorbed.  For 0 < k < d the witness is the angle
    bisector of the projections of a^(k) and e_c onto the complement of the
    span of the lower power vectors; for k = d it spans the one-dimensional
    complement of that span inside the full power-vector space, which needs
    alphas[0] to dominate the rest.

    vertices optionally places the star at [center, leaves...] coordinates of
    the ambient space (defaults to 0..d).
    """
    al = np.asarray(alphas, dtype=float)
    if d < 1 or al.size != d + 1:
        raise WitnessError(f"need d+1 = {d + 1} alphas, got {al.size}")
    if np.any(al == 0.0) or np.unique(al).size != d + 1:
        raise WitnessError("alphas must be distinct and nonzero")
    if ambient_n < d + 1:
        raise WitnessError("ambient dimension too small")
    idx = np.arange(d + 1) if vertices is None else np.asarray(vertices, dtype=int)
    if idx.size != d + 1 or np.unique(idx).size != d + 1 or idx.min() < 0 or idx.max() >= ambient_n:
        raise WitnessError("vertices must be d+1 distinct ambient indices")
    if max_order is None:
        max_order = d
    if not 1 <= max_order <= d:
        raise WitnessError("max_order must be between 1 and d")

    e_c = np.zeros(ambient_n)
    e_c[idx[0]] = 1.0
    a1 = _star_power_vector(al, 1, ambient_n, idx)
    a = np.outer(e_c, a1) + np.outer(a1, e_c)

    records = []
    power = [_star_power_vector(al, k, ambient_n, idx) for k in range(d + 1)]
    basis: List[np.ndarray] = []
    for k in range(1, max_order + 1):
        basis = _orthonormalize(power[:k])
        if k < d:
            pa = _project_perp(power[k], basis)
            pe = _project_perp(e_c, basis)
            beta = pa / np.linalg.norm(pa) + pe / np.linalg.norm(pe)
        else:
            # span of power[0..d] has one more dimension than span(power[0..d-1])
            beta = _project_perp(power[d], basis)
            beta /= np.linalg.norm(beta)
        try:
            records.append(_certified_record(a, beta, k))
        except WitnessError as exc:
            if k == d and al[0] <= al[1:].max():
                raise WitnessError(
                    "top-order witness needs the center alpha to exceed the "
                    "leaf alphas (certification failed at the final step)"
                ) from exc
            raise
    return WitnessSet(a, tuple(records))


@dataclass(frozen=True)
class KBoundReport:
    lower: int
    upper: int
    witness_sets: Tuple[WitnessSet, ...]


def k_lower_bound(g: Graph) -> KBoundReport:
    """max(2, max degree) with certifying witnesses, plus the (strict) upper
    bound |V| + |E| on the largest achievable witness order over matrices
    patterned on g."""
    if not g.edges:
        raise GraphError("graph has no edges")
    n = g.n
    sets = []
    # An edge alone supports orders 1 and 2: diag (1, 2), off-diagonal entry
    # (a+b)/(2(3-j)) for j = 1, 2, witness (1, -1).
    u, v = min(g.edges)
    for j, off in ((1, 0.75), (2, 1.5)):
        a = np.zeros((n, n))
        a[u, u], a[v, v] = 1.0, 2.0
        a[u, v] = a[v, u] = off
        beta = np.zeros(n)
        beta[u], beta[v] = 1.0, -1.0
        sets.append(WitnessSet(a, (_certified_record(a, beta, j),)))
    delta = max_degree(g)
    if delta >= 2:
        center = max(range(n), key=lambda w: sum(1 for e in g.edges if w in e))
        leaves = sorted(w for e in g.edges if center in e for w in e if w != center)
        al = [2.0 * delta + 1.0] + [float(i) for i in range(1, delta + 1)]
        sets.append(
            star_witnesses(delta, al, n, vertices=[center] + leaves)
        )
    return KBoundReport(max(2, delta), n + len(g.edges), tuple(sets))


def pattern_psd_check(a: np.ndarray) -> bool:
    """True iff the support matrix of A is a direct sum of an identity block
    and a zero block (up to permutation): every row is all-zero or exactly the
    standard basis vector.  Such supports are exactly the PSD ones among
    diagonal-dominant-free 0/1 patterns; the structural verdict is cross-checked
    against the spectral oracle."""
    a = check_symmetric(a)
    s = hadamard_power(a, 0)
    ok = True
    for i in range(s.shape[0]):
        row = s[i].copy()
        diag = row[i]
        row[i] = 0.0
        if np.any(row != 0.0) or diag not in (0.0, 1.0):
            ok = False
            break
    if ok:
        assert is_psd(s).is_psd
    return ok


def star_kernel_stability(s: StarMatrix, m_max: int, tol: float = 1e-9) -> bool:
    """For a PSD star matrix, every vector in ker Q_A intersected with
    ker Q_{A^(2)} also kills Q_{A^(m)} for all higher m; verified numerically
    for m = 3..m_max on an SVD null-space basis of the stacked powers."""
    if not star_psd_check(s).is_psd:
        raise MatrixError("kernel stability is only claimed for PSD stars")
    a = s.to_dense()
    stack = np.vstack([a, hadamard_power(a, 2)])
    _, sv, vt = np.linalg.svd(stack)
    cutoff = 1e-10 * max(1.0, sv[0] if sv.size else 0.0)
    null_rows = vt[np.sum(sv > cutoff):]
    for beta in null_rows:
        for m in range(3, m_max + 1):
            am = hadamard_power(a, m)
            scale = max(1.0, float(np.linalg.norm(am)))
            if abs(quadratic_form(am, beta)) > tol * scale:
                return False
    return True


def _neville_at_zero(ts: np.ndarray, gs: np.ndarray) -> float:
    vals = list(gs)
    n = len(vals)
    for span in range(1, n):
        for i in range(n - span):
            t_lo, t_hi = ts[i], ts[i + span]
            vals[i] = (t_lo * vals[i + 1] - t_hi * vals[i]) / (t_lo - t_hi)
    return float(vals[0])


def derivative_sign_estimate(
    f: EntrywiseFunction,
    a: float,
    k: int,
    witness: Tuple[np.ndarray, np.ndarray],
    t_steps: Sequence[float],
) -> Tuple[float, float]:
    """(extrapolated limit, analytic value) for the order-k derivative
    diagnostic at base point a.

    With beta an order-k witness for A, the scaled form
    g(t) = beta^T f[a S + t A] beta * k! / t^k  (S the support of A, f applied
    on the support only) tends to f^(k)(a) * Q_{A^(k)}(beta) as t -> 0+.  The
    limit is estimated by polynomial extrapolation through the sampled t's, so
    a negative k-th derivative at a shows up as a negative limit.
    """
    mat, beta = witness
    mat = check_symmetric(mat)
    beta = np.asarray(beta, dtype=float)
    if a <= 0:
        raise DomainError("base point must be positive")
    if k < 1:
        raise WitnessError("order must be at least 1")
    ts = np.asarray(sorted(t_steps, reverse=True), dtype=float)
    if ts.size < 2 or ts[-1] <= 0:
        raise WitnessError("need at least two positive step sizes")
    if not nk_membership(mat, beta, k):
        raise WitnessError("witness failed certification for the given order")
    support = hadamard_power(mat, 0)
    mask = support != 0.0
    lo, hi = float(np.min(mat[mask])), float(np.max(mat[mask]))
    for t in ts:
        for x in (a + t * lo, a + t * hi):
            if not 0.0 <= x < f.domain_max:
                raise DomainError(f"step {t} leaves the function domain at {x}")
    gs = []
    for t in ts:
        m = a * support + t * mat
        fm = np.zeros_like(m)
        fm[mask] = f.value(m[mask])
        gs.append(quadratic_form(fm, beta) * math.factorial(k) / t ** k)
    limit = _neville_at_zero(ts, np.asarray(gs))
    analytic = f.deriv(a, k) * quadratic_form(hadamard_power(mat, k), beta)
    return limit, analytic
