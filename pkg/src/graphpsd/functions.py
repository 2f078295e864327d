"""Finite power sums sum_i c_i x^{e_i} on [0, R) and the testable predicates
used on them: superadditivity, multiplicative midpoint convexity, absolute
monotonicity via forward differences, and the 2x2 preservation conditions.

Grid checks are falsification tools: "holds" means no violation was found at
the given resolution.  All inequality checks carry a 1e-12 relative slack so
rounding noise is not reported as a violation.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

DEFAULT_GRID_STEP = 1.0 / 64.0
DEFAULT_GRID_BOUND = 8.0
REL_SLACK = 1e-12


class FunctionError(ValueError):
    pass


class DomainError(FunctionError):
    pass


@dataclass(frozen=True)
class EntrywiseFunction:
    """sum of terms c * x^e with distinct exponents e >= 0, on [0, R).

    Uses the convention 0**0 = 1.  Exact k-th derivatives come from the
    falling-factorial rule on each term.
    """

    terms: Tuple[Tuple[float, float], ...]
    domain_max: float = math.inf  # R

    def __post_init__(self):
        cleaned = []
        for c, e in self.terms:
            c, e = float(c), float(e)
            if c == 0.0:
                continue
            if e < 0:
                raise FunctionError(f"exponent {e} must be nonnegative")
            cleaned.append((c, e))
        cleaned.sort(key=lambda t: t[1])
        for (_, e1), (_, e2) in zip(cleaned, cleaned[1:]):
            if e1 == e2:
                raise FunctionError(f"duplicate exponent {e1}")
        if self.domain_max <= 0:
            raise FunctionError("domain bound R must be positive")
        object.__setattr__(self, "terms", tuple(cleaned))

    def _check_domain(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x < 0) or np.any(x >= self.domain_max):
            raise DomainError(f"argument outside [0, {self.domain_max})")
        return x

    def value(self, x):
        """Vectorized evaluation; scalar in, scalar out."""
        x = self._check_domain(x)
        out = np.zeros_like(x, dtype=float)
        for c, e in self.terms:
            out += c * np.power(x, e)  # np.power(0., 0.) == 1.
        return float(out) if out.ndim == 0 else out

    def __call__(self, x):
        return self.value(x)

    def deriv(self, x, k: int):
        """Exact k-th derivative; k = 0 is plain evaluation."""
        if k < 0:
            raise FunctionError("derivative order must be nonnegative")
        if k == 0:
            return self.value(x)
        x = self._check_domain(x)
        at_zero = np.any(x == 0.0)
        out = np.zeros_like(x, dtype=float)
        for c, e in self.terms:
            falling = 1.0
            for j in range(k):
                falling *= e - j
            if falling == 0.0:
                continue
            if e - k < 0 and at_zero:
                raise DomainError(f"derivative of order {k} singular at 0 for exponent {e}")
            with np.errstate(divide="ignore"):
                out += c * falling * np.power(x, e - k)
        return float(out) if out.ndim == 0 else out

    def literal(self) -> str:
        return ", ".join(f"{c!r}*x^{e!r}" for c, e in self.terms)


_TERM_RE = re.compile(r"^\s*([+-]?[\d.eE+-]+)\s*\*\s*x\s*\^\s*([\d.]+)\s*$")


def parse_function(text: str, domain_max: float = math.inf) -> EntrywiseFunction:
    """Parse the CLI literal syntax: comma-separated "coef*x^exp" terms."""
    terms = []
    for chunk in text.split(","):
        if not chunk.strip():
            continue
        m = _TERM_RE.match(chunk)
        if not m:
            raise FunctionError(f"cannot parse term {chunk!r}")
        terms.append((float(m.group(1)), float(m.group(2))))
    if not terms:
        raise FunctionError("empty function literal")
    return EntrywiseFunction(tuple(terms), domain_max)


def power_function(exponent: float) -> EntrywiseFunction:
    return EntrywiseFunction(((1.0, float(exponent)),))


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Optional[tuple]
    margin: float


def _grid_cap(f: EntrywiseFunction, bound: float) -> float:
    if math.isinf(f.domain_max):
        return bound
    return min(bound, f.domain_max * (1.0 - 1e-12))


def check_superadditive(
    f: EntrywiseFunction,
    step: float = DEFAULT_GRID_STEP,
    bound: float = DEFAULT_GRID_BOUND,
) -> Verdict:
    """Scan f(x+y) - f(x) - f(y) over the grid {h, 2h, ...} with x + y <= bound.

    The witness, when present, is the lexicographically smallest violating
    pair (x, y)."""
    if step <= 0:
        raise FunctionError("grid step must be positive")
    cap = _grid_cap(f, bound)
    count = int(math.floor(cap / step))
    if count < 2:
        raise FunctionError("grid is empty for the given step and bound")
    vals = f.value(np.arange(count + 1) * step)
    margin = math.inf
    # x ascending, then y ascending: the first hit is the lexicographically
    # smallest violating pair
    for i in range(1, count // 2 + 1):
        js = np.arange(i, count - i + 1)
        if js.size == 0:
            continue
        lhs = vals[i + js] - vals[i] - vals[js]
        slack = -REL_SLACK * (1.0 + np.abs(vals[i + js]))
        margin = min(margin, float(np.min(lhs)))
        bad = np.nonzero(lhs < slack)[0]
        if bad.size:
            return Verdict(False, (i * step, float(js[bad[0]]) * step), margin)
    return Verdict(True, None, margin)


def check_mult_midpoint_convex(
    f: EntrywiseFunction,
    step: float = DEFAULT_GRID_STEP,
    bound: float = DEFAULT_GRID_BOUND,
) -> Verdict:
    """Grid check of f(sqrt(xy))^2 <= f(x) f(y) on {0, h, 2h, ...} up to bound."""
    if step <= 0:
        raise FunctionError("grid step must be positive")
    cap = _grid_cap(f, bound)
    count = int(math.floor(cap / step))
    if count < 1:
        raise FunctionError("grid is empty for the given step and bound")
    xs = np.arange(count + 1) * step
    vals = f.value(xs)
    margin = math.inf
    for i in range(count + 1):
        ys = xs[i:]
        mids = f.value(np.sqrt(xs[i] * ys))
        lhs = vals[i] * vals[i:] * (1.0 + REL_SLACK) - mids * mids
        margin = min(margin, float(np.min(lhs)))
        bad = np.nonzero(lhs < 0.0)[0]
        if bad.size:
            return Verdict(False, (float(xs[i]), float(ys[bad[0]])), margin)
    return Verdict(True, None, margin)


def psi(f: EntrywiseFunction, x: float) -> float:
    """Multiplicative-convexity indicator via the unordered-pair expansion:
    sum over exponent pairs e < e' of c c' (e - e')^2 x^{e + e' - 1}."""
    if x <= 0:
        raise FunctionError("psi is defined for x > 0")
    total = 0.0
    terms = f.terms
    for i in range(len(terms)):
        ci, ei = terms[i]
        for j in range(i + 1, len(terms)):
            cj, ej = terms[j]
            total += ci * cj * (ei - ej) ** 2 * x ** (ei + ej - 1.0)
    return total


def psi_direct(f: EntrywiseFunction, x: float) -> float:
    """x (f'' f - f'^2) + f f', the defining expression for the indicator."""
    if x <= 0:
        raise FunctionError("psi is defined for x > 0")
    v, d1, d2 = f.value(x), f.deriv(x, 1), f.deriv(x, 2)
    return x * (d2 * v - d1 * d1) + v * d1


def check_psi_nonnegative(
    f: EntrywiseFunction,
    step: float = DEFAULT_GRID_STEP,
    bound: float = DEFAULT_GRID_BOUND,
) -> Verdict:
    """Grid check of psi >= 0 on (0, bound], with relative slack."""
    cap = _grid_cap(f, bound)
    count = int(math.floor(cap / step))
    margin = math.inf
    for i in range(1, count + 1):
        x = i * step
        val = psi(f, x)
        scale = sum(
            abs(c1 * c2) * (e1 - e2) ** 2 * x ** (e1 + e2 - 1.0)
            for k1, (c1, e1) in enumerate(f.terms)
            for c2, e2 in f.terms[k1 + 1:]
        )
        margin = min(margin, val)
        if val < -REL_SLACK * (1.0 + scale):
            return Verdict(False, (x,), margin)
    return Verdict(True, None, margin)


def forward_difference(f: EntrywiseFunction, x: float, h: float, n: int) -> float:
    """n-th forward difference with step h at x."""
    if h <= 0:
        raise FunctionError("step must be positive")
    if x < 0 or x + n * h >= f.domain_max:
        raise DomainError("forward difference leaves the function domain")
    return float(
        sum((-1) ** i * math.comb(n, i) * f.value(x + (n - i) * h) for i in range(n + 1))
    )


def check_abs_monotonic(
    f: EntrywiseFunction,
    n_max: int,
    step: float = DEFAULT_GRID_STEP,
    bound: float = DEFAULT_GRID_BOUND,
) -> Verdict:
    """All forward differences of order 0..n_max nonnegative on the grid.

    Reports the first violating (n, x, h); scan is by ascending order, then
    ascending grid point, with h fixed at the grid step."""
    cap = _grid_cap(f, bound)
    count = int(math.floor(cap / step))
    vals = f.value(np.arange(count + 1) * step)
    margin = math.inf
    for n in range(n_max + 1):
        length = count + 1 - n
        if length <= 0:
            break
        diff = np.zeros(length)
        scale = np.zeros(length)
        for m in range(n + 1):
            coef = (-1) ** (n - m) * math.comb(n, m)
            window = vals[m : m + length]
            diff += coef * window
            scale += abs(coef) * np.abs(window)
        bad = np.nonzero(diff < -REL_SLACK * (1.0 + scale))[0]
        margin = min(margin, float(np.min(diff)))
        if bad.size:
            return Verdict(False, (n, float(bad[0] * step), step), margin)
    return Verdict(True, None, margin)


def check_vasudeva_2x2(
    f: EntrywiseFunction,
    step: float = DEFAULT_GRID_STEP,
    bound: float = DEFAULT_GRID_BOUND,
) -> Verdict:
    """2x2 preservation on [0, bound]: midpoint convexity plus monotone
    nonnegativity (the |f(x)| <= f(y) condition on a nonnegative interval)."""
    mc = check_mult_midpoint_convex(f, step, bound)
    if not mc.holds:
        return mc
    cap = _grid_cap(f, bound)
    xs = np.arange(int(math.floor(cap / step)) + 1) * step
    vals = f.value(xs)
    slack = REL_SLACK * (1.0 + np.abs(vals))
    if np.any(vals < -slack):
        i = int(np.nonzero(vals < -slack)[0][0])
        return Verdict(False, (float(xs[i]),), float(vals[i]))
    steps = vals[1:] - vals[:-1]
    bad = np.nonzero(steps < -REL_SLACK * (1.0 + np.abs(vals[1:])))[0]
    if bad.size:
        i = int(bad[0])
        return Verdict(False, (float(xs[i]), float(xs[i + 1])), float(steps[i]))
    return Verdict(True, None, min(mc.margin, float(np.min(steps)) if steps.size else math.inf))
