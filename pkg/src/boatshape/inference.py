"""Posterior quantities over parameter sets: expectation bounds, imprecision,
Beta special functions, and unions of central credibility intervals.

The imprecision ``delta`` of a set is the width of its posterior-mean
interval.  For a fixed-strength segment it reduces to
``n0 * (y_hi - y_lo) / (n0 + n)``, independent of the observed successes; for
a canonical rectangle it has a two-term closed form whose second term switches
on exactly when the observed fraction leaves the prior mean range.

The regularized incomplete beta function is evaluated by the classical
continued fraction (modified Lentz), switching to the complementary call at
``x = (alpha + 1) / (alpha + beta + 2)``; quantiles invert the CDF with a
bracketed Newton iteration.  Both accept arrays so that whole boundary scans
can be pushed through at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, NumericError
from .params import BinomialData, CanonicalParams
from .shapes import EtaSet, RectangleSpec, _contains_mask, _scan_xy, updated
from .touchpoint import shadow

_CF_MAX_ITER = 300
_CF_EPS = 1e-15
_CF_TINY = 1e-300
_QUANTILE_TOL = 1e-12
_QUANTILE_MAX_ITER = 200
#: Interior fallback grid for credibility extrema (quantiles are not ratios of
#: affine functions, so boundary extremality is not guaranteed).
_INTERIOR_GRID = 128


@dataclass(frozen=True)
class BetaShape:
    """A Beta distribution by its shape parameters ``alpha, beta > 0``."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if not self.alpha > 0.0:
            raise InvalidParameterError(f"shape violates alpha > 0: got {self.alpha}")
        if not self.beta > 0.0:
            raise InvalidParameterError(f"shape violates beta > 0: got {self.beta}")

    @classmethod
    def from_canonical(cls, c: CanonicalParams) -> "BetaShape":
        """The Beta distribution with strength ``n0`` and mean ``y0``."""
        return cls(alpha=c.n0 * c.y0, beta=c.n0 * (1.0 - c.y0))


@dataclass(frozen=True)
class CredibilityUnion:
    """Union of central credibility intervals over a set of posteriors."""

    lo: float
    hi: float
    gamma: float

    def __post_init__(self) -> None:
        if not self.lo <= self.hi:
            raise InvalidParameterError(f"union violates lo <= hi: got [{self.lo}, {self.hi}]")


def _log_beta_fn(a, b):
    lgamma = np.frompyfunc(math.lgamma, 1, 1)
    return np.asarray(lgamma(a) + lgamma(b) - lgamma(a + b), dtype=float)


def _beta_cf(a: np.ndarray, b: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Continued fraction for the incomplete beta function, modified Lentz."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = np.ones_like(x)
    d = 1.0 - qab * x / qap
    d = np.where(np.abs(d) < _CF_TINY, _CF_TINY, d)
    d = 1.0 / d
    h = d.copy()
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _CF_TINY, _CF_TINY, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _CF_TINY, _CF_TINY, c)
        d = 1.0 / d
        h = h * d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _CF_TINY, _CF_TINY, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _CF_TINY, _CF_TINY, c)
        d = 1.0 / d
        delta = d * c
        h = h * delta
        if np.all(np.abs(delta - 1.0) < _CF_EPS):
            return h
    # Lanes stuck a few ulps from the fixed point are converged for all
    # practical purposes; only a genuine stall is an error.
    if np.max(np.abs(delta - 1.0)) <= 1e-12:
        return h
    raise NumericError("incomplete beta continued fraction did not converge")


def _betainc(a, b, x) -> np.ndarray:
    """Regularized incomplete beta, vectorized over broadcastable arrays."""
    a, b, x = np.broadcast_arrays(
        np.asarray(a, dtype=float), np.asarray(b, dtype=float), np.asarray(x, dtype=float)
    )
    shape = x.shape
    a, b, x = a.ravel(), b.ravel(), x.ravel()
    out = np.empty_like(x)
    at_lo = x <= 0.0
    at_hi = x >= 1.0
    out[at_lo] = 0.0
    out[at_hi] = 1.0
    mid = ~(at_lo | at_hi)
    if mid.any():
        am, bm, xm = a[mid], b[mid], x[mid]
        front = np.exp(
            am * np.log(xm) + bm * np.log1p(-xm) - _log_beta_fn(am, bm)
        )
        direct = xm < (am + 1.0) / (am + bm + 2.0)
        res = np.empty_like(xm)
        if direct.any():
            res[direct] = (
                front[direct]
                * _beta_cf(am[direct], bm[direct], xm[direct])
                / am[direct]
            )
        flip = ~direct
        if flip.any():
            res[flip] = 1.0 - front[flip] * _beta_cf(
                bm[flip], am[flip], 1.0 - xm[flip]
            ) / bm[flip]
        out[mid] = res
    return out.reshape(shape)


def _quantile_vec(a, b, q) -> np.ndarray:
    """Quantiles by bracketed Newton on the CDF, vectorized."""
    a, b, q = np.broadcast_arrays(
        np.asarray(a, dtype=float), np.asarray(b, dtype=float), np.asarray(q, dtype=float)
    )
    shape = q.shape
    a, b, q = a.ravel(), b.ravel(), q.ravel()
    if np.any((q <= 0.0) | (q >= 1.0)):
        raise InvalidParameterError("quantile level must lie strictly inside (0, 1)")
    log_norm = _log_beta_fn(a, b)
    lo = np.zeros_like(q)
    hi = np.ones_like(q)
    x = np.clip(a / (a + b), 1e-12, 1.0 - 1e-12)
    resid = _betainc(a, b, x) - q
    for _ in range(_QUANTILE_MAX_ITER):
        below = resid < 0.0
        lo = np.where(below, x, lo)
        hi = np.where(below, hi, x)
        if np.all(np.abs(resid) <= _QUANTILE_TOL):
            break
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            log_pdf = (a - 1.0) * np.log(x) + (b - 1.0) * np.log1p(-x) - log_norm
            step = resid * np.exp(-log_pdf)
            x_new = x - step
        usable = np.isfinite(x_new) & (x_new > lo) & (x_new < hi)
        x = np.where(usable, x_new, 0.5 * (lo + hi))
        resid = _betainc(a, b, x) - q
    if not np.all(np.abs(resid) <= 1e-9):
        raise NumericError("beta quantile iteration did not reach 1e-9 residual")
    return x.reshape(shape)


def beta_log_pdf(shape: BetaShape, p: float) -> float:
    """Log density of the Beta distribution at ``p`` in the open unit interval."""
    if not 0.0 < p < 1.0:
        raise InvalidParameterError(f"density argument violates 0 < p < 1: got {p}")
    log_norm = (
        math.lgamma(shape.alpha) + math.lgamma(shape.beta)
        - math.lgamma(shape.alpha + shape.beta)
    )
    return (shape.alpha - 1.0) * math.log(p) + (shape.beta - 1.0) * math.log1p(-p) - log_norm


def beta_cdf(shape: BetaShape, p: float) -> float:
    """Regularized incomplete beta function at ``p`` in ``[0, 1]``."""
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"CDF argument violates 0 <= p <= 1: got {p}")
    return float(_betainc(shape.alpha, shape.beta, p))


def beta_quantile(shape: BetaShape, q: float) -> float:
    """Inverse of :func:`beta_cdf`: the ``p`` with ``cdf(p) = q``, to 1e-9."""
    return float(_quantile_vec(shape.alpha, shape.beta, q))


def posterior_expectation_bounds(
    set_: EtaSet, d: BinomialData
) -> tuple[float, float]:
    """Lower and upper posterior mean over the set after observing ``d``."""
    result = shadow(updated(set_, d))
    return result.y_lo, result.y_hi


def imprecision_delta(set_: EtaSet, d: BinomialData) -> float:
    """Width of the posterior-mean interval after observing ``d``."""
    y_lo, y_hi = posterior_expectation_bounds(set_, d)
    return y_hi - y_lo


def delta_rectangle_closed_form(rect: RectangleSpec, d: BinomialData) -> float:
    """Closed-form posterior imprecision of a canonical rectangle.

    Two terms: the shrinking prior range, plus a conflict term proportional to
    the distance of ``s/n`` from the prior mean range.  Requires ``n > 0``.
    """
    if not d.n > 0.0:
        raise InvalidParameterError("closed form needs n > 0; use the prior width for n = 0")
    frac = d.s / d.n
    dist = max(0.0, rect.y_lo - frac, frac - rect.y_hi)
    shrink = rect.n_hi * (rect.y_hi - rect.y_lo) / (rect.n_hi + d.n)
    conflict = dist * d.n * (rect.n_hi - rect.n_lo) / ((rect.n_lo + d.n) * (rect.n_hi + d.n))
    return shrink + conflict


def _member_points(set_: EtaSet) -> tuple[np.ndarray, np.ndarray]:
    """Boundary scan plus interior-grid members of a set, in the shifted frame."""
    _, bx, by = _scan_xy(set_)
    xs = np.linspace(bx.min(), bx.max(), _INTERIOR_GRID)
    ys = np.linspace(by.min(), by.max(), _INTERIOR_GRID)
    gx, gy = np.meshgrid(xs, ys)
    gx = gx.ravel()
    gy = gy.ravel()
    keep = _contains_mask(set_, gx, gy)
    return np.concatenate([bx, gx[keep]]), np.concatenate([by, gy[keep]])


def credibility_union(set_: EtaSet, d: BinomialData, gamma: float) -> CredibilityUnion:
    """Union of central ``gamma`` credibility intervals over the posterior set.

    Every set element indexes a Beta posterior; the union stretches from the
    smallest lower endpoint to the largest upper endpoint over a boundary scan
    with an interior-grid fallback.
    """
    if not 0.0 < gamma < 1.0:
        raise InvalidParameterError(f"credibility level violates 0 < gamma < 1: got {gamma}")
    post = updated(set_, d)
    x, y = _member_points(post)
    n0 = x + 2.0
    mean = y / n0 + 0.5
    alpha = n0 * mean
    beta = n0 * (1.0 - mean)
    lo = float(np.min(_quantile_vec(alpha, beta, 0.5 * (1.0 - gamma))))
    hi = float(np.max(_quantile_vec(alpha, beta, 0.5 * (1.0 + gamma))))
    return CredibilityUnion(lo=lo, hi=hi, gamma=gamma)
