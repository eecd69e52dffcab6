"""Acceptance suite: one test per release criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v`` (add ``-s`` to see the PASS
lines inline).  Tolerances are fixed here and are not tuning knobs.
"""

import time

import numpy as np
import pytest

from boatshape import (
    BetaShape,
    BinomialData,
    BoatshapeSpec,
    EtaSet,
    GridSpec,
    beta_cdf,
    beta_quantile,
    boat_set,
    delta_rectangle_closed_form,
    grid_delta,
    grid_shadow,
    imprecision_delta,
    rectangle_set,
    segment_set,
    shadow,
    solve_posterior_touchpoints,
    solve_prior_upper_touchpoint,
    terminal_slopes,
    agreement_thresholds,
    updated,
)
from conftest import random_boat_spec

SMALL_BOAT = BoatshapeSpec(eta0_lo=1.0, eta0_hi=6.0, a=1.5, b=0.9)
LONG_BOAT = BoatshapeSpec(eta0_lo=-1.0, eta0_hi=20.0, a=1.0, b=0.4)


def _ok(label: str) -> None:
    print(f"ACCEPTANCE {label}: PASS")


def matched_rectangle(spec: BoatshapeSpec) -> "EtaSet":
    """Rectangle with the boat's prior mean range and abscissa extent."""
    prior = shadow(EtaSet(spec))
    return rectangle_set(spec.eta0_lo + 2.0, spec.eta0_hi + 2.0, prior.y_lo, prior.y_hi)


def test_01_segment_invariance():
    seg = segment_set(2.0, 0.4, 0.6)
    deltas = [imprecision_delta(seg, BinomialData(10.0, float(s))) for s in range(11)]
    for d in deltas:
        assert abs(d - deltas[0]) <= 1e-12
        assert abs(d - 1.0 / 30.0) <= 1e-12
    _ok("1 segment invariance")


def test_02_rectangle_closed_form_vs_grid():
    rng = np.random.default_rng(101)
    start = time.monotonic()
    for _ in range(100):
        n_lo = rng.uniform(0.2, 5.0)
        n_hi = n_lo + rng.uniform(0.0, 10.0)
        y_lo = rng.uniform(0.05, 0.85)
        y_hi = rng.uniform(y_lo, 0.95)
        n = rng.uniform(0.5, 30.0)
        s = rng.uniform(0.0, n)
        rect = rectangle_set(n_lo, n_hi, y_lo, y_hi)
        d = BinomialData(n, s)
        analytic = delta_rectangle_closed_form(rect.spec, d)
        oracle = grid_delta(rect, d, GridSpec(resolution=2000))
        assert abs(analytic - oracle) <= 1e-3
    elapsed = time.monotonic() - start
    assert elapsed < 90.0
    _ok(f"2 rectangle closed form vs grid ({elapsed:.1f}s)")


def test_03_strong_agreement_touchpoint_shift():
    rng = np.random.default_rng(102)
    effective = 0
    for _ in range(100):
        spec = random_boat_spec(rng)
        n = rng.uniform(1e-3, 20.0)
        prior_tp = solve_prior_upper_touchpoint(spec)
        _, post_tp = solve_posterior_touchpoints(spec, BinomialData(n, n / 2.0))
        prior_clamped = prior_tp >= spec.eta0_hi
        post_clamped = post_tp >= spec.eta0_hi + n
        if prior_clamped or post_clamped:
            continue
        assert post_tp > prior_tp + n
        effective += 1
    assert effective >= 50  # the property must not pass vacuously
    _ok(f"3 strong-agreement touchpoint shift ({effective}/100 unclamped)")


def test_04_small_boat_prior_interior():
    tp = solve_prior_upper_touchpoint(SMALL_BOAT)
    assert SMALL_BOAT.eta0_lo < tp < SMALL_BOAT.eta0_hi
    _ok("4a prior touchpoints strictly interior")


@pytest.mark.parametrize("n", [2.0, 4.0])
def test_04_small_boat_posterior_clamping(n):
    tp_lo, _ = solve_posterior_touchpoints(SMALL_BOAT, BinomialData(n, n))
    assert tp_lo == SMALL_BOAT.eta0_hi + n
    _ok(f"4b lower touchpoint clamped at stern for s = n = {n:g}")


@pytest.mark.parametrize("n", [2.0, 4.0])
def test_04_small_boat_balanced_interior(n):
    tp_lo, tp_hi = solve_posterior_touchpoints(SMALL_BOAT, BinomialData(n, n / 2.0))
    assert SMALL_BOAT.eta0_lo + n < tp_lo < SMALL_BOAT.eta0_hi + n
    assert SMALL_BOAT.eta0_lo + n < tp_hi < SMALL_BOAT.eta0_hi + n
    _ok(f"4c both touchpoints interior for s = n/2, n = {n:g}")


def test_05_happy_learning_window():
    th = agreement_thresholds(LONG_BOAT, 10.0)
    t = min(th.s_u, th.s_l)
    happy = (10.0 - t, t)
    assert abs(happy[0] - 4.0) <= 0.5
    assert abs(happy[1] - 6.0) <= 0.5
    _ok(f"5 happy window [{happy[0]:.3f}, {happy[1]:.3f}] within [4, 6] +- 0.5")


def test_06_imprecision_ratio_about_half():
    boat = EtaSet(LONG_BOAT)
    rect = matched_rectangle(LONG_BOAT)
    d = BinomialData(10.0, 5.0)
    ratio = imprecision_delta(boat, d) / imprecision_delta(rect, d)
    assert 0.4 <= ratio <= 0.6
    _ok(f"6 imprecision ratio {ratio:.4f} in [0.4, 0.6]")


def test_07_boatshape_dominance():
    boat = EtaSet(SMALL_BOAT)
    rect = matched_rectangle(SMALL_BOAT)
    for n in (2, 4):
        for s in range(n + 1):
            d = BinomialData(float(n), float(s))
            assert imprecision_delta(boat, d) <= imprecision_delta(rect, d) + 1e-9
    _ok("7 boat never wider than matched rectangle")


def test_08_terminal_slopes():
    n = 10.0
    th = agreement_thresholds(LONG_BOAT, n)
    start = max(th.s_u, th.s_l) + 0.05
    up, low = terminal_slopes(LONG_BOAT, n)
    base = EtaSet(LONG_BOAT)
    step = 0.1
    for s in np.arange(start, n - step + 1e-9, step):
        r1 = shadow(updated(base, BinomialData(n, float(s))))
        r2 = shadow(updated(base, BinomialData(n, float(s) + step)))
        assert abs((r2.y_hi - r1.y_hi) / step - up) <= 1e-6
        assert abs((r2.y_lo - r1.y_lo) / step - low) <= 1e-6
    _ok(f"8 terminal slopes match 1/{LONG_BOAT.eta0_lo + n + 2:g} and 1/{LONG_BOAT.eta0_hi + n + 2:g}")


def test_09_oracle_convergence():
    boat = EtaSet(LONG_BOAT)
    ref = shadow(boat)
    errs = []
    for res in (250, 500, 1000, 2000):
        lo, hi = grid_shadow(boat, GridSpec(resolution=res))
        errs.append(max(abs(lo - ref.y_lo), abs(hi - ref.y_hi)))
    for coarse, fine in zip(errs, errs[1:]):
        assert fine <= 1.5 * coarse
    assert errs[-1] < errs[0]
    _ok("9 oracle disagreement shrinks under refinement: " + ", ".join(f"{e:.2e}" for e in errs))


def test_10_special_functions():
    worst_rt = 0.0
    for a in (0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0):
        for b in (0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0):
            shape = BetaShape(a, b)
            for q in (0.01, 0.25, 0.5, 0.75, 0.99):
                p = beta_quantile(shape, q)
                worst_rt = max(worst_rt, abs(beta_cdf(shape, p) - q))
    assert worst_rt <= 1e-9
    rng = np.random.default_rng(103)
    worst_refl = 0.0
    for _ in range(500):
        a = rng.uniform(0.5, 50.0)
        b = rng.uniform(0.5, 50.0)
        p = rng.uniform(0.0, 1.0)
        lhs = beta_cdf(BetaShape(a, b), p)
        rhs = 1.0 - beta_cdf(BetaShape(b, a), 1.0 - p)
        worst_refl = max(worst_refl, abs(lhs - rhs))
    assert worst_refl <= 1e-12
    _ok(f"10 special functions (round trip {worst_rt:.1e}, reflection {worst_refl:.1e})")


def test_11_skewed_boat_lower_bounds_coincide():
    boat = boat_set(
        LONG_BOAT.eta0_lo, LONG_BOAT.eta0_hi, LONG_BOAT.a, LONG_BOAT.b, y_c=0.75
    )
    prior = shadow(boat)
    comparisons = [
        rectangle_set(LONG_BOAT.eta0_lo + 2.0, LONG_BOAT.eta0_hi + 2.0, prior.y_lo, prior.y_hi),
        segment_set(1.0, prior.y_lo, prior.y_hi),
        segment_set(2.0, prior.y_lo, prior.y_hi),
    ]
    n = 10.0
    worst = 0.0
    for s in np.arange(0.0, 5.0, 0.5):
        d = BinomialData(n, float(s))
        lows = [shadow(updated(boat, d)).y_lo]
        lows += [shadow(updated(comp, d)).y_lo for comp in comparisons]
        worst = max(worst, max(lows) - min(lows))
    assert worst < 0.05
    _ok(f"11 lower bounds coincide for weak data (max spread {worst:.4f})")
