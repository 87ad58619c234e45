import math

import mpmath
import numpy as np
import pytest

from targetzone import DomainError, kummer_1f1, sinh_over_cosh_scaled, tanh_ratio

mpmath.mp.dps = 50


def mp_1f1(a, b, x):
    return float(mpmath.hyp1f1(mpmath.mpf(a), mpmath.mpf(b), mpmath.mpf(x)))


def test_1f1_at_zero_is_one():
    for a, b in [(0.5, 1.5), (-3.2, 0.7), (10.0, 2.0)]:
        assert kummer_1f1(a, b, 0.0) == 1.0


def test_1f1_exponential_identity():
    for x in np.linspace(-10.0, 10.0, 41):
        assert kummer_1f1(1.0, 1.0, float(x)) == pytest.approx(math.exp(x), rel=1e-12)


def test_1f1_against_high_precision_series():
    assert kummer_1f1(0.5, 1.5, 1.0) == pytest.approx(mp_1f1(0.5, 1.5, 1.0), rel=1e-12)


def series_amplification(a, b, x):
    """Conditioning of the summed series: peak |term| over |sum|, at 50 digits."""
    if x < 0.0:
        a, x = b - a, -x
    term = mpmath.mpf(1)
    total = mpmath.mpf(1)
    peak = mpmath.mpf(1)
    for n in range(10_000):
        term = term * (a + n) / (b + n) * x / (n + 1)
        total += term
        peak = max(peak, abs(term))
        if abs(term) < mpmath.mpf("1e-45") * abs(total):
            break
    return float(peak / abs(total))


def test_1f1_well_conditioned_region_to_1e10():
    # nonnegative effective parameters: no cancellation, full accuracy
    rng = np.random.default_rng(314)
    for _ in range(40):
        a = float(rng.uniform(0.0, 20.0))
        b = float(rng.uniform(0.3, 20.0))
        x = float(rng.uniform(0.0, 50.0))
        assert kummer_1f1(a, b, x) == pytest.approx(mp_1f1(a, b, x), rel=1e-10)


def test_1f1_full_box_condition_aware():
    # negative parameters make the leading terms alternate; fixed-precision
    # summation cannot beat eps times the cancellation amplification, so the
    # tolerance follows the conditioning (extended-precision eps ~ 5.4e-20)
    rng = np.random.default_rng(314)
    checked = 0
    while checked < 40:
        a = float(rng.uniform(-20.0, 20.0))
        b = float(rng.uniform(-20.0, 20.0))
        if b <= 0.0 and abs(b - round(b)) < 0.05:
            continue
        x = float(rng.uniform(-50.0, 50.0))
        ref = mp_1f1(a, b, x)
        if abs(ref) < 1e-280:
            continue
        tol = max(1e-10, 200.0 * 5.4e-20 * series_amplification(a, b, x))
        assert kummer_1f1(a, b, x) == pytest.approx(ref, rel=tol), (a, b, x)
        checked += 1


def test_1f1_rejects_nonpositive_integer_b():
    for b in (0.0, -1.0, -2.0, -17.0):
        with pytest.raises(DomainError):
            kummer_1f1(0.5, b, 1.0)


def test_1f1_contiguous_relation():
    # b*M(a,b,x) - b*M(a-1,b,x) - x*M(a,b+1,x) = 0
    rng = np.random.default_rng(2718)
    for _ in range(50):
        a = float(rng.uniform(-5.0, 5.0))
        b = float(rng.uniform(0.5, 8.0))
        x = float(rng.uniform(-20.0, 20.0))
        lhs = (
            b * kummer_1f1(a, b, x)
            - b * kummer_1f1(a - 1.0, b, x)
            - x * kummer_1f1(a, b + 1.0, x)
        )
        scale = max(1.0, abs(b * kummer_1f1(a, b, x)))
        assert abs(lhs) / scale < 1e-8


def test_tanh_ratio_basics():
    assert tanh_ratio(3.0, 0.0) == 0.0
    assert tanh_ratio(15.0, 0.1) == pytest.approx(math.tanh(1.5), abs=0)
    assert tanh_ratio(1000.0, 1.0) == 1.0


def test_tanh_ratio_odd_and_monotone():
    fs = np.linspace(-3.0, 3.0, 301)
    vals = tanh_ratio(2.5, fs)
    assert np.allclose(vals, -tanh_ratio(2.5, -fs), atol=0)
    assert np.all(np.diff(vals) > 0)


def test_sinh_over_cosh_at_zero():
    assert sinh_over_cosh_scaled(2.0, 1.0, 0.0) == 0.0


def test_sinh_over_cosh_reduces_to_tanh_when_rates_match():
    for f in (-2.0, -0.3, 0.5, 4.0):
        got = sinh_over_cosh_scaled(3.0, 3.0, f)
        assert got == pytest.approx(math.tanh(3.0 * f), rel=1e-14)


def test_sinh_over_cosh_large_arguments_against_oracle():
    for rho, beta, f in [(30.0, 20.0, 10.0), (30.0, 20.0, -10.0), (5.0, 50.0, 30.0)]:
        ref = float(mpmath.sinh(mpmath.mpf(rho) * f) / mpmath.cosh(mpmath.mpf(beta) * f))
        assert sinh_over_cosh_scaled(rho, beta, f) == pytest.approx(ref, rel=1e-13)


def test_sinh_over_cosh_overflow_is_reported():
    with pytest.raises(OverflowError):
        sinh_over_cosh_scaled(30.0, 20.0, 100.0)


def test_specfun_is_pure():
    args = (0.7, 1.9, 13.5)
    assert kummer_1f1(*args) == kummer_1f1(*args)
    assert sinh_over_cosh_scaled(3.0, 2.0, 1.5) == sinh_over_cosh_scaled(3.0, 2.0, 1.5)
