import dataclasses
import math

import numpy as np
import pytest

from targetzone import (
    DomainError,
    ModelParams,
    build_spectrum,
    build_transient,
    eval_full,
    eval_stationary,
    eval_transient,
    fourier_coeffs,
    solve_smooth_pasting,
    surface,
    uniform_grid,
)
from targetzone.quadrature import adaptive_gauss_legendre

REF = ModelParams(alpha=0.8, beta=1.0, sigma=1.0, f_bar=0.1, horizon_T=3.0)


def truncate(ts, K):
    """Partial-sum view of a transient solution (coefficients are nested)."""
    spec = dataclasses.replace(
        ts.spectrum,
        eigenvalues=ts.spectrum.eigenvalues[:K],
        brackets=ts.spectrum.brackets[:K],
    )
    return dataclasses.replace(ts, spectrum=spec, coeffs=ts.coeffs[:K], truncation_K=K)


def test_modes_coincide_at_beta_zero():
    p = ModelParams(alpha=0.8, beta=0.0, sigma=1.0, f_bar=0.1, horizon_T=3.0)
    spec = build_spectrum(p, 25)
    sol = solve_smooth_pasting(p)
    plain = fourier_coeffs(sol, spec, "plain_sine")
    exact = fourier_coeffs(sol, spec, "exact_projection")
    assert np.abs(plain - exact).max() < 1e-12


def test_coefficients_decay():
    ts = build_transient(REF, K=50)
    assert abs(ts.coeffs[49]) < abs(ts.coeffs[4])


def test_transient_vanishes_at_parity_line():
    ts = build_transient(REF, K=30)
    for t in (0.0, 1.0, 3.0):
        assert eval_transient(ts, t, 0.0) == 0.0


def test_terminal_parity_exact_projection():
    fg = np.linspace(-0.1, 0.1, 401)
    for beta in (0.0, 1.0, 5.0):
        p = ModelParams(alpha=0.8, beta=beta, sigma=1.0, f_bar=0.1, horizon_T=3.0)
        ts = build_transient(p, K=200)
        recon = eval_transient(ts, p.horizon_T, fg)
        target = -eval_stationary(ts.stationary, fg)
        assert np.abs(recon - target).max() < 1e-4
        assert np.abs(eval_full(ts, p.horizon_T, fg)).max() < 1e-4


def test_terminal_error_decreases_with_truncation_doubling():
    fg = np.linspace(-0.1, 0.1, 401)
    ts = build_transient(REF, K=200)
    errors = []
    for K in (25, 50, 100, 200):
        sub = truncate(ts, K)
        errors.append(np.abs(eval_full(sub, REF.horizon_T, fg)).max())
    assert all(b < a for a, b in zip(errors, errors[1:]))


def test_initial_time_matches_stationary_within_tail_bound():
    ts = build_transient(REF, K=50)
    fg = np.linspace(-0.1, 0.1, 101)
    rate1 = ts.decay_rates()[0]
    bound = np.sum(np.abs(ts.coeffs)) * math.exp(-rate1 * REF.horizon_T)
    gap = np.abs(eval_full(ts, 0.0, fg) - eval_stationary(ts.stationary, fg)).max()
    assert gap <= bound + 1e-15


def test_exponential_tail_slope():
    ts = build_transient(REF, K=50)
    rates = ts.decay_rates()
    f0 = 0.05
    tau_lo = 5.0 / rates[1]
    taus = np.linspace(tau_lo, 2.5 * tau_lo, 12)
    vals = np.array([abs(eval_transient(ts, REF.horizon_T - tau, f0)) for tau in taus])
    slope = np.polyfit(taus, np.log(vals), 1)[0]
    assert slope == pytest.approx(-rates[0], rel=0.02)


def test_mode_orthogonality_under_quadrature():
    p = ModelParams(alpha=0.8, beta=5.0, sigma=1.0, f_bar=0.1)
    spec = build_spectrum(p, 8)
    us = math.sqrt(2.0) * spec.eigenvalues * p.f_bar / p.sigma
    for j in range(8):
        for k in range(j + 1, 8):
            val = adaptive_gauss_legendre(
                lambda f: np.sin(us[j] * f / p.f_bar) * np.sin(us[k] * f / p.f_bar),
                -p.f_bar,
                p.f_bar,
                tol=1e-13,
                initial_panels=8,
            )
            assert abs(val) < 1e-10


def test_plain_sine_mode_misses_terminal_parity_at_positive_beta():
    p = ModelParams(alpha=0.8, beta=5.0, sigma=1.0, f_bar=0.1, horizon_T=3.0)
    fg = np.linspace(-0.1, 0.1, 201)
    exact = build_transient(p, K=100, mode="exact_projection")
    plain = build_transient(p, K=100, mode="plain_sine")
    err_exact = np.abs(eval_full(exact, 3.0, fg)).max()
    err_literal = np.abs(eval_full(plain, 3.0, fg)).max()
    assert err_exact < 0.1 * err_literal


def test_surface_rows():
    ts = build_transient(REF, K=100)
    fg = uniform_grid(REF, 51)
    t_grid = np.linspace(0.0, REF.horizon_T, 7)
    mat = surface(ts, t_grid, fg)
    assert mat.shape == (7, 51)
    base = eval_stationary(ts.stationary, fg.points)
    tail = np.sum(np.abs(ts.coeffs)) * math.exp(-ts.decay_rates()[0] * REF.horizon_T)
    assert np.abs(mat[0] - base).max() <= tail + 1e-15
    assert np.abs(mat[-1]).max() < 1e-3


def test_surfaces_differ_most_near_band_for_riskier_dynamics():
    fg = uniform_grid(REF, 101)
    t_grid = np.array([0.0])
    mats = {}
    for beta in (0.0, 5.0):
        p = ModelParams(alpha=0.8, beta=beta, sigma=1.0, f_bar=0.1, horizon_T=3.0)
        mats[beta] = surface(build_transient(p, K=50), t_grid, fg)[0]
    gap = np.abs(mats[0.0] - mats[5.0])
    inner = np.abs(fg.points) < 0.05
    outer = np.abs(fg.points) > 0.08
    assert gap[outer].max() > gap[inner].max()


def test_domain_checks():
    ts = build_transient(REF, K=10)
    with pytest.raises(DomainError):
        eval_transient(ts, -0.1, 0.0)
    with pytest.raises(DomainError):
        eval_transient(ts, 4.0, 0.0)
    with pytest.raises(DomainError):
        eval_transient(ts, 1.0, 0.2)
    other = ModelParams(alpha=0.9, beta=1.0, sigma=1.0, f_bar=0.1)
    with pytest.raises(DomainError):
        fourier_coeffs(solve_smooth_pasting(REF), build_spectrum(other, 5))
    with pytest.raises(DomainError):
        build_transient(REF, K=5, mode="no_such_mode")
