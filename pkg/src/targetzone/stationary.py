"""Closed-form stationary exchange-rate solutions with smooth pasting.

The stationary rate under the mean-preserving-spread drift is

    X_S(f) = [ A * e^{r f} + B * e^{-r f} + Y_P(f) ] / cosh(beta * f),

with r = sqrt(beta^2 + 2 alpha / sigma^2) and the particular part

    Y_P(f) = 2 alpha [ f (2 alpha + beta^2 (1 - sigma^2)) cosh(beta f)
                       + 2 beta sigma^2 sinh(beta f) ]
             / (2 alpha + beta^2 (1 - sigma^2))^2.

A and B are fixed by zero-slope (smooth-pasting) conditions at the band
edges; their closed forms are lengthy, so the 2x2 linear system is solved
directly with partial pivoting instead.  The Gaussian limit (beta = 0)
and the mean-reverting stationary solution built on the confluent
hypergeometric function live here as well.

Internally the homogeneous terms are carried in boundary-anchored form,
A~ e^{r (f - f_high)} and B~ e^{-r (f - f_low)}, whose exponents never
exceed zero on the band; combined with exp-difference hyperbolic ratios
this makes evaluation overflow-free at any stiffness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularSystemError
from .params import ModelParams, validate
from .specfun import kummer_1f1

__all__ = [
    "StationarySolution",
    "solve_smooth_pasting",
    "eval_stationary",
    "eval_stationary_derivatives",
    "gaussian_stationary",
    "ou_stationary",
    "stationary_ode_residual",
]


@dataclass(frozen=True)
class StationarySolution:
    """Smooth-pasted stationary solution and its evaluator context.

    ``kind`` selects the closed form: "dmps" (general beta >= 0),
    "gaussian" (beta = 0 limit in its own closed form), or "ou"
    (mean-reverting, carries lambda_speed and mu).  ``A`` and ``B`` are
    the raw constants multiplying e^{r f} and e^{-r f}; ``a_anchor`` and
    ``b_anchor`` are their boundary-anchored rescalings actually used in
    evaluation.
    """

    params: ModelParams
    A: float
    B: float
    kind: str = "dmps"
    lambda_speed: float | None = None
    mu: float | None = None
    f_low: float = 0.0
    f_high: float = 0.0
    a_anchor: float = 0.0
    b_anchor: float = 0.0


def _growth_rate(p: ModelParams) -> float:
    return math.sqrt(p.beta**2 + 2.0 * p.alpha / p.sigma**2)


def _forcing_scale(p: ModelParams) -> float:
    """D = 2 alpha + beta^2 (1 - sigma^2); squared in the particular part."""
    d = 2.0 * p.alpha + p.beta**2 * (1.0 - p.sigma**2)
    if abs(d) < 1e-12 * max(1.0, p.alpha, p.beta**2):
        raise DomainError(
            "degenerate parameters: 2*alpha + beta^2*(1 - sigma^2) ~ 0, "
            "the closed-form particular solution is resonant"
        )
    return d


def _sech2(beta: float, f):
    f = np.asarray(f, dtype=float)
    e = np.exp(-np.abs(beta * f))
    return (2.0 * e / (1.0 + e * e)) ** 2


def _particular(p: ModelParams, f):
    """Particular part of X_S (already divided by cosh(beta f))."""
    d = _forcing_scale(p)
    arr = np.asarray(f, dtype=float)
    return (2.0 * p.alpha / d**2) * (arr * d + 2.0 * p.beta * p.sigma**2 * np.tanh(p.beta * arr))


def _particular_d1(p: ModelParams, f):
    d = _forcing_scale(p)
    return (2.0 * p.alpha / d**2) * (d + 2.0 * p.beta**2 * p.sigma**2 * _sech2(p.beta, f))


def _particular_d2(p: ModelParams, f):
    d = _forcing_scale(p)
    t = np.tanh(p.beta * np.asarray(f, dtype=float))
    return -(8.0 * p.alpha * p.beta**3 * p.sigma**2 / d**2) * _sech2(p.beta, f) * t


def _anchored_terms(sol: StationarySolution, arr: np.ndarray):
    """The two homogeneous basis terms over cosh, anchor-scaled.

    Exponents are <= 0 everywhere on the band, so these never overflow.
    """
    p = sol.params
    r = _growth_rate(p)
    bf = np.abs(p.beta * arr)
    sech_gain = 2.0 / (1.0 + np.exp(-2.0 * bf))
    e_plus = sol.a_anchor * np.exp(r * (arr - sol.f_high) - bf) * sech_gain
    e_minus = sol.b_anchor * np.exp(-r * (arr - sol.f_low) - bf) * sech_gain
    return e_plus, e_minus, r


def solve_smooth_pasting(
    params: ModelParams, band: tuple[float, float] | None = None
) -> StationarySolution:
    """Stationary solution with zero slope at both band edges.

    ``band`` defaults to the symmetric (-f_bar, +f_bar); general bands are
    accepted since the edges enter only through the 2x2 system for (A, B).
    The system is assembled in boundary-anchored variables so its scale
    stays O(1), solved by elimination with partial pivoting, and raises
    :class:`SingularSystemError` below determinant 1e-14.
    """
    validate(params)
    f_lo, f_hi = band if band is not None else (-params.f_bar, params.f_bar)
    if not f_lo < f_hi:
        raise DomainError("band edges must satisfy f_low < f_high")
    r = _growth_rate(params)
    b = params.beta

    # Y-space slope conditions at each edge, unknowns anchored at the
    # opposite boundary: u(f) = At*e^{r(f-f_hi)} + Bt*e^{-r(f-f_lo)} + Y_P(f)
    rows = []
    rhs = []
    for f_star in (f_hi, f_lo):
        if abs(b * f_star) > 700.0:
            raise OverflowError("smooth-pasting amplitudes exceed the floating range")
        t = math.tanh(b * f_star)
        ch = math.cosh(b * f_star)
        rows.append(
            [
                (r - b * t) * math.exp(r * (f_star - f_hi)),
                (-r - b * t) * math.exp(-r * (f_star - f_lo)),
            ]
        )
        rhs.append(-ch * float(_particular_d1(params, f_star)))
    (m11, m12), (m21, m22) = rows
    det = m11 * m22 - m12 * m21
    scale = max(abs(m11), abs(m12), abs(m21), abs(m22), 1.0)
    if abs(det) < 1e-14 * scale * scale:
        raise SingularSystemError("smooth-pasting system is singular (degenerate band)")
    # 2x2 elimination with partial pivoting
    if abs(m11) >= abs(m21):
        fac = m21 / m11
        bt = (rhs[1] - fac * rhs[0]) / (m22 - fac * m12)
        at = (rhs[0] - m12 * bt) / m11
    else:
        fac = m11 / m21
        bt = (rhs[0] - fac * rhs[1]) / (m12 - fac * m22)
        at = (rhs[1] - m22 * bt) / m21
    # raw constants may under/overflow at extreme stiffness; evaluation
    # only ever uses the anchored pair
    A = at * math.exp(-min(r * f_hi, 700.0))
    B = bt * math.exp(max(min(r * f_lo, 700.0), -700.0))
    return StationarySolution(
        params=params,
        A=A,
        B=B,
        kind="dmps",
        f_low=f_lo,
        f_high=f_hi,
        a_anchor=at,
        b_anchor=bt,
    )


def gaussian_stationary(params: ModelParams) -> StationarySolution:
    """Closed-form Gaussian-limit solution X_0(f) = f + a sinh(rho0 f).

    Requires beta = 0; a = -1 / (rho0 cosh(rho0 f_bar)) pastes smoothly at
    the band edges by construction.  Independent of the general solver, so
    the two routes can be cross-checked.
    """
    validate(params)
    if params.beta != 0.0:
        raise DomainError("gaussian_stationary requires beta = 0")
    rho0 = math.sqrt(2.0 * params.alpha) / params.sigma
    a = -1.0 / (rho0 * math.cosh(min(rho0 * params.f_bar, 700.0)))
    return StationarySolution(
        params=params,
        A=a,
        B=0.0,
        kind="gaussian",
        f_low=-params.f_bar,
        f_high=params.f_bar,
    )


def ou_stationary(
    lambda_speed: float, mu: float, params: ModelParams
) -> StationarySolution:
    """Mean-reverting stationary solution via confluent hypergeometrics.

    X_S(f) = A 1F1[q, 1/2; z] + B (sqrt(lambda)/sigma)(f-mu)
             1F1[q + 1/2, 3/2; z] + [lambda mu (1-r) f + r alpha] /
             [lambda (1-r) + alpha],

    with z = lambda (f-mu)^2 / sigma^2 and q = alpha / (2 lambda (1-r)).
    A and B come from smooth pasting at the band edges; if mu = 0 the
    system decouples by parity and A = 0.
    """
    validate(params)
    if lambda_speed <= 0.0:
        raise DomainError("lambda_speed must be positive")
    f_lo, f_hi = -params.f_bar, params.f_bar
    rows = []
    rhs = []
    for f_star in (f_hi, f_lo):
        d1, d2 = _ou_basis_d1(lambda_speed, mu, params, f_star)
        rows.append([d1, d2])
        rhs.append(-_ou_particular_d1(lambda_speed, mu, params))
    (m11, m12), (m21, m22) = rows
    det = m11 * m22 - m12 * m21
    scale = max(abs(m11), abs(m12), abs(m21), abs(m22), 1.0)
    if abs(det) < 1e-14 * scale * scale:
        raise SingularSystemError("mean-reverting pasting system is singular")
    A = (rhs[0] * m22 - m12 * rhs[1]) / det
    B = (m11 * rhs[1] - rhs[0] * m21) / det
    return StationarySolution(
        params=params,
        A=A,
        B=B,
        kind="ou",
        lambda_speed=lambda_speed,
        mu=mu,
        f_low=f_lo,
        f_high=f_hi,
    )


def _ou_q(lambda_speed: float, params: ModelParams) -> float:
    return params.alpha / (2.0 * lambda_speed * (1.0 - params.r_share))


def _ou_z(lambda_speed: float, mu: float, params: ModelParams, f: float) -> float:
    return lambda_speed * (f - mu) ** 2 / params.sigma**2


def _ou_basis(lambda_speed, mu, params, f):
    q = _ou_q(lambda_speed, params)
    z = _ou_z(lambda_speed, mu, params, f)
    m1 = kummer_1f1(q, 0.5, z)
    m2 = math.sqrt(lambda_speed) / params.sigma * (f - mu) * kummer_1f1(q + 0.5, 1.5, z)
    return m1, m2


def _ou_basis_d1(lambda_speed, mu, params, f):
    q = _ou_q(lambda_speed, params)
    z = _ou_z(lambda_speed, mu, params, f)
    dz = 2.0 * lambda_speed * (f - mu) / params.sigma**2
    d_m1 = (q / 0.5) * kummer_1f1(q + 1.0, 1.5, z) * dz
    root = math.sqrt(lambda_speed) / params.sigma
    d_m2 = root * (
        kummer_1f1(q + 0.5, 1.5, z)
        + (f - mu) * ((q + 0.5) / 1.5) * kummer_1f1(q + 1.5, 2.5, z) * dz
    )
    return d_m1, d_m2


def _ou_particular(lambda_speed, mu, params, f):
    r = params.r_share
    lam = lambda_speed
    return (lam * mu * (1.0 - r) * f + r * params.alpha) / (lam * (1.0 - r) + params.alpha)


def _ou_particular_d1(lambda_speed, mu, params) -> float:
    r = params.r_share
    lam = lambda_speed
    return lam * mu * (1.0 - r) / (lam * (1.0 - r) + params.alpha)


def _check_band(sol: StationarySolution, f) -> np.ndarray:
    arr = np.asarray(f, dtype=float)
    tol = 1e-12 * max(1.0, abs(sol.f_high), abs(sol.f_low))
    if np.any(arr < sol.f_low - tol) or np.any(arr > sol.f_high + tol):
        raise DomainError("fundamental outside the band")
    return arr


def _gaussian_ratios(p: ModelParams, arr: np.ndarray):
    """sinh(rho0 f)/cosh(rho0 f_bar) and cosh(rho0 f)/cosh(rho0 f_bar)."""
    rho0 = math.sqrt(2.0 * p.alpha) / p.sigma
    m = rho0 * p.f_bar
    s = rho0 * arr
    denom = 1.0 + math.exp(-2.0 * m)
    grow = np.exp(np.abs(s) - m)
    sinh_ratio = np.sign(s) * grow * (1.0 - np.exp(-2.0 * np.abs(s))) / denom
    cosh_ratio = grow * (1.0 + np.exp(-2.0 * np.abs(s))) / denom
    return rho0, sinh_ratio, cosh_ratio


def eval_stationary(sol: StationarySolution, f):
    """X_S(f); accepts scalars or arrays, domain-checked against the band."""
    arr = _check_band(sol, f)
    if sol.kind == "dmps":
        e_plus, e_minus, _ = _anchored_terms(sol, arr)
        out = e_plus + e_minus + _particular(sol.params, arr)
    elif sol.kind == "gaussian":
        rho0, sinh_ratio, _ = _gaussian_ratios(sol.params, arr)
        out = arr - sinh_ratio / rho0
    elif sol.kind == "ou":
        vals = [
            sol.A * m1 + sol.B * m2 + _ou_particular(sol.lambda_speed, sol.mu, sol.params, x)
            for x in np.atleast_1d(arr)
            for m1, m2 in [_ou_basis(sol.lambda_speed, sol.mu, sol.params, x)]
        ]
        out = np.array(vals)
        return float(out[0]) if np.ndim(f) == 0 else out
    else:
        raise DomainError(f"unknown stationary kind {sol.kind!r}")
    return float(out) if np.ndim(f) == 0 else out


def eval_stationary_derivatives(sol: StationarySolution, f):
    """(X_S, X_S', X_S'') from the analytic closed forms.

    Second derivatives are available for the dmps and gaussian kinds; the
    mean-reverting kind returns first derivatives only (X'' as None).
    """
    arr = _check_band(sol, f)
    p = sol.params
    if sol.kind == "dmps":
        b = p.beta
        t = np.tanh(b * arr)
        s2 = _sech2(b, arr)
        e_plus, e_minus, r = _anchored_terms(sol, arr)
        x = e_plus + e_minus + _particular(p, arr)
        d1 = (r - b * t) * e_plus + (-r - b * t) * e_minus + _particular_d1(p, arr)
        d2 = (
            ((r - b * t) ** 2 - b**2 * s2) * e_plus
            + ((r + b * t) ** 2 - b**2 * s2) * e_minus
            + _particular_d2(p, arr)
        )
        return x, d1, d2
    if sol.kind == "gaussian":
        rho0, sinh_ratio, cosh_ratio = _gaussian_ratios(p, arr)
        x = arr - sinh_ratio / rho0
        d1 = 1.0 - cosh_ratio
        d2 = -rho0 * sinh_ratio
        return x, d1, d2
    if sol.kind == "ou":
        xs = np.atleast_1d(arr)
        x = np.empty_like(xs)
        d1 = np.empty_like(xs)
        for i, xi in enumerate(xs):
            m1, m2 = _ou_basis(sol.lambda_speed, sol.mu, p, xi)
            dm1, dm2 = _ou_basis_d1(sol.lambda_speed, sol.mu, p, xi)
            x[i] = sol.A * m1 + sol.B * m2 + _ou_particular(sol.lambda_speed, sol.mu, p, xi)
            d1[i] = sol.A * dm1 + sol.B * dm2 + _ou_particular_d1(sol.lambda_speed, sol.mu, p)
        if np.ndim(f) == 0:
            return float(x[0]), float(d1[0]), None
        return x, d1, None
    raise DomainError(f"unknown stationary kind {sol.kind!r}")


def stationary_ode_residual(sol: StationarySolution, f):
    """Residual sigma^2/2 X'' + beta tanh(beta f) X' - alpha X + alpha f.

    Zero (to roundoff) for any correctly constructed dmps or gaussian
    solution; the main correctness gate of this module.
    """
    if sol.kind not in ("dmps", "gaussian"):
        raise DomainError("ODE residual applies to the dmps/gaussian kinds")
    p = sol.params
    arr = np.asarray(f, dtype=float)
    x, d1, d2 = eval_stationary_derivatives(sol, arr)
    res = (
        0.5 * p.sigma**2 * d2
        + p.beta * np.tanh(p.beta * arr) * d1
        - p.alpha * x
        + p.alpha * arr
    )
    return float(res) if np.ndim(f) == 0 else res
