"""Decoherence rates and non-Markovianity measures.

Two quantifiers are provided for the non-Markovian dephasing family:

* the normalized negative-rate (HCLA) measure, the integral of
  gamma' = -gamma / (1 - gamma) over the witness interval [alpha_minus, 1/2];
* the trace-distance (BLP) measure, the largest total rise in trace distance
  of an orthogonal pure-state pair, maximized over the polar angle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import integrate, optimize

from nmpauli.channels import (
    P_MAX,
    ChannelParams,
    Family,
    alpha_minus_limit,
    alpha_pm,
    dkappa,
    kappa,
    kappa_dephasing,
)
from nmpauli.errors import RateSingular

FD_STEP = 1e-6
RATE_SINGULAR_TOL = 1e-12
KAPPA_HALF_TOL = 1e-10
DEFAULT_THETA_GRID = 257
QUAD_EPS = 1e-13


# ---------------------------------------------------------------------------
# Canonical decoherence rate
# ---------------------------------------------------------------------------


def gamma_dephasing(alpha: float, p: float) -> float:
    """Closed-form rate gamma(p) = (mean(alpha+-) - p) / ((p - alpha_-)(p - alpha_+)).

    At alpha = 0 this is the Markovian rate 1 / (1 - 2p).
    """
    if alpha == 0:
        if abs(1.0 - 2.0 * p) < RATE_SINGULAR_TOL:
            raise RateSingular("Markovian dephasing rate diverges at p = 1/2")
        return 1.0 / (1.0 - 2.0 * p)
    a_minus, a_plus = alpha_pm(alpha)
    if abs(p - a_minus) < RATE_SINGULAR_TOL:
        raise RateSingular(f"gamma diverges at alpha_minus = {a_minus}")
    return (0.5 * (a_plus + a_minus) - p) / ((p - a_minus) * (p - a_plus))


def _central_difference(fn: Callable[[float], float], p: float, h: float) -> float:
    # second order everywhere; one-sided stencils at the ends of [0, 1/2]
    if p - h < 0.0:
        return (-3.0 * fn(p) + 4.0 * fn(p + h) - fn(p + 2 * h)) / (2 * h)
    if p + h > P_MAX:
        return (3.0 * fn(p) - 4.0 * fn(p - h) + fn(p - 2 * h)) / (2 * h)
    return (fn(p + h) - fn(p - h)) / (2 * h)


def gamma_from_kappa(
    kappa_fn: Callable[[float], float],
    p: float,
    dkappa_fn: Optional[Callable[[float], float]] = None,
    h: float = FD_STEP,
) -> float:
    """gamma = (dkappa/dp) / (1 - 2 kappa) for any dephasing-form channel.

    The derivative comes from ``dkappa_fn`` when given, otherwise from a central
    finite difference with step ``h``.
    """
    k = kappa_fn(p)
    denom = 1.0 - 2.0 * k
    if abs(denom) < KAPPA_HALF_TOL:
        raise RateSingular(f"kappa({p}) = 1/2: rate diverges")
    slope = dkappa_fn(p) if dkappa_fn is not None else _central_difference(kappa_fn, p, h)
    return slope / denom


def negative_rate_case(kappa_value: float, slope: float) -> Optional[str]:
    """Which mechanism makes gamma negative, or None if gamma >= 0.

    ``"negative-slope"`` when kappa < 1/2 and dkappa/dp < 0,
    ``"kappa-above-half"`` when kappa > 1/2 and dkappa/dp > 0.
    """
    if kappa_value < 0.5 and slope < 0:
        return "negative-slope"
    if kappa_value > 0.5 and slope > 0:
        return "kappa-above-half"
    return None


def gamma_normalized(alpha: float, p):
    """gamma' = -gamma / (1 - gamma) = (alpha - 2 alpha p + 1) / (alpha - 2 alpha p^2 + 2 p).

    Finite on [alpha_minus, 1/2], equal to 1 at alpha_minus.
    """
    p = np.asarray(p, dtype=float)
    out = (alpha - 2.0 * alpha * p + 1.0) / (alpha - 2.0 * alpha * p * p + 2.0 * p)
    return float(out) if out.ndim == 0 else out


@dataclass
class RateProfile:
    samples: list = field(default_factory=list)  # (p, gamma, gamma_normalized)
    singularity: Optional[float] = None


def rate(params: ChannelParams, p: float) -> float:
    """Canonical rate of a dephasing-form family at p."""
    if params.family is Family.DEPHASING:
        return gamma_dephasing(params.alpha, p)
    if params.family is Family.TOYSINE:
        return gamma_from_kappa(lambda x: kappa(params, x), p, lambda x: dkappa(params, x))
    raise ValueError("closed-form decoherence rates are only available for dephasing-form families")


def rate_profile(params: ChannelParams, ps) -> RateProfile:
    """Sample gamma and gamma' on ``ps``, skipping points at the singularity."""
    sing = None
    if params.family is Family.DEPHASING and params.alpha > 0:
        sing = alpha_pm(params.alpha)[0]
    samples = []
    for p in ps:
        try:
            g = rate(params, float(p))
        except RateSingular:
            continue
        samples.append((float(p), g, -g / (1.0 - g)))
    return RateProfile(samples, sing)


# ---------------------------------------------------------------------------
# Normalized HCLA measure
# ---------------------------------------------------------------------------


def n_hcla_normalized(alpha: float, panels: Optional[int] = None, order: int = 8) -> float:
    """Integral of gamma' over [alpha_minus, 1/2].

    By default uses adaptive Gauss-Kronrod quadrature. With ``panels`` set, a
    composite Gauss-Legendre rule of the given ``order`` on equal panels is used
    instead (for step-refinement checks).
    """
    if alpha == 0:
        return 0.0
    a_minus, _ = alpha_pm(alpha)
    if panels is None:
        val, _ = integrate.quad(lambda p: gamma_normalized(alpha, p), a_minus, P_MAX, epsabs=QUAD_EPS, epsrel=QUAD_EPS)
        return float(val)
    nodes, wts = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a_minus, P_MAX, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = mid[:, None] + half[:, None] * nodes[None, :]
    return float(np.sum(half[:, None] * wts[None, :] * gamma_normalized(alpha, pts)))


def n_hcla_closed_form(alpha: float) -> complex:
    """Antiderivative form of :func:`n_hcla_normalized`, evaluated in complex arithmetic.

    The antiderivative contains sqrt(-2 alpha^2 - 1); the result should be real
    up to rounding, and the imaginary part is returned for the caller to check.
    """
    if alpha == 0:
        return 0j
    a_minus, _ = alpha_pm(alpha)
    s = np.sqrt(complex(-2.0 * alpha * alpha - 1.0))

    def anti(p):
        return 0.5 * np.log(complex(alpha + 2 * p - 2 * alpha * p * p)) - alpha * np.arctan((2 * alpha * p - 1) / s) / s

    return complex(anti(P_MAX) - anti(a_minus))


def rhp_from_hcla(n_hcla: float, d: int = 2) -> float:
    """Convert an HCLA value to the RHP measure via N_HCLA = (d/2) N_RHP (qubits only)."""
    if d != 2:
        raise ValueError("only qubit systems (d = 2) are supported")
    if n_hcla < 0:
        raise ValueError("n_hcla must be nonnegative")
    return 2.0 * n_hcla / d


# ---------------------------------------------------------------------------
# Trace distance and BLP measure
# ---------------------------------------------------------------------------


def trace_distance_pair(alpha: float, p, theta: float):
    """Trace distance of the evolved orthogonal pair at polar angle theta.

    Equals sqrt(cos^2 theta + G^2 sin^2 theta) with G = 1 - 2 kappa(p); it does
    not depend on the azimuthal angle.
    """
    g = 1.0 - 2.0 * np.asarray(kappa_dephasing(alpha, p))
    out = np.sqrt(np.cos(theta) ** 2 + (g * np.sin(theta)) ** 2)
    return float(out) if out.ndim == 0 else out


def trace_distance_pi2(alpha: float, p):
    """|2 alpha (p - alpha_-)(p - alpha_+)|, the theta = pi/2 trace distance."""
    p = np.asarray(p, dtype=float)
    if alpha == 0:
        out = np.abs(1.0 - 2.0 * p)
    else:
        a_minus, a_plus = alpha_pm(alpha)
        out = np.abs(2.0 * alpha * (p - a_minus) * (p - a_plus))
    return float(out) if out.ndim == 0 else out


def blp_from_series(td) -> float:
    """Total increase sum(max(0, dTD)) of a sampled trace-distance curve."""
    diff = np.diff(np.asarray(td, dtype=float))
    return float(np.sum(diff[diff > 0]))


@dataclass(frozen=True)
class MeasureReport:
    alpha: float
    alpha_minus: float
    n_hcla_normalized: float
    n_blp: float
    theta_opt: float
    witness_interval: tuple

    @property
    def markovian(self) -> bool:
        return self.alpha == 0

    @property
    def n_rhp(self) -> float:
        return rhp_from_hcla(self.n_hcla_normalized)


def blp_objective(alpha: float, theta: float) -> float:
    """TD(1/2) - TD(alpha_minus): the rise of the trace distance over the witness interval."""
    a_minus = alpha_minus_limit(alpha)
    return trace_distance_pair(alpha, P_MAX, theta) - trace_distance_pair(alpha, a_minus, theta)


def optimize_blp(alpha: float, theta_grid_size: int = DEFAULT_THETA_GRID) -> tuple[float, float]:
    """Maximize :func:`blp_objective` over theta in [0, pi]; returns (value, theta_opt).

    Uniform grid scan followed by one golden-section refinement around the best
    grid point.
    """
    if theta_grid_size < 64:
        raise ValueError("theta_grid_size must be >= 64")
    thetas = np.linspace(0.0, math.pi, theta_grid_size)
    vals = np.array([blp_objective(alpha, t) for t in thetas])
    k = int(np.argmax(vals))
    best_t, best_v = float(thetas[k]), float(vals[k])
    if 0 < k < theta_grid_size - 1 and vals[k] > vals[k - 1] and vals[k] > vals[k + 1]:
        res = optimize.minimize_scalar(
            lambda t: -blp_objective(alpha, t),
            bracket=(thetas[k - 1], thetas[k], thetas[k + 1]),
            method="golden",
            options={"xtol": 1e-12},
        )
        if -res.fun >= best_v:
            best_t, best_v = float(res.x), float(-res.fun)
    return best_v, best_t


def measure_report(alpha: float, theta_grid_size: int = DEFAULT_THETA_GRID) -> MeasureReport:
    """All measures of the dephasing family at one alpha."""
    if alpha == 0:
        return MeasureReport(0.0, 0.5, 0.0, 0.0, math.pi / 2, (0.5, 0.5))
    a_minus, _ = alpha_pm(alpha)
    value, theta = optimize_blp(alpha, theta_grid_size)
    return MeasureReport(alpha, a_minus, n_hcla_normalized(alpha), value, theta, (a_minus, P_MAX))


def n_blp(alpha: float, theta_grid_size: int = DEFAULT_THETA_GRID) -> MeasureReport:
    """BLP measure of the dephasing family; returns the full :class:`MeasureReport`."""
    return measure_report(alpha, theta_grid_size)
