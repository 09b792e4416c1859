"""Tabulated data behind each figure: column names plus rows of floats.

A ``None`` entry marks a deliberate gap (the rate singularity).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from nmpauli.channels import P_MAX, ChannelParams, Family, alpha_pm, kappa_toy
from nmpauli.dynmap import choi, intermediate_map_at, pauli_spectrum
from nmpauli.measures import measure_report, rate, trace_distance_pair
from nmpauli.errors import RateSingular

DEFAULT_GRID = 500


class FigureId(str, enum.Enum):
    CROSSOVER = "crossover"
    NCP_WINDOW = "ncp-window"
    GAMMA_RATE = "gamma-rate"
    MEASURES_VS_ALPHA = "measures-vs-alpha"
    TRACE_DISTANCE = "trace-distance"
    TOY_KAPPA = "toy-kappa"


COLUMNS = {
    FigureId.CROSSOVER: ("p_star_hi", "lambda_I", "lambda_Z"),
    FigureId.NCP_WINDOW: ("p_star_hi", "lambda_I", "lambda_Z"),
    FigureId.GAMMA_RATE: ("p", "gamma"),
    FigureId.MEASURES_VS_ALPHA: ("alpha", "n_hcla_normalized", "n_blp"),
    FigureId.TRACE_DISTANCE: ("alpha", "p", "td"),
    FigureId.TOY_KAPPA: ("p", "kappa"),
}


@dataclass
class FigureData:
    figure: FigureId
    columns: tuple
    rows: list
    params: dict = field(default_factory=dict)


def _check_grid(grid: int) -> None:
    if grid < 2:
        raise ValueError(f"grid resolution must be >= 2, got {grid}")


def window_eigenvalues(params: ChannelParams, p_hi: float, p_lo: float) -> tuple[float, float]:
    """(lambda_I, lambda_Z) of the numerically built intermediate map E(p_hi, p_lo)."""
    spec = pauli_spectrum(choi(intermediate_map_at(params, p_hi, p_lo)))
    return spec["I"], spec["Z"]


def eigenvalue_sweep(figure: FigureId, params: ChannelParams, p_lo: Optional[float], grid: int) -> FigureData:
    _check_grid(grid)
    a_minus = None
    if params.family is Family.DEPHASING and params.alpha > 0:
        a_minus = alpha_pm(params.alpha)[0]
    if p_lo is None:
        if a_minus is None:
            raise ValueError("p_lo is required unless the family is dephasing with alpha > 0")
        p_lo = a_minus - 0.2 if figure is FigureId.CROSSOVER else a_minus + 0.03
    p_his = np.linspace(p_lo, P_MAX, grid)
    if a_minus is not None and p_lo < a_minus < P_MAX:
        p_his = np.unique(np.append(p_his, a_minus))
    rows = [(float(ph), *window_eigenvalues(params, float(ph), p_lo)) for ph in p_his]
    meta = {"family": params.family.value, "alpha": params.alpha, "p_lo": p_lo, "grid": grid}
    return FigureData(figure, COLUMNS[figure], rows, meta)


def gamma_rate(params: ChannelParams, grid: int) -> FigureData:
    _check_grid(grid)
    sing = None
    if params.family is Family.DEPHASING and params.alpha > 0:
        sing = alpha_pm(params.alpha)[0]
    rows = []
    for p in np.linspace(0.0, P_MAX, grid):
        p = float(p)
        try:
            rows.append((p, rate(params, p)))
        except RateSingular:
            pass
    if sing is not None:
        rows.append((sing, None))
    rows.sort(key=lambda r: r[0])
    meta = {"family": params.family.value, "grid": grid}
    if params.family is Family.TOYSINE:
        meta.update(eta=params.eta, omega=params.omega)
    else:
        meta.update(alpha=params.alpha)
    if sing is not None:
        meta["singularity"] = sing
    return FigureData(FigureId.GAMMA_RATE, COLUMNS[FigureId.GAMMA_RATE], rows, meta)


def measures_vs_alpha(grid: int, alpha_lo: float = 0.05, alpha_hi: float = 1.0) -> FigureData:
    _check_grid(grid)
    rows = []
    for a in np.linspace(alpha_lo, alpha_hi, grid):
        rep = measure_report(float(a))
        rows.append((float(a), rep.n_hcla_normalized, rep.n_blp))
    meta = {"family": "dephasing", "alpha_lo": alpha_lo, "alpha_hi": alpha_hi, "grid": grid}
    return FigureData(FigureId.MEASURES_VS_ALPHA, COLUMNS[FigureId.MEASURES_VS_ALPHA], rows, meta)


def trace_distance(alphas: Sequence[float], grid: int, theta: float = math.pi / 2) -> FigureData:
    _check_grid(grid)
    ps = np.linspace(0.0, P_MAX, grid)
    rows = []
    for a in alphas:
        ChannelParams(Family.DEPHASING, a)
        td = trace_distance_pair(a, ps, theta)
        rows.extend((float(a), float(p), float(t)) for p, t in zip(ps, td))
    meta = {"family": "dephasing", "alphas": list(alphas), "theta": theta, "grid": grid}
    return FigureData(FigureId.TRACE_DISTANCE, COLUMNS[FigureId.TRACE_DISTANCE], rows, meta)


def toy_kappa(eta: float, omega: float, grid: int) -> FigureData:
    _check_grid(grid)
    ChannelParams(Family.TOYSINE, eta=eta, omega=omega)
    ps = np.linspace(0.0, P_MAX, grid)
    rows = [(float(p), float(k)) for p, k in zip(ps, kappa_toy(ps, eta, omega))]
    meta = {"family": "toysine", "eta": eta, "omega": omega, "grid": grid}
    return FigureData(FigureId.TOY_KAPPA, COLUMNS[FigureId.TOY_KAPPA], rows, meta)
