"""Parametrized qubit Pauli channel families.

Every channel here is a map rho -> sum_j q_j P_j rho P_j with Pauli weights
q = (qI, qX, qY, qZ) that depend on a time-like parameter p in [0, 1/2].
The families are

* ``dephasing``: weights (1 - kappa, 0, 0, kappa) with
  kappa(p) = [1 + alpha (1 - p)] p, 0 <= alpha <= 1;
* ``depolarizing``: qI = (1 - 3 alpha p)(1 - p) and
  qX = qY = qZ = [1 + 3 alpha (1 - p)] p / 3, 0 <= alpha <= 2/3;
* ``toysine``: dephasing form with an oscillating mixing parameter
  kappa(p) = p (1 + eta sin(omega p)(1 - 2p)) / (1 + eta (1 - 2p)).

alpha = 0 recovers the usual Markovian channels in the first two cases.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from nmpauli.errors import DegenerateAlpha, NotCP

P_MAX = 0.5
WEIGHT_SUM_TOL = 1e-12
DEPOLARIZING_ALPHA_MAX = 2.0 / 3.0

PAULI_LABELS = ("I", "X", "Y", "Z")
PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class Family(str, enum.Enum):
    DEPHASING = "dephasing"
    DEPOLARIZING = "depolarizing"
    TOYSINE = "toysine"


@dataclass(frozen=True)
class ChannelParams:
    """Parameters selecting one member of a channel family.

    ``alpha`` is ignored by the toy sine family, ``eta``/``omega`` by the others.
    Construction fails with :class:`NotCP` (or ``ValueError`` for non-finite
    toy parameters) if the family would not be CP from p = 0.
    """

    family: Family = Family.DEPHASING
    alpha: float = 0.0
    eta: float = 0.0
    omega: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.family is Family.DEPHASING:
            if not 0.0 <= self.alpha <= 1.0:
                raise NotCP(f"dephasing requires 0 <= alpha <= 1, got {self.alpha}")
        elif self.family is Family.DEPOLARIZING:
            if not 0.0 <= self.alpha <= DEPOLARIZING_ALPHA_MAX:
                raise NotCP(f"depolarizing requires 0 <= alpha <= 2/3, got {self.alpha}")
        else:
            for name in ("eta", "omega"):
                value = getattr(self, name)
                if not (math.isfinite(value) and value >= 0.0):
                    raise ValueError(f"toysine requires finite {name} >= 0, got {value}")


class PauliWeights(NamedTuple):
    qI: float
    qX: float
    qY: float
    qZ: float

    def total(self) -> float:
        return self.qI + self.qX + self.qY + self.qZ

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=float)


def check_p(p) -> None:
    """Raise ``ValueError`` unless every p lies in [0, 1/2]."""
    arr = np.asarray(p, dtype=float)
    if not np.all((arr >= 0.0) & (arr <= P_MAX)):
        raise ValueError(f"time parameter p must lie in [0, 1/2], got {p!r}")


# ---------------------------------------------------------------------------
# Non-Markovian dephasing
# ---------------------------------------------------------------------------


def alpha_pm(alpha: float) -> tuple[float, float]:
    """Roots (alpha_minus, alpha_plus) of kappa_dephasing(alpha, p) = 1/2.

    The roots are ((1 + alpha) -+ sqrt(1 + alpha^2)) / (2 alpha). alpha_minus is
    computed from the rationalized form 1 / (1 + alpha + sqrt(1 + alpha^2)) to
    avoid cancellation at small alpha.
    """
    if alpha == 0:
        raise DegenerateAlpha("alpha = 0 has no crossover (Markovian dephasing)")
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha_pm requires 0 < alpha <= 1, got {alpha}")
    root = math.sqrt(1.0 + alpha * alpha)
    alpha_minus = 1.0 / (1.0 + alpha + root)
    alpha_plus = (1.0 + alpha + root) / (2.0 * alpha)
    return alpha_minus, alpha_plus


def alpha_minus_limit(alpha: float) -> float:
    """alpha_minus extended continuously to alpha = 0, where it tends to 1/2."""
    return 1.0 / (1.0 + alpha + math.sqrt(1.0 + alpha * alpha))


def kappa_dephasing(alpha: float, p):
    check_p(p)
    p = np.asarray(p, dtype=float)
    out = (1.0 + alpha * (1.0 - p)) * p
    return float(out) if out.ndim == 0 else out


def dkappa_dephasing(alpha: float, p):
    """Analytic d(kappa)/dp = 1 + alpha - 2 alpha p."""
    p = np.asarray(p, dtype=float)
    out = 1.0 + alpha - 2.0 * alpha * p
    return float(out) if out.ndim == 0 else out


def weights_dephasing(alpha: float, p: float) -> PauliWeights:
    check_p(p)
    return PauliWeights((1.0 - alpha * p) * (1.0 - p), 0.0, 0.0, (1.0 + alpha * (1.0 - p)) * p)


# ---------------------------------------------------------------------------
# Non-Markovian depolarizing
# ---------------------------------------------------------------------------


def weights_depolarizing(alpha: float, p: float) -> PauliWeights:
    if not 0.0 <= alpha <= DEPOLARIZING_ALPHA_MAX:
        raise NotCP(f"depolarizing requires 0 <= alpha <= 2/3, got {alpha}")
    check_p(p)
    q = (1.0 + 3.0 * alpha * (1.0 - p)) * p / 3.0
    return PauliWeights((1.0 - 3.0 * alpha * p) * (1.0 - p), q, q, q)


# ---------------------------------------------------------------------------
# Toy sine dephasing
# ---------------------------------------------------------------------------


def kappa_toy(p, eta: float, omega: float):
    check_p(p)
    p = np.asarray(p, dtype=float)
    u = 1.0 - 2.0 * p
    out = p * (1.0 + eta * np.sin(omega * p) * u) / (1.0 + eta * u)
    return float(out) if out.ndim == 0 else out


def dkappa_toy(p, eta: float, omega: float):
    """Analytic derivative of :func:`kappa_toy` with respect to p."""
    p = np.asarray(p, dtype=float)
    u = 1.0 - 2.0 * p
    num = p * (1.0 + eta * np.sin(omega * p) * u)
    dnum = 1.0 + eta * np.sin(omega * p) * u + p * eta * (omega * np.cos(omega * p) * u - 2.0 * np.sin(omega * p))
    den = 1.0 + eta * u
    dden = -2.0 * eta
    out = (dnum * den - num * dden) / den**2
    return float(out) if out.ndim == 0 else out


def weights_toy(p: float, eta: float, omega: float) -> PauliWeights:
    kappa = kappa_toy(p, eta, omega)
    if not 0.0 <= kappa <= 1.0:
        raise NotCP(f"toy channel kappa({p}) = {kappa} outside [0, 1]")
    return PauliWeights(1.0 - kappa, 0.0, 0.0, kappa)


def toy_kappa_in_range(eta: float, omega: float, n: int = 1001) -> bool:
    """Sample kappa_toy on an n-point grid and report whether it stays in [0, 1/2]."""
    kappa = kappa_toy(np.linspace(0.0, P_MAX, n), eta, omega)
    return bool(np.all((kappa >= -WEIGHT_SUM_TOL) & (kappa <= P_MAX + WEIGHT_SUM_TOL)))


# ---------------------------------------------------------------------------
# Family dispatch
# ---------------------------------------------------------------------------


def weights(params: ChannelParams, p: float) -> PauliWeights:
    """Pauli weights of the full map E(p, 0) for any family."""
    if params.family is Family.DEPHASING:
        return weights_dephasing(params.alpha, p)
    if params.family is Family.DEPOLARIZING:
        return weights_depolarizing(params.alpha, p)
    return weights_toy(p, params.eta, params.omega)


def kappa(params: ChannelParams, p):
    """Mixing parameter kappa(p) of a dephasing-form family."""
    if params.family is Family.DEPHASING:
        return kappa_dephasing(params.alpha, p)
    if params.family is Family.TOYSINE:
        return kappa_toy(p, params.eta, params.omega)
    raise ValueError("kappa(p) is only defined for dephasing-form families")


def dkappa(params: ChannelParams, p):
    if params.family is Family.DEPHASING:
        return dkappa_dephasing(params.alpha, p)
    if params.family is Family.TOYSINE:
        return dkappa_toy(p, params.eta, params.omega)
    raise ValueError("kappa(p) is only defined for dephasing-form families")


# ---------------------------------------------------------------------------
# Kraus sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KrausElement:
    """One signed term epsilon * K rho K^dagger with K = sqrt(coeff) * P."""

    epsilon: int
    coeff: float
    pauli: str

    @property
    def operator(self) -> np.ndarray:
        return math.sqrt(self.coeff) * PAULI[self.pauli]


@dataclass(frozen=True)
class KrausSet:
    """Signed Kraus decomposition (operator sum-difference representation)."""

    elements: tuple[KrausElement, ...]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def completeness(self) -> np.ndarray:
        """sum_j epsilon_j K_j^dagger K_j, the identity for a trace-preserving set."""
        out = np.zeros((2, 2), dtype=complex)
        for el in self.elements:
            k = el.operator
            out += el.epsilon * (k.conj().T @ k)
        return out

    def signed_weights(self) -> dict[str, float]:
        out = dict.fromkeys(PAULI_LABELS, 0.0)
        for el in self.elements:
            out[el.pauli] += el.epsilon * el.coeff
        return out

    @property
    def is_cp(self) -> bool:
        return all(el.epsilon > 0 for el in self.elements)


def kraus_from_weights(w: Sequence[float]) -> KrausSet:
    """Standard (all epsilon = +1) Kraus set K_j = sqrt(q_j) P_j.

    Zero weights are omitted. Raises :class:`NotCP` on a negative weight.
    """
    w = PauliWeights(*w)
    if any(q < 0 for q in w):
        raise NotCP(f"negative Pauli weight in {tuple(w)}")
    return KrausSet(tuple(KrausElement(+1, float(q), label) for label, q in zip(PAULI_LABELS, w) if q > 0))
