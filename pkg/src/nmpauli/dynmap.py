"""Superoperator algebra for qubit maps: intermediate maps, Choi matrices, signed Kraus sets.

Conventions
-----------
* Density operators are vectorized by column stacking, so that
  vec(A B C) = (C^T kron A) vec(B). A superoperator is the 4x4 matrix S with
  vec(E(rho)) = S vec(rho).
* The Choi matrix is chi = sum_ij E(|i><j|) kron |i><j|, the image of the
  unnormalized |00> + |11> projector. It has trace 2 for trace-preserving maps
  and a Pauli channel with weights q_j has Choi eigenvalues 2 q_j. In this
  normalization an NCP map has trace norm ||chi||_1 > 2.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from nmpauli.channels import (
    PAULI,
    PAULI_LABELS,
    ChannelParams,
    Family,
    KrausElement,
    KrausSet,
    P_MAX,
    alpha_pm,
    weights,
)
from nmpauli.errors import MapNonInvertible, SingularWindow, UnsupportedForm

INVERTIBILITY_RTOL = 1e-12
EIG_ZERO_TOL = 1e-12
KRAUS_DROP_TOL = 1e-14
PAULI_FORM_TOL = 1e-9

_OMEGA = np.array([1, 0, 0, 1], dtype=complex)
# Unit-norm Pauli-Bell vectors (P kron I)|Omega>/sqrt(2); eigenvectors of every Pauli-channel Choi matrix.
_BELL = np.array([np.kron(PAULI[label], np.eye(2)) @ _OMEGA / np.sqrt(2) for label in PAULI_LABELS]).T


def vec(matrix: np.ndarray) -> np.ndarray:
    """Column-stack a matrix into a 1-d vector."""
    return np.asarray(matrix).reshape(-1, order="F")


def unvec(vector: np.ndarray) -> np.ndarray:
    vector = np.asarray(vector)
    d = int(round(np.sqrt(vector.size)))
    return vector.reshape((d, d), order="F")


def superop_from_weights(w) -> np.ndarray:
    """Superoperator sum_j q_j conj(P_j) kron P_j of a Pauli channel."""
    s = np.zeros((4, 4), dtype=complex)
    for label, q in zip(PAULI_LABELS, w):
        if q:
            s += q * np.kron(PAULI[label].conj(), PAULI[label])
    return s


def superop(params: ChannelParams, p: float) -> np.ndarray:
    """Superoperator of the full map E(p, 0) for a channel family."""
    return superop_from_weights(weights(params, p))


def compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Superoperator of "apply b, then a"."""
    return np.asarray(a) @ np.asarray(b)


def apply_superop(s: np.ndarray, rho: np.ndarray) -> np.ndarray:
    return unvec(np.asarray(s) @ vec(rho))


def is_invertible(s: np.ndarray, rtol: float = INVERTIBILITY_RTOL) -> bool:
    sv = np.linalg.svd(s, compute_uv=False)
    return bool(sv[-1] > rtol * sv[0])


def intermediate_map(e_t0: np.ndarray, e_s0: np.ndarray, p=None) -> np.ndarray:
    """Intermediate map E(t, s) = E(t, 0) E(s, 0)^-1.

    Parameters
    ----------
    e_t0, e_s0 : ndarray
        Superoperators of the full maps up to t and up to s.
    p : float, optional
        The value of s, attached to :class:`MapNonInvertible` for diagnostics.

    Raises
    ------
    MapNonInvertible
        If the smallest singular value of ``e_s0`` is below 1e-12 times the largest.
    """
    if not is_invertible(e_s0):
        raise MapNonInvertible(p)
    # X e_s0 = e_t0  <=>  e_s0^T X^T = e_t0^T
    return np.linalg.solve(np.asarray(e_s0).T, np.asarray(e_t0).T).T


def intermediate_map_at(params: ChannelParams, p_hi: float, p_lo: float) -> np.ndarray:
    """E(p_hi, p_lo) for a channel family, built numerically from the full maps."""
    return intermediate_map(superop(params, p_hi), superop(params, p_lo), p=p_lo)


def choi(s: np.ndarray) -> np.ndarray:
    """Choi matrix (trace-2 convention) of a superoperator."""
    c = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            e_ij = np.zeros((2, 2), dtype=complex)
            e_ij[i, j] = 1.0
            c += np.kron(apply_superop(s, e_ij), e_ij)
    return c


def choi_eigs(c: np.ndarray) -> np.ndarray:
    """Real eigenvalues of a Hermitian Choi matrix, sorted descending.

    Values within 1e-12 of zero are reported as exactly 0.
    """
    c = np.asarray(c)
    ev = np.linalg.eigvalsh((c + c.conj().T) / 2)
    ev[np.abs(ev) < EIG_ZERO_TOL] = 0.0
    return ev[::-1]


def is_cp(c: np.ndarray, tol: float = EIG_ZERO_TOL) -> bool:
    return bool(choi_eigs(c)[-1] >= -tol)


def trace_norm(c: np.ndarray) -> float:
    c = np.asarray(c)
    return float(np.sum(np.abs(np.linalg.eigvalsh((c + c.conj().T) / 2))))


def pauli_spectrum(c: np.ndarray) -> dict[str, float]:
    """Choi eigenvalue attached to each Pauli for a Pauli-diagonal Choi matrix.

    Raises :class:`UnsupportedForm` if ``c`` is not diagonal in the Pauli-Bell basis.
    """
    c = np.asarray(c)
    m = _BELL.conj().T @ c @ _BELL
    diag = np.real(np.diag(m))
    scale = max(1.0, float(np.max(np.abs(m))))
    if np.max(np.abs(m - np.diag(np.diag(m)))) > PAULI_FORM_TOL * scale:
        raise UnsupportedForm("Choi matrix is not diagonal in the Pauli-Bell basis")
    return {label: float(v) for label, v in zip(PAULI_LABELS, diag)}


def lambda_closed_form(alpha: float, p_star_hi: float, p_star_lo: float) -> tuple[float, float]:
    """Closed-form nonzero Choi eigenvalues (lambda_I, lambda_Z) of the dephasing intermediate map."""
    a_minus, a_plus = alpha_pm(alpha)
    if abs(p_star_lo - a_minus) < 1e-12 or abs(p_star_lo - a_plus) < 1e-12:
        raise SingularWindow(f"window starts at the crossover p = {p_star_lo}: both eigenvalues diverge")
    ratio = ((a_minus - p_star_hi) * (a_plus - p_star_hi)) / ((a_minus - p_star_lo) * (a_plus - p_star_lo))
    return 1.0 + ratio, 1.0 - ratio


def intermediate_kraus(c: np.ndarray) -> KrausSet:
    """Signed Kraus set of a Pauli-diagonal map from its Choi matrix.

    Each nonzero eigenvalue lambda_P gives an element with epsilon = sign(lambda_P)
    and K = sqrt(|lambda_P| / 2) P, the factor 1/2 undoing the trace-2 Choi
    normalization so that sum_j epsilon_j K_j^dagger K_j = I.
    """
    elements = []
    for label, lam in pauli_spectrum(c).items():
        coeff = abs(lam) / 2.0
        if coeff < KRAUS_DROP_TOL:
            continue
        elements.append(KrausElement(1 if lam > 0 else -1, coeff, label))
    return KrausSet(tuple(elements))


def apply_sum_difference(k: KrausSet, rho: np.ndarray) -> np.ndarray:
    """rho -> sum_j epsilon_j K_j rho K_j^dagger."""
    rho = np.asarray(rho, dtype=complex)
    out = np.zeros((2, 2), dtype=complex)
    for el in k:
        op = el.operator
        out += el.epsilon * (op @ rho @ op.conj().T)
    return out


@dataclass(frozen=True)
class IntermediateWindow:
    p_star_lo: float
    p_star_hi: float

    def __post_init__(self):
        if not 0.0 <= self.p_star_lo <= self.p_star_hi <= P_MAX:
            raise ValueError(f"need 0 <= p_lo <= p_hi <= 1/2, got ({self.p_star_lo}, {self.p_star_hi})")


@dataclass(frozen=True)
class WindowCheck:
    """CP verdict for one intermediate window."""

    window: IntermediateWindow
    eigenvalues: np.ndarray
    pauli_eigenvalues: dict
    kraus: KrausSet
    cp: bool
    trace_norm: float


def check_window(params: ChannelParams, window: IntermediateWindow) -> WindowCheck:
    """Build E(p_hi, p_lo) numerically and classify it as CP or NCP."""
    s = intermediate_map_at(params, window.p_star_hi, window.p_star_lo)
    c = choi(s)
    return WindowCheck(
        window=window,
        eigenvalues=choi_eigs(c),
        pauli_eigenvalues=pauli_spectrum(c),
        kraus=intermediate_kraus(c),
        cp=is_cp(c),
        trace_norm=trace_norm(c),
    )


def instantaneous_ncp(params: ChannelParams, s: float, dp: float) -> bool:
    """Whether E(s + dp, s) is NCP. A non-invertible E(s, 0) counts as NCP."""
    try:
        c = choi(intermediate_map_at(params, min(s + dp, P_MAX), s))
    except MapNonInvertible:
        return True
    return not is_cp(c)


def ncp_onset(params: ChannelParams, dp: float = 1e-6, tol: float = 1e-12, lo: float = 0.0, hi=None) -> float:
    """Locate by bisection the p beyond which instantaneous intermediate maps are NCP.

    Requires the instantaneous map to be CP at ``lo`` and NCP at ``hi``
    (default ``1/2 - dp``); raises ``ValueError`` otherwise.
    """
    hi = P_MAX - dp if hi is None else hi
    if instantaneous_ncp(params, lo, dp) or not instantaneous_ncp(params, hi, dp):
        raise ValueError(f"no CP -> NCP transition bracketed in [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if instantaneous_ncp(params, mid, dp):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def default_singularity(params: ChannelParams):
    """Crossover point alpha_minus of the dephasing family, else None."""
    if params.family is Family.DEPHASING and params.alpha > 0:
        return alpha_pm(params.alpha)[0]
    return None
