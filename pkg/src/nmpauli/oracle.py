"""Brute-force reference computations on explicit density matrices.

Nothing here uses superoperators or closed forms; it exists to check them.
"""
import numpy as np

from nmpauli.channels import PAULI, PAULI_LABELS


def evolve(w, rho):
    """Apply the Pauli channel rho -> sum_j q_j P_j rho P_j directly."""
    rho = np.asarray(rho, dtype=complex)
    out = np.zeros((2, 2), dtype=complex)
    for label, q in zip(PAULI_LABELS, w):
        out += q * (PAULI[label] @ rho @ PAULI[label])
    return out


def helstrom_td(rho0, rho1, q=0.5):
    """Trace distance (1/2)||rho0 - rho1||_1, the q = 1/2 Helstrom norm.

    For general q this returns ||q rho0 - (1 - q) rho1||_1, so that the minimum
    single-shot discrimination failure probability is (1 - value) / 2.
    """
    delta = q * np.asarray(rho0) - (1.0 - q) * np.asarray(rho1)
    delta = (delta + delta.conj().T) / 2
    return float(np.sum(np.abs(np.linalg.eigvalsh(delta))))


def pair_states(theta, phi=0.0):
    """Orthogonal pure-state pair (|psi0><psi0|, |psi1><psi1|).

    |psi0> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
    |psi1> = -sin(theta/2)|0> + e^{i phi} cos(theta/2)|1>
    """
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    ph = np.exp(1j * phi)
    psi0 = np.array([c, ph * s])
    psi1 = np.array([-s, ph * c])
    return np.outer(psi0, psi0.conj()), np.outer(psi1, psi1.conj())


def bloch_vector(rho):
    rho = np.asarray(rho)
    return np.array([np.real(np.trace(rho @ PAULI[label])) for label in ("X", "Y", "Z")])
