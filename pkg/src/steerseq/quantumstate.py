"""Two-qubit density matrices and the Werner family.

Basis ordering is fixed as |00>, |01>, |10>, |11>.
"""

import numpy as np

from .matrixcore import I4, dot_sigma, tensor

# singlet (|01> - |10>)/sqrt(2)
SINGLET = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
SINGLET_PROJECTOR = np.outer(SINGLET, SINGLET.conj())

HERM_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9
UNIT_TOL = 1e-12


def check_density_matrix(rho):
    """Validate Hermiticity, unit trace and positivity of a 4x4 state."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("density matrix must be 4x4")
    if np.max(np.abs(rho - rho.conj().T)) > HERM_TOL:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > TRACE_TOL:
        raise ValueError("density matrix trace differs from 1")
    if np.min(np.linalg.eigvalsh(rho)) < -PSD_TOL:
        raise ValueError("density matrix has a negative eigenvalue")
    return rho


def werner_state(mu):
    """Werner state mu*|psi><psi| + (1-mu)*I/4 with the singlet |psi>."""
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {mu}")
    return mu * SINGLET_PROJECTOR + (1.0 - mu) * I4 / 4.0


def nearest_werner(rho):
    """Project onto the Werner family.

    Returns (mu_hat, distance) where mu_hat is the best-fit mixing weight
    (clamped to [0, 1]) and distance the max-entry deviation from
    werner_state(mu_hat).
    """
    rho = np.asarray(rho, dtype=complex)
    overlap = (SINGLET.conj() @ rho @ SINGLET).real
    mu_hat = (4.0 * overlap - 1.0) / 3.0
    mu_hat = min(max(mu_hat, 0.0), 1.0)
    distance = float(np.max(np.abs(rho - werner_state(mu_hat))))
    return mu_hat, distance


def two_qubit_correlation(rho, m, n):
    """Tr[rho (m.sigma x n.sigma)] for unit Bloch vectors m, n."""
    m = np.asarray(m, dtype=float)
    n = np.asarray(n, dtype=float)
    for v in (m, n):
        if abs(v @ v - 1.0) > 1e-10:
            raise ValueError("measurement direction must be a unit vector")
    op = tensor(dot_sigma(m), dot_sigma(n))
    return float(np.trace(rho @ op).real)


def density_matrix_to_json(rho):
    """Nested row-major lists of [re, im] pairs."""
    rho = np.asarray(rho, dtype=complex)
    return [[[entry.real, entry.imag] for entry in row] for row in rho]


def density_matrix_from_json(data):
    rho = np.array(
        [[complex(entry[0], entry[1]) for entry in row] for row in data]
    )
    return check_density_matrix(rho)
