"""Dense complex 2x2/4x4 matrix helpers for two-qubit simulations."""

import numpy as np

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = np.array([SIGMA_X, SIGMA_Y, SIGMA_Z])

HERMITICITY_TOL = 1e-12
PSD_HARD_TOL = 1e-9
PSD_CLAMP_TOL = 1e-12


def dot_sigma(v):
    """Return v . sigma for a real 3-vector v."""
    v = np.asarray(v, dtype=float)
    return v[0] * SIGMA_X + v[1] * SIGMA_Y + v[2] * SIGMA_Z


def tensor(a, b):
    """Kronecker product of two 2x2 matrices."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise ValueError("tensor expects two 2x2 matrices")
    return np.kron(a, b)


def _check_hermitian(h, tol=HERMITICITY_TOL):
    if np.max(np.abs(h - h.conj().T)) > tol:
        raise ValueError("matrix is not Hermitian")


def eig_hermitian_2x2(h):
    """Closed-form eigendecomposition of a 2x2 Hermitian matrix.

    Returns (values, projectors) with values sorted descending and
    projectors the matching rank-1 spectral projectors (at degeneracy the
    z-axis split is used, which still satisfies the spectral identities).
    """
    h = np.asarray(h, dtype=complex)
    if h.shape != (2, 2):
        raise ValueError("eig_hermitian_2x2 expects a 2x2 matrix")
    _check_hermitian(h)
    # h = c0*I + c . sigma
    c0 = 0.5 * (h[0, 0] + h[1, 1]).real
    cx = h[0, 1].real
    cy = -h[0, 1].imag
    cz = 0.5 * (h[0, 0] - h[1, 1]).real
    r = float(np.sqrt(cx * cx + cy * cy + cz * cz))
    if r < 1e-15:
        axis = np.array([0.0, 0.0, 1.0])
    else:
        axis = np.array([cx, cy, cz]) / r
    ns = dot_sigma(axis)
    p_plus = 0.5 * (I2 + ns)
    p_minus = 0.5 * (I2 - ns)
    return (c0 + r, c0 - r), (p_plus, p_minus)


def positive_sqrt_2x2(p):
    """Unique Hermitian PSD square root of a 2x2 Hermitian PSD matrix."""
    values, projectors = eig_hermitian_2x2(p)
    root = np.zeros((2, 2), dtype=complex)
    for val, proj in zip(values, projectors):
        if val < -PSD_HARD_TOL:
            raise ValueError(f"matrix is not PSD (eigenvalue {val})")
        val = max(val, 0.0)
        root += np.sqrt(val) * proj
    return root
