"""Measurement axes from regular polyhedra, unsharp effects/Kraus operators,
and the outcome-averaged (Luders) channels for sequential observers.

Conventions: Bob's matched direction is the antipode of Alice's
(n_k = -m_k), and the channels average uniformly over the N settings so
that the output is a valid (unit-trace) state.
"""

from dataclasses import dataclass, field
import json
import math

import numpy as np

from .matrixcore import I2, dot_sigma, positive_sqrt_2x2, tensor

GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0

SUPPORTED_SETTINGS = (2, 3, 4, 6, 10, 16)


def _normalized(rows):
    arr = np.array(rows, dtype=float)
    return arr / np.linalg.norm(arr, axis=1, keepdims=True)


def _cube_axes():
    return _normalized([(1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1)])


def _icosahedron_axes():
    # one representative per antipodal vertex pair, golden-ratio coordinates
    g = GOLDEN
    return _normalized(
        [
            (0, 1, g),
            (0, -1, g),
            (1, g, 0),
            (-1, g, 0),
            (g, 0, 1),
            (g, 0, -1),
        ]
    )


def _dodecahedron_axes():
    g = GOLDEN
    return _normalized(
        list(_cube_axes())
        + [
            (0, 1 / g, g),
            (0, -1 / g, g),
            (1 / g, g, 0),
            (-1 / g, g, 0),
            (g, 0, 1 / g),
            (g, 0, -1 / g),
        ]
    )


@dataclass(frozen=True)
class SettingSet:
    """N matched measurement axes for Alice with Bob's antipodal partners."""

    n_settings: int
    alice_dirs: np.ndarray
    bob_dirs: np.ndarray = field(default=None)

    def __post_init__(self):
        alice = np.asarray(self.alice_dirs, dtype=float)
        if alice.shape != (self.n_settings, 3):
            raise ValueError("alice_dirs must be an (N, 3) array")
        norms = np.linalg.norm(alice, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-12:
            raise ValueError("measurement axes must be unit vectors")
        for i in range(self.n_settings):
            for j in range(i + 1, self.n_settings):
                if abs(abs(alice[i] @ alice[j]) - 1.0) < 1e-9:
                    raise ValueError("axes must be pairwise non-(anti)parallel")
        object.__setattr__(self, "alice_dirs", alice)
        object.__setattr__(self, "bob_dirs", -alice)

    def rotated(self, rotation):
        """Apply a common 3x3 rotation to every Alice axis."""
        return SettingSet(self.n_settings, self.alice_dirs @ np.asarray(rotation).T)

    def to_json(self):
        return json.dumps(
            {
                "n": self.n_settings,
                "alice_dirs": self.alice_dirs.tolist(),
                "bob_dirs": self.bob_dirs.tolist(),
            }
        )


def polyhedron_settings(n):
    """Canonical axis sets: square (2), octahedron (3), cube (4),
    icosahedron (6), dodecahedron (10), icosahedron+dodecahedron (16)."""
    if n == 2:
        axes = np.array([(1.0, 0.0, 0.0), (0.0, 0.0, 1.0)])
    elif n == 3:
        axes = np.eye(3)
    elif n == 4:
        axes = _cube_axes()
    elif n == 6:
        axes = _icosahedron_axes()
    elif n == 10:
        axes = _dodecahedron_axes()
    elif n == 16:
        axes = np.vstack([_icosahedron_axes(), _dodecahedron_axes()])
    else:
        raise ValueError(f"unsupported number of settings: {n}")
    return SettingSet(n, axes)


@dataclass(frozen=True)
class UnsharpMeasurement:
    """Two-outcome measurement along a Bloch direction with sharpness in [0, 1]."""

    direction: np.ndarray
    sharpness: float

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=float)
        if abs(d @ d - 1.0) > 1e-12:
            raise ValueError("measurement direction must be a unit vector")
        if not 0.0 <= self.sharpness <= 1.0:
            raise ValueError("sharpness must lie in [0, 1]")
        object.__setattr__(self, "direction", d)

    @property
    def quality_factor(self):
        return math.sqrt(1.0 - self.sharpness**2)


def effect(meas, outcome):
    """POVM element (I + (-1)^outcome * sharpness * dir.sigma)/2."""
    if outcome not in (0, 1):
        raise ValueError("outcome must be 0 or 1")
    sign = 1.0 if outcome == 0 else -1.0
    return 0.5 * (I2 + sign * meas.sharpness * dot_sigma(meas.direction))


def kraus(meas, outcome):
    """Positive root of the effect; K K^dag reproduces the effect."""
    return positive_sqrt_2x2(effect(meas, outcome))


def _kraus_pair(direction, sharpness):
    m = UnsharpMeasurement(direction, sharpness)
    return kraus(m, 0), kraus(m, 1)


def luders_one_side(rho, sharpness, settings, side="alice"):
    """Outcome- and setting-averaged measurement channel on one qubit."""
    if side not in ("alice", "bob"):
        raise ValueError("side must be 'alice' or 'bob'")
    dirs = settings.alice_dirs if side == "alice" else settings.bob_dirs
    out = np.zeros((4, 4), dtype=complex)
    for direction in dirs:
        for k in _kraus_pair(direction, sharpness):
            op = tensor(k, I2) if side == "alice" else tensor(I2, k)
            out += op @ rho @ op.conj().T
    return out / settings.n_settings


def luders_matched_pair(rho, lam, eta, settings):
    """Simultaneous matched measurements: Alice along m_k, Bob along n_k."""
    out = np.zeros((4, 4), dtype=complex)
    for m_dir, n_dir in zip(settings.alice_dirs, settings.bob_dirs):
        for ka in _kraus_pair(m_dir, lam):
            for kb in _kraus_pair(n_dir, eta):
                op = tensor(ka, kb)
                out += op @ rho @ op.conj().T
    return out / settings.n_settings
