"""Steering-parameter evaluation.

Two independent routes are provided: a brute-force density-matrix
simulation (sequential Luders channels plus correlation traces) and the
multiplicative closed forms. The classical bounds for the supported
setting counts are stored as published constants.
"""

from dataclasses import dataclass, field
import csv
import io
import json
import math

import numpy as np

from .measurements import (
    SUPPORTED_SETTINGS,
    luders_matched_pair,
    luders_one_side,
    polyhedron_settings,
)
from .quantumstate import two_qubit_correlation, werner_state

CLASSICAL_BOUNDS = {
    2: 1.0 / math.sqrt(2.0),
    3: 1.0 / math.sqrt(3.0),
    4: 1.0 / math.sqrt(3.0),
    6: 0.5393,
    10: 0.5236,
    16: 0.503,
}


def classical_bound(n):
    if n not in CLASSICAL_BOUNDS:
        raise ValueError(f"unsupported number of settings: {n}")
    return CLASSICAL_BOUNDS[n]


@dataclass(frozen=True)
class Scenario:
    """Initial purity, setting count and per-observer sharpness lists."""

    mu: float
    n_settings: int
    alice_sharpness: tuple
    bob_sharpness: tuple

    def __post_init__(self):
        if not 0.0 <= self.mu <= 1.0:
            raise ValueError("mu must lie in [0, 1]")
        if self.n_settings not in SUPPORTED_SETTINGS:
            raise ValueError(f"unsupported number of settings: {self.n_settings}")
        alice = tuple(float(v) for v in self.alice_sharpness)
        bob = tuple(float(v) for v in self.bob_sharpness)
        if not alice or not bob:
            raise ValueError("need at least one Alice and one Bob")
        for v in alice + bob:
            if not 0.0 <= v <= 1.0:
                raise ValueError("sharpness values must lie in [0, 1]")
        object.__setattr__(self, "alice_sharpness", alice)
        object.__setattr__(self, "bob_sharpness", bob)

    @property
    def n_alices(self):
        return len(self.alice_sharpness)

    @property
    def n_bobs(self):
        return len(self.bob_sharpness)


def _check_indices(scenario, i, p):
    if not 1 <= i <= scenario.n_alices:
        raise ValueError(f"Alice index {i} out of range")
    if not 1 <= p <= scenario.n_bobs:
        raise ValueError(f"Bob index {p} out of range")


def _quality(x):
    return math.sqrt(max(0.0, 1.0 - x * x))


def steering_parameter_closed(scenario, i, p):
    """Closed-form steering parameter for the (i-th Alice, p-th Bob) pair.

    For more Alices than Bobs the unpaired early Alices contribute
    one-sided degradation factors and the remaining predecessors pair up;
    the opposite imbalance uses the role-swapped expression.
    """
    _check_indices(scenario, i, p)
    lam = scenario.alice_sharpness
    eta = scenario.bob_sharpness
    if p > i:
        lam, eta = eta, lam
        i, p = p, i
    c = 2.0 if scenario.n_settings == 2 else 3.0
    s = scenario.mu * lam[i - 1] * eta[p - 1] / c ** (i - 1)
    for j in range(1, p):
        s *= 1.0 + (c - 1.0) * _quality(lam[j + i - p - 1]) * _quality(eta[j - 1])
    for l in range(1, i - p + 1):
        s *= 1.0 + (c - 1.0) * _quality(lam[l - 1])
    return s


def predecessor_state(scenario, i, p, settings=None):
    """Average state seen by the (i-th Alice, p-th Bob) pair.

    The unpaired early predecessors on the longer side act one-sided
    first; the final min(i, p) - 1 rounds on each side act as matched
    pairs, mirroring the pairing of the closed forms.
    """
    _check_indices(scenario, i, p)
    if settings is None:
        settings = polyhedron_settings(scenario.n_settings)
    rho = werner_state(scenario.mu)
    lam = scenario.alice_sharpness
    eta = scenario.bob_sharpness
    if i >= p:
        for l in range(i - p):
            rho = luders_one_side(rho, lam[l], settings, side="alice")
        for j in range(p - 1):
            rho = luders_matched_pair(rho, lam[j + i - p], eta[j], settings)
    else:
        for l in range(p - i):
            rho = luders_one_side(rho, eta[l], settings, side="bob")
        for j in range(i - 1):
            rho = luders_matched_pair(rho, lam[j], eta[j + p - i], settings)
    return rho


def steering_parameter_oracle(scenario, i, p, settings=None):
    """Density-matrix evaluation of the same steering parameter."""
    if settings is None:
        settings = polyhedron_settings(scenario.n_settings)
    rho = predecessor_state(scenario, i, p, settings)
    lam = scenario.alice_sharpness[i - 1]
    eta = scenario.bob_sharpness[p - 1]
    total = 0.0
    for m_dir, n_dir in zip(settings.alice_dirs, settings.bob_dirs):
        total += two_qubit_correlation(rho, m_dir, n_dir)
    return lam * eta * total / settings.n_settings


@dataclass
class SteeringReport:
    """Per-pair steering parameters against the classical bound."""

    n_settings: int
    bound: float
    values: np.ndarray
    violated: np.ndarray = field(init=False)
    margin: np.ndarray = field(init=False)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        self.margin = self.values - self.bound
        self.violated = self.values >= self.bound

    def to_json(self):
        return json.dumps(
            {
                "n_settings": self.n_settings,
                "bound": self.bound,
                "values": self.values.tolist(),
                "violated": self.violated.tolist(),
                "margin": self.margin.tolist(),
            },
            indent=2,
        )

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["alice", "bob", "value", "bound", "violated", "margin"])
        rows, cols = self.values.shape
        for i in range(rows):
            for p in range(cols):
                writer.writerow(
                    [
                        i + 1,
                        p + 1,
                        f"{self.values[i, p]:.6f}",
                        f"{self.bound:.6f}",
                        int(self.violated[i, p]),
                        f"{self.margin[i, p]:.6f}",
                    ]
                )
        return buf.getvalue()


def evaluate(scenario, verify=False):
    """Fill the full S matrix; with verify=True also cross-check every
    entry against the density-matrix route and record the max deviation."""
    values = np.zeros((scenario.n_alices, scenario.n_bobs))
    for i in range(1, scenario.n_alices + 1):
        for p in range(1, scenario.n_bobs + 1):
            values[i - 1, p - 1] = steering_parameter_closed(scenario, i, p)
    report = SteeringReport(
        scenario.n_settings, classical_bound(scenario.n_settings), values
    )
    if verify:
        settings = polyhedron_settings(scenario.n_settings)
        deviation = 0.0
        for i in range(1, scenario.n_alices + 1):
            for p in range(1, scenario.n_bobs + 1):
                oracle = steering_parameter_oracle(scenario, i, p, settings)
                deviation = max(deviation, abs(oracle - values[i - 1, p - 1]))
        report.oracle_deviation = deviation
    return report
