"""Feasibility analysis for chains of sequential observers.

Answers the headline questions: how many Alices can violate in a row,
over which sharpness intervals, down to which initial purity, and
whether the two-Bob variants admit a common violation region. All
searches run on the multiplicative closed forms; grid scans honour the
STEERSEQ_THREADS environment variable and merge results in index order
so the output never depends on scheduling.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import math
import os

import numpy as np

from .steering import classical_bound

SHARPNESS_TOL = 1e-6
PURITY_TOL = 1e-5
DEFAULT_2D_STEP = 0.002
DEFAULT_3D_STEP = 0.005


class InfeasibleError(ValueError):
    """Raised when no sharpness assignment can violate at every stage."""


def thread_count():
    """Scan parallelism, overridable via STEERSEQ_THREADS (integer >= 1)."""
    raw = os.environ.get("STEERSEQ_THREADS")
    if raw is None:
        return min(4, os.cpu_count() or 1)
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError("STEERSEQ_THREADS must be an integer") from exc
    if value < 1:
        raise ValueError("STEERSEQ_THREADS must be >= 1")
    return value


def _branching(n):
    return 2.0 if n == 2 else 3.0


def degradation_factor(sharpness, n):
    """Shrink factor applied to the usable correlation by one unsharp
    observer who already measured: (1 + (c-1)sqrt(1-x^2)) / c."""
    c = _branching(n)
    quality = math.sqrt(max(0.0, 1.0 - sharpness * sharpness))
    return (1.0 + (c - 1.0) * quality) / c


def inverse_degradation(value, n):
    """Largest sharpness whose degradation factor still reaches `value`."""
    c = _branching(n)
    quality = (c * value - 1.0) / (c - 1.0)
    if quality >= 1.0:
        return 0.0
    if quality <= 0.0:
        return 1.0
    return math.sqrt(1.0 - quality * quality)


def degradation_fixed_point(n):
    """Sharpness equal to its own degradation factor: the maximin point
    of min(x, degradation_factor(x)); 0.8 for two settings."""
    lo, hi = 0.0, 1.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if mid < degradation_factor(mid, n):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def min_sharpness_for_violation(n, mu, predecessors, eta=1.0):
    """Smallest Alice sharpness that still violates given the fixed
    sharpness of the earlier Alices (Bob at `eta`); None if impossible."""
    prefactor = mu * eta
    for lam in predecessors:
        prefactor *= degradation_factor(lam, n)
    if prefactor <= 0.0:
        return None
    lam = classical_bound(n) / prefactor
    if lam > 1.0 + 1e-12:
        return None
    return min(lam, 1.0)


def max_alices(n, mu):
    """Number of Alices a greedy minimal-sharpness chain can sustain."""
    bound = classical_bound(n)
    prefactor = mu
    count = 0
    while True:
        if prefactor < bound - 1e-15:
            return count
        count += 1
        prefactor *= degradation_factor(min(bound / prefactor, 1.0), n)


@dataclass(frozen=True)
class SharpnessInterval:
    """Feasible sharpness range for one labelled observer."""

    observer: str
    lo: float
    hi: float

    def __post_init__(self):
        if not 0.0 <= self.lo <= self.hi <= 1.0 + 1e-12:
            raise ValueError(f"invalid interval for {self.observer}")

    @property
    def width(self):
        return self.hi - self.lo


def _greedy_prefactor(n, mu, stages):
    """Prefactor left after `stages` greedy minimal-sharpness Alices."""
    bound = classical_bound(n)
    prefactor = mu
    for _ in range(stages):
        lam = bound / prefactor
        if lam > 1.0 + 1e-12:
            return None
        prefactor *= degradation_factor(lam, n)
    return prefactor


def _chain_survives(n, prefactor, remaining):
    """Can `remaining` more Alices (last one sharp) all violate when the
    running prefactor is `prefactor`? Successors adapt greedily."""
    bound = classical_bound(n)
    for _ in range(remaining - 1):
        lam = bound / prefactor
        if lam > 1.0 + 1e-12:
            return False
        prefactor *= degradation_factor(lam, n)
    return prefactor >= bound - 1e-15


def sharpness_ranges(n, n_alices, mu=1.0):
    """Feasible interval for every observer in an n_alices/1-Bob chain.

    Conventions: the last Alice is sharp once there are two or more
    Alices; Bob is sharp once there are three or more, otherwise his
    sharpness is ranged. Each earlier Alice's interval holds the values
    for which the chain still violates at every stage when her
    predecessors sit at their greedy minima and her successors adapt
    greedily.
    """
    bound = classical_bound(n)
    if mu <= 0.0 or n_alices < 1:
        raise ValueError("need mu > 0 and at least one Alice")
    if max_alices(n, mu) < n_alices:
        raise InfeasibleError(
            f"{n_alices} Alices cannot all violate at n={n}, mu={mu}"
        )
    lower0 = bound / mu
    if n_alices == 1:
        interval = SharpnessInterval("A1", min(lower0, 1.0), 1.0)
        return [interval, SharpnessInterval("B1", interval.lo, 1.0)]
    if n_alices == 2:
        fixed = degradation_fixed_point(n)
        intervals = [
            SharpnessInterval(
                "A1", lower0, inverse_degradation(lower0, n)
            ),
            SharpnessInterval("A2", 1.0, 1.0),
            SharpnessInterval("B1", min(bound / (mu * fixed), 1.0), 1.0),
        ]
        return intervals
    intervals = []
    for j in range(1, n_alices):
        prefactor = _greedy_prefactor(n, mu, j - 1)
        lower = bound / prefactor

        def feasible(lam_j):
            if prefactor * lam_j < bound - 1e-15:
                return False
            after = prefactor * degradation_factor(lam_j, n)
            return _chain_survives(n, after, n_alices - j)

        if feasible(1.0):
            upper = 1.0
        else:
            lo, hi = lower, 1.0
            while hi - lo > SHARPNESS_TOL:
                mid = 0.5 * (lo + hi)
                if feasible(mid):
                    lo = mid
                else:
                    hi = mid
            upper = lo
        intervals.append(SharpnessInterval(f"A{j}", min(lower, upper), upper))
    intervals.append(SharpnessInterval(f"A{n_alices}", 1.0, 1.0))
    intervals.append(SharpnessInterval("B1", 1.0, 1.0))
    return intervals


def _pair_values_2x2(n, mu, lam, eta):
    """Vectorized S values for the four pairs of the 2-Alice/2-Bob
    layout with sharp last observers (lam2 = eta2 = 1)."""
    c = _branching(n)
    lam = np.asarray(lam, dtype=float)
    eta = np.asarray(eta, dtype=float)
    q_lam = np.sqrt(np.clip(1.0 - lam * lam, 0.0, None))
    q_eta = np.sqrt(np.clip(1.0 - eta * eta, 0.0, None))
    g_lam = (1.0 + (c - 1.0) * q_lam) / c
    g_eta = (1.0 + (c - 1.0) * q_eta) / c
    return {
        "S11": mu * lam * eta,
        "S21": mu * eta * g_lam,
        "S12": mu * lam * g_eta,
        "S22": mu * (1.0 + (c - 1.0) * q_lam * q_eta) / c,
    }


@dataclass
class RegionScan:
    """Grid scan of the 2-Alice/2-Bob joint violation region."""

    n_settings: int
    mu: float
    grid_step: float
    lam_axis: np.ndarray
    eta_axis: np.ndarray
    s_values: dict
    in_region: np.ndarray
    bound: float = field(init=False)

    def __post_init__(self):
        self.bound = classical_bound(self.n_settings)

    @property
    def cells(self):
        """In-region grid points as an array of (lam1, eta1) rows,
        ordered lexicographically."""
        ii, jj = np.nonzero(self.in_region)
        return np.column_stack([self.lam_axis[ii], self.eta_axis[jj]])

    @property
    def area(self):
        """Region area estimate: in-region cell count times step^2."""
        return float(self.in_region.sum()) * self.grid_step ** 2

    def coordinate_extent(self):
        """(min, max) of lam1 over the region (equals eta1's extent by
        the exchange symmetry); None when the region is empty."""
        ii, _ = np.nonzero(self.in_region)
        if ii.size == 0:
            return None
        return float(self.lam_axis[ii.min()]), float(self.lam_axis[ii.max()])

    def diagonal_slice(self):
        """(min, max) of lam1 along the lam1 = eta1 slice; None if the
        slice misses the region."""
        k = min(len(self.lam_axis), len(self.eta_axis))
        diag = np.diagonal(self.in_region)[:k]
        hits = np.nonzero(diag)[0]
        if hits.size == 0:
            return None
        return float(self.lam_axis[hits.min()]), float(self.lam_axis[hits.max()])

    def boundary_curves(self):
        """Iso-lines S = bound per pair, as arrays of (lam1, eta1)."""
        c = _branching(self.n_settings)
        bound = self.bound
        mu = self.mu
        lam = np.linspace(1e-9, 1.0, 2001)
        q_lam = np.sqrt(np.clip(1.0 - lam * lam, 0.0, None))
        g_lam = (1.0 + (c - 1.0) * q_lam) / c
        curves = {}
        curves["S11"] = np.column_stack([lam, bound / (mu * lam)])
        curves["S21"] = np.column_stack([lam, bound / (mu * g_lam)])
        need = bound / (mu * lam)
        quality = np.clip((c * need - 1.0) / (c - 1.0), 0.0, None)
        eta = np.where(
            quality < 1.0, np.sqrt(np.clip(1.0 - quality * quality, 0.0, None)), np.nan
        )
        curves["S12"] = np.column_stack([lam, eta])
        target = (c * bound / mu - 1.0) / (c - 1.0)
        if target > 0.0:
            with np.errstate(divide="ignore"):
                ratio = np.where(q_lam > 0.0, target / q_lam, np.inf)
            eta22 = np.where(
                ratio <= 1.0, np.sqrt(np.clip(1.0 - ratio * ratio, 0.0, None)), np.nan
            )
        else:
            eta22 = np.full_like(lam, np.nan)
        curves["S22"] = np.column_stack([lam, eta22])
        out = {}
        for key, pts in curves.items():
            keep = np.isfinite(pts[:, 1]) & (pts[:, 1] >= 0.0) & (pts[:, 1] <= 1.0)
            out[key] = pts[keep]
        return out

    def to_csv_rows(self):
        """One row per in-region cell: lam1, eta1, four S values, flag."""
        ii, jj = np.nonzero(self.in_region)
        for i, j in zip(ii.tolist(), jj.tolist()):
            yield (
                self.lam_axis[i],
                self.eta_axis[j],
                self.s_values["S11"][i, j],
                self.s_values["S12"][i, j],
                self.s_values["S21"][i, j],
                self.s_values["S22"][i, j],
                1,
            )


def _grid_axis(grid_step):
    count = int(round(1.0 / grid_step))
    return np.linspace(0.0, 1.0, count + 1)


def region_scan_2x2(n, mu, grid_step=DEFAULT_2D_STEP):
    """Scan (lam1, eta1) on a uniform grid and keep the cells where all
    four pairs violate; lam2 = eta2 = 1."""
    bound = classical_bound(n)
    axis = _grid_axis(grid_step)
    lam_grid, eta_grid = np.meshgrid(axis, axis, indexing="ij")

    def compute(chunk):
        return _pair_values_2x2(n, mu, lam_grid[chunk], eta_grid[chunk])

    chunks = np.array_split(np.arange(len(axis)), max(1, thread_count()))
    chunks = [c for c in chunks if c.size]
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(compute, chunks))
    s_values = {
        key: np.concatenate([part[key] for part in parts], axis=0)
        for key in ("S11", "S12", "S21", "S22")
    }
    in_region = np.ones_like(lam_grid, dtype=bool)
    for key in s_values:
        in_region &= s_values[key] >= bound
    return RegionScan(n, mu, grid_step, axis, axis, s_values, in_region)


def check_3x2_overlap(n, mu, grid_step=DEFAULT_3D_STEP, n_bobs=2):
    """Whether some (lam1, lam2, eta1) makes all monitored pairs violate
    simultaneously; lam3 = 1 and eta2 = 1 are held sharp. With
    n_bobs=1 only the three single-Bob pairs are monitored."""
    if n_bobs not in (1, 2):
        raise ValueError("n_bobs must be 1 or 2")
    bound = classical_bound(n)
    c = _branching(n)
    axis = _grid_axis(grid_step)
    lam2, eta1 = np.meshgrid(axis, axis, indexing="ij")
    q2 = np.sqrt(np.clip(1.0 - lam2 * lam2, 0.0, None))
    qe = np.sqrt(np.clip(1.0 - eta1 * eta1, 0.0, None))
    g2 = (1.0 + (c - 1.0) * q2) / c
    ge = (1.0 + (c - 1.0) * qe) / c

    def probe(lam1):
        q1 = math.sqrt(max(0.0, 1.0 - lam1 * lam1))
        g1 = (1.0 + (c - 1.0) * q1) / c
        ok = (mu * lam1 * eta1 >= bound)
        ok &= mu * lam2 * eta1 * g1 >= bound
        ok &= mu * eta1 * g1 * g2 >= bound
        if n_bobs == 2:
            ok &= mu * lam1 * ge >= bound
            ok &= mu * lam2 * (1.0 + (c - 1.0) * q1 * qe) / c >= bound
            ok &= (
                mu
                * (1.0 + (c - 1.0) * q2 * qe)
                * (1.0 + (c - 1.0) * q1)
                / c ** 2
                >= bound
            )
        return bool(ok.any())

    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        hits = list(pool.map(probe, axis.tolist()))
    return any(hits)


def _feasible_two_bobs(n, mu, n_alices, grid_step):
    axis = _grid_axis(grid_step)
    lam_grid, eta_grid = np.meshgrid(axis, axis, indexing="ij")
    bound = classical_bound(n)
    values = _pair_values_2x2(n, mu, lam_grid, eta_grid)
    keys = ("S11", "S12") if n_alices == 1 else ("S11", "S12", "S21", "S22")
    ok = np.ones_like(lam_grid, dtype=bool)
    for key in keys:
        ok &= values[key] >= bound
    return bool(ok.any())


def min_purity(n, n_alices, n_bobs=1, grid_step=DEFAULT_2D_STEP):
    """Infimum initial purity for which a feasible sharpness assignment
    makes every monitored pair violate; bisection to 1e-5."""
    if n_bobs == 1:
        def feasible(mu):
            return max_alices(n, mu) >= n_alices
    elif n_bobs == 2:
        if n_alices not in (1, 2):
            raise ValueError("two-Bob layouts support 1 or 2 Alices")

        def feasible(mu):
            return _feasible_two_bobs(n, mu, n_alices, grid_step)
    else:
        raise ValueError("n_bobs must be 1 or 2")
    if not feasible(1.0):
        raise InfeasibleError(
            f"no violating assignment at mu=1 for n={n}, "
            f"{n_alices} Alices, {n_bobs} Bobs"
        )
    lo, hi = 0.0, 1.0
    while hi - lo > PURITY_TOL:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi
