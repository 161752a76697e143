"""Tests for chain feasibility, sharpness intervals, purity infima and
the 2-D/3-D region scans."""

import math

import numpy as np
import pytest

from steerseq.solver import (
    InfeasibleError,
    check_3x2_overlap,
    degradation_factor,
    degradation_fixed_point,
    inverse_degradation,
    max_alices,
    min_purity,
    min_sharpness_for_violation,
    region_scan_2x2,
    sharpness_ranges,
    thread_count,
)
from steerseq.steering import Scenario, classical_bound, steering_parameter_closed


def test_degradation_factor_basics():
    assert degradation_factor(0.0, 3) == pytest.approx(1.0)
    assert degradation_factor(1.0, 3) == pytest.approx(1.0 / 3.0)
    assert degradation_factor(1.0, 2) == pytest.approx(0.5)
    # inverse round trip on the decreasing branch
    for lam in (0.2, 0.5, 0.9):
        for n in (2, 3, 16):
            assert inverse_degradation(
                degradation_factor(lam, n), n
            ) == pytest.approx(lam, abs=1e-12)


def test_degradation_fixed_point_two_settings():
    # solves x = (1 + sqrt(1-x^2))/2 exactly at x = 4/5
    assert degradation_fixed_point(2) == pytest.approx(0.8, abs=1e-10)
    fp3 = degradation_fixed_point(3)
    assert fp3 == pytest.approx(degradation_factor(fp3, 3), abs=1e-10)


def test_min_sharpness_examples():
    assert min_sharpness_for_violation(3, 1.0, []) == pytest.approx(
        1 / math.sqrt(3), abs=1e-12
    )
    assert min_sharpness_for_violation(16, 1.0, []) == pytest.approx(0.503)
    assert min_sharpness_for_violation(2, 0.5, []) is None
    # one predecessor raises the requirement
    first = min_sharpness_for_violation(3, 1.0, [])
    second = min_sharpness_for_violation(3, 1.0, [first])
    assert second > first


def test_max_alices_expected_map():
    assert {n: max_alices(n, 1.0) for n in (2, 3, 4, 6, 10, 16)} == {
        2: 2,
        3: 3,
        4: 3,
        6: 4,
        10: 4,
        16: 5,
    }


def test_max_alices_monotone_in_mu():
    for n in (2, 3, 16):
        counts = [max_alices(n, mu) for mu in (0.3, 0.5, 0.7, 0.9, 1.0)]
        assert counts == sorted(counts)
    assert max_alices(3, 0.2) == 0


def test_sharpness_ranges_single_pair():
    intervals = sharpness_ranges(3, 1, 1.0)
    assert [iv.observer for iv in intervals] == ["A1", "B1"]
    for iv in intervals:
        assert iv.lo == pytest.approx(1 / math.sqrt(3), abs=1e-6)
        assert iv.hi == 1.0


def test_sharpness_ranges_two_alices():
    intervals = {iv.observer: iv for iv in sharpness_ranges(2, 2, 1.0)}
    bound = classical_bound(2)
    assert intervals["A1"].lo == pytest.approx(bound, abs=1e-6)
    assert intervals["A1"].hi == pytest.approx(inverse_degradation(bound, 2), abs=1e-6)
    assert intervals["A2"].lo == intervals["A2"].hi == 1.0
    assert intervals["B1"].lo == pytest.approx(bound / 0.8, abs=1e-6)
    assert intervals["B1"].hi == 1.0


def test_sharpness_ranges_infeasible():
    with pytest.raises(InfeasibleError):
        sharpness_ranges(2, 3, 1.0)
    with pytest.raises(InfeasibleError):
        sharpness_ranges(16, 5, 0.9)


def test_interval_nesting_in_chain_length():
    for n in (6, 10, 16):
        previous = None
        for n_alices in range(2, max_alices(n, 1.0) + 1):
            first = sharpness_ranges(n, n_alices, 1.0)[0]
            if previous is not None:
                assert first.lo >= previous.lo - 1e-9
                assert first.hi <= previous.hi + 1e-9
            previous = first


def _chain_stage_values(n, lams):
    values = []
    prefactor = 1.0
    for lam in lams:
        values.append(prefactor * lam)
        prefactor *= degradation_factor(lam, n)
    return values


def test_endpoints_are_boundary_solutions():
    # substituting an interval endpoint back, the binding stage sits on
    # the classical bound
    for n, n_alices in ((6, 3), (6, 4), (16, 5), (10, 4)):
        bound = classical_bound(n)
        intervals = sharpness_ranges(n, n_alices, 1.0)
        for j, interval in enumerate(intervals[:-2]):
            for endpoint in (interval.lo, interval.hi):
                if endpoint >= 1.0:
                    continue
                # rebuild the chain: greedy predecessors, endpoint at j,
                # greedy successors, last sharp
                lams = []
                prefactor = 1.0
                for k in range(j):
                    lam = bound / prefactor
                    lams.append(lam)
                    prefactor *= degradation_factor(lam, n)
                lams.append(endpoint)
                prefactor *= degradation_factor(endpoint, n)
                for k in range(j + 1, n_alices - 1):
                    lam = min(bound / prefactor, 1.0)
                    lams.append(lam)
                    prefactor *= degradation_factor(lam, n)
                lams.append(1.0)
                stages = _chain_stage_values(n, lams)
                assert min(stages) >= bound - 1e-5
                assert min(abs(s - bound) for s in stages) <= 1e-5


def test_closed_form_agrees_with_scenario_evaluation():
    # the solver's stage values match the steering module's closed forms
    n = 6
    lams = (0.55, 0.62, 0.71, 1.0)
    scenario = Scenario(1.0, n, lams, (1.0,))
    stages = _chain_stage_values(n, lams)
    for i, expected in enumerate(stages, start=1):
        assert steering_parameter_closed(scenario, i, 1) == pytest.approx(expected)


def test_min_purity_single_pair_equals_bound():
    for n in (2, 3, 4, 6, 10, 16):
        assert min_purity(n, 1, 1) == pytest.approx(classical_bound(n), abs=1e-4)


def test_min_purity_two_alices_closed_form():
    # the infimum solves mu * fixed_point = bound
    for n in (2, 3, 16):
        expected = classical_bound(n) / degradation_fixed_point(n)
        assert min_purity(n, 2, 1) == pytest.approx(expected, abs=1e-4)


def test_min_purity_monotone_in_chain_length():
    values = [min_purity(16, k, 1) for k in range(1, 6)]
    assert values == sorted(values)


def test_min_purity_infeasible():
    with pytest.raises(InfeasibleError):
        min_purity(2, 3, 1)
    with pytest.raises(InfeasibleError):
        min_purity(2, 2, 2)


def test_min_purity_two_bobs_above_single_bob():
    two_bob = min_purity(3, 2, 2, grid_step=0.005)
    assert two_bob > min_purity(3, 2, 1)
    assert two_bob <= 1.0


def test_region_scan_symmetry_and_extent():
    scan = region_scan_2x2(3, 1.0, 0.004)
    assert np.array_equal(scan.in_region, scan.in_region.T)
    lo, hi = scan.coordinate_extent()
    assert lo == pytest.approx(0.7560, abs=0.004 + 1e-9)
    assert hi == pytest.approx(0.8025, abs=0.004 + 1e-9)
    dlo, dhi = scan.diagonal_slice()
    assert lo - 1e-9 <= dlo <= dhi <= hi + 1e-9
    assert scan.area == pytest.approx(scan.in_region.sum() * 0.004**2)


def test_region_scan_cells_and_rows():
    scan = region_scan_2x2(3, 1.0, 0.01)
    cells = scan.cells
    assert cells.shape[1] == 2
    rows = list(scan.to_csv_rows())
    assert len(rows) == len(cells)
    bound = classical_bound(3)
    for row in rows:
        assert all(v >= bound for v in row[2:6])


def test_region_scan_empty_for_two_settings():
    scan = region_scan_2x2(2, 1.0, 0.01)
    assert not scan.in_region.any()
    assert scan.coordinate_extent() is None
    assert scan.diagonal_slice() is None


def test_region_boundary_curves_inside_unit_square():
    scan = region_scan_2x2(3, 1.0, 0.01)
    curves = scan.boundary_curves()
    assert set(curves) == {"S11", "S12", "S21", "S22"}
    for pts in curves.values():
        assert pts.size > 0
        assert np.all(pts >= -1e-12)
        assert np.all(pts <= 1.0 + 1e-12)


def test_check_3x2_overlap_coarse():
    assert check_3x2_overlap(16, 1.0, 0.02) is False
    assert check_3x2_overlap(16, 1.0, 0.02, n_bobs=1) is True
    assert check_3x2_overlap(3, 1.0, 0.02) is False


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("STEERSEQ_THREADS", "2")
    assert thread_count() == 2
    monkeypatch.setenv("STEERSEQ_THREADS", "zero")
    with pytest.raises(ValueError):
        thread_count()
    monkeypatch.setenv("STEERSEQ_THREADS", "0")
    with pytest.raises(ValueError):
        thread_count()
    monkeypatch.delenv("STEERSEQ_THREADS")
    assert thread_count() >= 1


def test_scan_results_independent_of_thread_count(monkeypatch):
    monkeypatch.setenv("STEERSEQ_THREADS", "1")
    one = region_scan_2x2(3, 1.0, 0.01)
    monkeypatch.setenv("STEERSEQ_THREADS", "3")
    three = region_scan_2x2(3, 1.0, 0.01)
    assert np.array_equal(one.in_region, three.in_region)
    for key in one.s_values:
        assert np.array_equal(one.s_values[key], three.s_values[key])
