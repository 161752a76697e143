"""Sequential-steering simulation toolkit for two-qubit Werner states."""

from .quantumstate import werner_state, nearest_werner, two_qubit_correlation
from .measurements import (
    SettingSet,
    UnsharpMeasurement,
    polyhedron_settings,
    effect,
    kraus,
    luders_one_side,
    luders_matched_pair,
)
from .steering import (
    CLASSICAL_BOUNDS,
    Scenario,
    SteeringReport,
    classical_bound,
    evaluate,
    steering_parameter_closed,
    steering_parameter_oracle,
)
from .solver import (
    InfeasibleError,
    RegionScan,
    SharpnessInterval,
    check_3x2_overlap,
    max_alices,
    min_purity,
    min_sharpness_for_violation,
    region_scan_2x2,
    sharpness_ranges,
)

__all__ = [
    "werner_state",
    "nearest_werner",
    "two_qubit_correlation",
    "SettingSet",
    "UnsharpMeasurement",
    "polyhedron_settings",
    "effect",
    "kraus",
    "luders_one_side",
    "luders_matched_pair",
    "CLASSICAL_BOUNDS",
    "Scenario",
    "SteeringReport",
    "classical_bound",
    "evaluate",
    "steering_parameter_closed",
    "steering_parameter_oracle",
    "InfeasibleError",
    "RegionScan",
    "SharpnessInterval",
    "check_3x2_overlap",
    "max_alices",
    "min_purity",
    "min_sharpness_for_violation",
    "region_scan_2x2",
    "sharpness_ranges",
]

__version__ = "0.1.0"
