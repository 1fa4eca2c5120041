"""Pointer-state overlap dynamics and measurement-apparatus classification."""

from .classify import (
    AccessibilityBudget,
    AccessibilityReport,
    ObserverModel,
    OrderVsDisorderReport,
    Placement,
    QualityOrder,
    RegionSpec,
    ReliabilityReport,
    ReliabilityVerdict,
    SizeVerdict,
    TruncatedGaussian,
    UniformDistribution,
    accessibility,
    compare_quality,
    order_vs_disorder_report,
    place_in_diagram,
    reliability,
    summarize_apparatus,
    windows_contain,
)
from .errors import (
    CapacityError,
    GridResolutionWarning,
    ObserverWindowError,
    ValidationError,
)
from .info import (
    GeneralState,
    InfoReport,
    entropy,
    mutual_info_prc,
    perturbed_eigenvalues,
    wprc_info_deficit,
)
from .model import (
    ApparatusSpec,
    BlochVector,
    DisorderedCouplings,
    EquatorialInits,
    FixedInits,
    OrderedCouplings,
    QubitInit,
    RandomInits,
    SystemInit,
    availability,
    availability_grid,
    bloch_vector,
    long_time_variance,
    make_apparatus,
    overlap,
    overlap_grid,
    perturbative_overlap,
    reduced_system_state,
    sample_availability,
)
from .oracle import (
    GeneralOzawaEvolver,
    GeneralOzawaResult,
    GeneralOzawaSpec,
    StateVector,
    evolve_full,
    evolve_general_ozawa,
    partial_trace_system,
    qubit_model_as_general,
)
from .windows import (
    LongestWindow,
    RevivalReport,
    TimeSet,
    WindowConfig,
    longest_window,
    ordered_wprc_interval,
    prc_times,
    revivals,
    wprc_set,
)

__version__ = "0.1.0"

__all__ = [
    "AccessibilityBudget",
    "AccessibilityReport",
    "ApparatusSpec",
    "BlochVector",
    "CapacityError",
    "DisorderedCouplings",
    "EquatorialInits",
    "FixedInits",
    "GeneralOzawaEvolver",
    "GeneralOzawaResult",
    "GeneralOzawaSpec",
    "GeneralState",
    "GridResolutionWarning",
    "InfoReport",
    "LongestWindow",
    "ObserverModel",
    "ObserverWindowError",
    "OrderVsDisorderReport",
    "OrderedCouplings",
    "Placement",
    "QualityOrder",
    "QubitInit",
    "RandomInits",
    "RegionSpec",
    "ReliabilityReport",
    "ReliabilityVerdict",
    "RevivalReport",
    "SizeVerdict",
    "StateVector",
    "SystemInit",
    "TimeSet",
    "TruncatedGaussian",
    "UniformDistribution",
    "ValidationError",
    "WindowConfig",
    "accessibility",
    "availability",
    "availability_grid",
    "bloch_vector",
    "compare_quality",
    "entropy",
    "evolve_full",
    "evolve_general_ozawa",
    "long_time_variance",
    "longest_window",
    "make_apparatus",
    "mutual_info_prc",
    "order_vs_disorder_report",
    "ordered_wprc_interval",
    "overlap",
    "overlap_grid",
    "partial_trace_system",
    "perturbative_overlap",
    "perturbed_eigenvalues",
    "place_in_diagram",
    "prc_times",
    "qubit_model_as_general",
    "reduced_system_state",
    "reliability",
    "revivals",
    "sample_availability",
    "summarize_apparatus",
    "windows_contain",
    "wprc_info_deficit",
    "wprc_set",
]
