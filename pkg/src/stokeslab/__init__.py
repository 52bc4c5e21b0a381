"""Spectral toolkit for periodic traveling water waves in holomorphic coordinates."""

from .babenko import (
    ConvergenceError,
    Diagnostics,
    SingularJacobianError,
    SolverConfig,
    SurfaceCurve,
    WaveState,
    crest_trough_height,
    deviation,
    diagnose,
    fixed_point_map,
    jacobian_apply,
    newton_solve,
    physical_surface,
    residual,
)
from .branch_io import (
    BranchParseError,
    export_fit_csv,
    export_plot_data,
    load_branch,
    read_profile_csv,
    store_branch,
    write_profile_csv,
)
from .continuation import BranchEntry, WaveBranch, continue_branch
from .exponents import (
    ExponentRoots,
    LogCaseError,
    PoleProximityError,
    find_exponents,
    grant_lhs,
    predicted_action_coefficient,
)
from .fits import (
    CancellationReport,
    LemmaReport,
    LogCaseReport,
    SingularityFit,
    cancellation_check,
    crest_fit,
    lemma_remainder_report,
    log_case_check,
    measured_action_coefficient,
)
from .grids import Grid, PeriodicProfile, make_grid, profile_from_cosines, sample_power
from .operators import (
    DepthMode,
    SpectralMultiplier,
    apply_multiplier,
    dealiased_product,
    derivative_multiplier,
    hilbert_multiplier,
    hilbert_pv_quadrature,
    k_multiplier,
)

__version__ = "0.1.0"

__all__ = [
    "BranchEntry",
    "BranchParseError",
    "CancellationReport",
    "ConvergenceError",
    "DepthMode",
    "Diagnostics",
    "ExponentRoots",
    "Grid",
    "LemmaReport",
    "LogCaseError",
    "LogCaseReport",
    "PeriodicProfile",
    "PoleProximityError",
    "SingularJacobianError",
    "SingularityFit",
    "SolverConfig",
    "SpectralMultiplier",
    "SurfaceCurve",
    "WaveBranch",
    "WaveState",
    "apply_multiplier",
    "cancellation_check",
    "continue_branch",
    "crest_fit",
    "crest_trough_height",
    "dealiased_product",
    "derivative_multiplier",
    "deviation",
    "diagnose",
    "export_fit_csv",
    "export_plot_data",
    "find_exponents",
    "fixed_point_map",
    "grant_lhs",
    "hilbert_multiplier",
    "hilbert_pv_quadrature",
    "jacobian_apply",
    "k_multiplier",
    "lemma_remainder_report",
    "load_branch",
    "log_case_check",
    "make_grid",
    "measured_action_coefficient",
    "newton_solve",
    "physical_surface",
    "predicted_action_coefficient",
    "profile_from_cosines",
    "read_profile_csv",
    "residual",
    "sample_power",
    "store_branch",
    "write_profile_csv",
]
