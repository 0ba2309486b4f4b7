"""Numerical laboratory for du/dt = Lap(u) +/- u(e^{u^2}-1) in the radial plane.

The package evolves radial solutions of the exponentially nonlinear heat
equation, verifies quantitative bounds along the runs (global sup bounds in
the defocusing case, finite-time blow-up for nonpositive-energy focusing
data), computes Luxemburg norms in the Orlicz space built from e^{s^2}-1,
constructs singular stationary profiles on the unit disc by shooting, and
demonstrates that evolving from such a profile smooths instantly, giving a
second trajectory from the same initial data.
"""

from .errors import BracketError, NewtonError, OverflowGuardError, SolverError
from .grid import (
    EnergySnapshot,
    RadialField,
    RadialGrid,
    TRUNCATED_PLANE,
    UNIT_DISC,
    build_grid,
    discrete_laplacian,
    energy,
    field_from_function,
    h1_seminorm,
    integrate,
    lp_norm,
    radial_derivative,
)
from .nonlinearity import (
    DEFOCUSING,
    FOCUSING,
    FULL,
    PURE_EXP,
    LipschitzReport,
    MarginReport,
    Nonlinearity,
    lipschitz_ratio_check,
    superquadratic_margin,
)
from .orlicz import (
    EmbeddingReport,
    MoserScanTable,
    RefinementValue,
    embedding_check,
    exp_integrability,
    luxemburg_norm,
    moser_field,
    mt_functional,
    mt_sharpness_scan,
)
from .heat import (
    BLOWUP,
    COMPLETED,
    EvolutionRecord,
    Outcome,
    SolverConfig,
    evolve,
    heat_propagate_exact,
    step_imex,
    write_run_csv,
)
from .diagnostics import (
    ConvexityReport,
    DeGiorgiParams,
    DeGiorgiReport,
    DissipationReport,
    SequenceLemmaCase,
    SequenceLemmaResult,
    convexity_diagnostic,
    degiorgi_diagnostic,
    dissipation_check,
    sequence_lemma_check,
)
from .shooting import (
    CROSSING,
    GUARD_OVERFLOW,
    NO_CROSSING,
    BvpResult,
    Classification,
    ScanTable,
    ShootingTrajectory,
    SingularProfile,
    SingularValidation,
    bisect_boundary,
    extrapolate_boundary,
    integrate_trajectory,
    scan_alpha,
    solve_regular_bvp,
    to_profile,
    validate_singular,
    write_profile_csv,
    write_scan_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
