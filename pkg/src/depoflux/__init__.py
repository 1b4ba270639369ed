"""depoflux: exact Riemann solvers for a two-equation deposition model with
flux parameter eps, the measure-valued solutions of its eps -> 0 limit, the
quantitative concentration analysis connecting the two, and a staggered
central-scheme simulator that reproduces the concentration numerically."""

from .central import (
    Grid,
    InstabilityError,
    SimConfig,
    SimSnapshot,
    delta_weight_estimate,
    flux,
    initial_averages,
    kernel_name,
    l1_distance,
    max_wave_speed,
    run,
    shock_locations,
    step,
)
from .concentration import (
    ConvergenceReport,
    LimitTable,
    LimitTargets,
    NotCoveredError,
    Regime,
    SweepRow,
    Threshold,
    epsilon_threshold,
    flat_bump,
    limit_table_csv,
    limit_table_dict,
    limit_targets,
    speed_gap_closed_form,
    sweep,
    verify_distributional_limit,
    weak_form_residual,
)
from .limit_system import (
    Contact,
    DeltaShock,
    DeltaWave,
    LimitFan,
    LimitPattern,
    LimitShock,
    LimitSolution,
    MeasureState,
    entropy_check,
    evaluate_limit,
    grh_residual,
    pair_with_test_function,
    solve_riemann_limit,
)
from .riemann import (
    Fan,
    Invariants,
    NotAdmissibleError,
    RiemannSolution,
    Shock,
    WavePattern,
    classify,
    eigenvalues,
    eigenvectors,
    evaluate,
    intermediate_state,
    riemann_invariants,
    shock_speed_1,
    shock_speed_2,
    solve_riemann,
    state_from_invariants,
)
from .states import DomainError, State, as_state, within

__version__ = "0.1.0"

__all__ = [
    "Contact",
    "ConvergenceReport",
    "DeltaShock",
    "DeltaWave",
    "DomainError",
    "Fan",
    "Grid",
    "InstabilityError",
    "Invariants",
    "LimitFan",
    "LimitPattern",
    "LimitShock",
    "LimitSolution",
    "LimitTable",
    "LimitTargets",
    "MeasureState",
    "NotAdmissibleError",
    "NotCoveredError",
    "Regime",
    "RiemannSolution",
    "Shock",
    "SimConfig",
    "SimSnapshot",
    "State",
    "SweepRow",
    "Threshold",
    "WavePattern",
    "as_state",
    "classify",
    "delta_weight_estimate",
    "eigenvalues",
    "eigenvectors",
    "entropy_check",
    "epsilon_threshold",
    "evaluate",
    "evaluate_limit",
    "flat_bump",
    "flux",
    "grh_residual",
    "initial_averages",
    "intermediate_state",
    "kernel_name",
    "l1_distance",
    "limit_table_csv",
    "limit_table_dict",
    "limit_targets",
    "max_wave_speed",
    "pair_with_test_function",
    "riemann_invariants",
    "run",
    "shock_locations",
    "shock_speed_1",
    "shock_speed_2",
    "solve_riemann",
    "solve_riemann_limit",
    "speed_gap_closed_form",
    "state_from_invariants",
    "step",
    "sweep",
    "verify_distributional_limit",
    "weak_form_residual",
    "within",
]
