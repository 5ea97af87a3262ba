"""Exact (1+1) EA runtime analysis on functions of unitation."""

from ._unilab import (  # noqa: F401
    ConstructionError,
    LemmaCheck,
    NoMinimumError,
    OptRateResult,
    SingularSystemError,
    SteppingStoneProfile,
    TrajectoryStats,
    UnitationFitness,
    __version__,
    alpha,
    always_accept_stone_hitting_time,
    build_dss,
    closed_form_s,
    convergence_study,
    estimate_runtime,
    expected_runtime,
    expected_runtime_exact,
    jump,
    needle,
    needle_closed_form,
    needle_closed_form_exact,
    one_step_optimum_prob,
    onemax,
    optimal_rate,
    run_trajectory,
    runtime_curve,
    stone_step_pattern_probability,
    stone_step_probability,
    transition_pmf,
    transition_pmf_exact,
    verify_analytic_lemmas,
)
