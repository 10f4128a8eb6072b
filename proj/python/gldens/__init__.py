"""Degenerate Ginzburg-Landau toolkit.

Thin wrapper over the compiled module: energy specs with rough
coefficients, lattice fields, the constrained relaxation solver, 1D
connection profiles, competitor constructions, the measure recursion and
level-set density measurements.
"""

from _gldens import (  # noqa: F401
    Competitor,
    EnergyParams,
    EnergySpec,
    Grid,
    IterationSchedule,
    Profile1D,
    ScalarField,
    __version__,
    ball_measure,
    cap_height,
    cap_height_strict,
    decay_classify,
    density_curve,
    minimize,
    paraboloid_cap,
    planar_interface,
    plateau_ramp,
    profile_position,
    quadrature_profile,
    radial_shell,
    run_recursion,
    seed_ball_check,
    superlevel_measure,
    threshold_ansatz,
    total_energy,
    validate_spec,
    vanishing_threshold,
)
