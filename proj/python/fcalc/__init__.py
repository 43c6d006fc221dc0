"""Numerical fractal calculus: Cantor covers, staircase functions,
gamma-dimension estimation, fractal derivatives/integrals, alpha-order ODE
solvers, and the application models built on them."""

from fcalc._core import (  # noqa: F401
    AlphaOrder,
    CoolingParams,
    CurveApprox,
    EscapeParams,
    EscapeProfile,
    IntegralResult,
    InterestParams,
    IntervalCover,
    MassEstimate,
    SolutionTrace,
    StaircaseTable,
    TraceSample,
    build_cantor_cover,
    build_koch,
    build_rise,
    build_staircase,
    coarse_mass,
    cooling_temperature,
    curve_gamma_dimension,
    curve_mass,
    escape_profile,
    estimate_k,
    estimate_time_of_death,
    f_alpha_derivative,
    f_alpha_integral,
    flag,
    gamma_dimension,
    interest_balance,
    mass_function,
    solve_bernoulli,
    solve_linear,
    solve_numeric,
    solve_separable,
    staircase_eval,
    staircase_invert,
)

__all__ = [name for name in dir() if not name.startswith("_")]
