"""Best finitely supported approximations of one-dimensional distributions.

Solvers and exact evaluators for the Levy, L^r-Kantorovich, Kolmogorov, and
Fortet-Mourier distances between a law on the line and measures with finitely
many atoms, with closed forms for the significand (first-digit) law, a grid
oracle for independent verification, and quantization-coefficient asymptotics.
"""

from .coefficients import (
    CoefficientTable,
    benford_coefficient,
    benford_table,
    cantor_exponent,
    estimate_coefficient,
    known_coefficient,
    limiting_behavior,
    solve_distance,
)
from .distributions import (
    Benford,
    Beta21,
    Dist,
    Exponential,
    FiniteMeasure,
    Interval,
    InvalidInputError,
    InvalidParameterError,
    InverseCantor,
    Mixture,
    finite_to_dist,
    from_samples,
    make_benford,
    make_beta21,
    make_exponential,
    make_inverse_cantor,
    make_uniform,
    significand,
)
from .kantorovich import (
    asymptotic_dr_family,
    benford_best_d1,
    benford_best_dr_shooting,
    best_dr_general,
    best_fortet_mourier,
    best_given_positions_d1,
    best_given_positions_dr,
    best_given_weights_d1,
    best_given_weights_dr,
    dr_distance,
    GaFunction,
)
from .kolmogorov import (
    best_given_positions_K,
    best_given_weights_K,
    best_unconstrained_K,
    s_map,
    unconstrained_level_K,
)
from .levy import (
    benford_best_closed_form,
    benford_uniform_level,
    benford_unconstrained_level,
    best_given_positions,
    best_given_weights,
    best_unconstrained,
    levy_coefficient_check,
    t_map,
    unconstrained_level,
    uniform_weights,
)
from .metrics import (
    EllEvaluation,
    MetricKind,
    MonotoneFn,
    ell,
    ell_star,
    evaluate_distance,
    fortet_mourier,
    kantorovich_distance,
    kappa,
    kolmogorov_distance,
    levy_distance,
    power_pushforward,
)
from .numerics import NonConvergenceError
from .oracle import GridSpec, brute_force_best, certificate_violation, definitional_levy
from .results import (
    ApproxResult,
    Diagnostics,
    KantorovichCertificate,
    KolmogorovCertificate,
    LevyCertificate,
    LloydState,
)

__version__ = "0.1.0"
