"""pconfig: two-map interval dynamical systems ("P-configurations").

The toolkit validates and classifies pairs of increasing interval
self-maps with the additive/boundary axioms, computes the unique
conjugating homeomorphism of any regular pair to the standard affine pair
by certified contraction iteration, turns conjugations into continuous
nonlinear solutions of the functional equation
f(t) = f(delta1(t)) + f(delta2(t)), and probes the (non-)smoothness and
non-isomorphism phenomena that come with them.
"""

from .analysis import (
    DyadicCheckTable,
    ExperimentReport,
    QuotientEnclosure,
    QuotientProbe,
    difference_quotients,
    dyadic_fixed_point_check,
    holder_estimate,
    nonregular_experiment,
    oracle_quotient_enclosure,
)
from .cauchy import (
    SolutionCertificate,
    fe_residual,
    induced_system,
    nonlinearity_gap,
    solve_nonlinear,
)
from .conjugacy import (
    BranchInverse,
    ConjugacyReport,
    ConvergenceLog,
    Word,
    build_orbit_grid,
    conjugate,
    conjugate_to_standard,
    contraction_step,
    orbit_oracle,
    orbit_points,
    verify_conjugacy,
)
from .errors import (
    AnchorsNotFixed,
    BadDomain,
    BadSpec,
    BranchNotInvertible,
    BuildFailure,
    DegenerateChoice,
    DyadicCheckFailure,
    InvalidPair,
    MaxIterExceeded,
    NonMonotoneInput,
    NotInC,
    NotInvertible,
    NotStrictlyIncreasing,
    OutOfDomain,
    OutOfRange,
    PConfigError,
    RangeMismatch,
    ScaleBelowGrid,
)
from .families import (
    MapPair,
    SetApprox,
    ValidationReport,
    build_family,
    classify,
    flat_interval,
    guiding_sets,
    perturbed_flat_pair,
    quadratic_pair,
    standard_pair,
    validate,
)
from .funcspace import (
    MonotoneFunction,
    compose,
    eval_inverse,
    evaluate,
    from_csv,
    identity,
    invert,
    make_monotone,
    sup_distance,
    to_csv,
)

__version__ = "0.1.0"
