"""Sugeno integrals on real intervals and their generalized-preinvex upper bounds.

The package splits into a measure layer (intervals, level-set distribution
functions), the integral itself (fixed-point and sup-min routes), sampling
checkers for generalized-convexity hypotheses, the bound equations with their
case dispatch, a small expression DSL, and a CLI that ties them together.
"""

from .measure import (
    GridScan,
    InvalidThreshold,
    LebesgueMeasure,
    MeasureError,
    Monotonicity,
    MonotoneClosedForm,
    DistributionProfile,
    RealInterval,
    ScalarFunction,
    StrategyMismatch,
    affine_root_function,
    constant_function,
    from_callable,
    power_affine_function,
    power_function,
)
from .sugeno import (
    IntegralMethod,
    NegativeFunction,
    NoSignChange,
    SugenoError,
    SugenoResult,
    sugeno_fixed_point,
    sugeno_integral,
    sugeno_supmin,
    sugeno_supmin_exact,
)
from .convexity import (
    AFFINE_ETA,
    ConvexityError,
    DomainEscape,
    EtaMap,
    HypothesisReport,
    InvexInterval,
    NonPositiveFunction,
    Witness,
    check_alpha_m_preinvex,
    check_condition_c,
    check_invex,
    check_m_preinvex,
    check_preinvex,
    check_r_preinvex,
    scaled_eta,
)
from .bounds import (
    BoundCase,
    BoundError,
    BoundInputs,
    BoundResult,
    DivisionByZero,
    FuzzyHHReport,
    MissingScaledValue,
    NoRoot,
    RZero,
    alpha_m_bound,
    classical_hh_preinvex,
    classical_hh_r_rhs,
    r_preinvex_bound,
    solve_beta,
    verify_fuzzy_hh,
)
from .expressions import (
    EvalError,
    ExprSyntaxError,
    evaluate,
    function_from_expression,
    parse_expression,
    to_source,
)

__version__ = "0.1.0"
