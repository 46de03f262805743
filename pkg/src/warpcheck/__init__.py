"""warpcheck: chart-level differential geometry with soliton verification suites."""

__version__ = "0.1.0"

from .errors import (
    ArityError,
    DomainError,
    EmptyDomainError,
    EngineError,
    ExprSyntaxError,
    HypothesisFailedError,
    NameClashError,
    NonPositiveWarpingError,
    ScenarioParseError,
    ScenarioValidationError,
    SignatureError,
    SingularMetricError,
    UnknownSymbolError,
)
from .exprs import (
    Binary,
    Constant,
    Coord,
    Expr,
    Jet2,
    Unary,
    differentiate,
    eval_jet2,
    eval_value,
    parse_expr,
    substitute,
    to_string,
)
from .manifolds import (
    ChartManifold,
    SamplePlan,
    ScalarField,
    SolitonParams,
    VectorField,
    classify_lambda,
    mu_value,
    sample_points,
    validate_chart,
)
from .curvature import (
    FdCheck,
    MetricJet,
    christoffel,
    covariant_derivative_vector,
    fd_cross_check,
    gradient_at,
    gradient_field,
    hessian,
    laplacian_gradnorm,
    lie_derivative_metric,
    metric_jet,
    ricci,
    riemann,
    scalar_curvature,
    sectional_curvature,
)
from .warped import (
    WarpedProduct,
    base_soliton_field,
    build_grw,
    build_warped,
    lie_split_residual,
    lift_base_vector,
    lift_fiber_vector,
    lift_sum,
    tilde_f,
    warped_ricci_identities,
    warping_rewrite_defect,
    warping_rewrite_residual,
)
from .solitons import (
    FieldClass,
    InducedSolitons,
    classify_field,
    concircular_lambda,
    concurrent_suite,
    einstein_fit,
    gradient_induced_solitons,
    gradient_potential_residual,
    gradient_soliton_residual,
    grw_suite,
    induced_solitons,
    soliton_residual,
    warping_quadratic_residual,
)
from .scenario import Scenario, load_scenario, run_scenario, scenario_from_dict
from .catalog import catalog, get_scenario
from .reports import CheckResult, ReportFile, SuiteReport
