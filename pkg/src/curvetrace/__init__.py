"""curvetrace: certified analytic continuation along plane algebraic curves.

The step bound guarantees that when the free variable moves less than
delta, every branch of the dependent variable moves less than epsilon, so
matching branch values by proximity is provably correct at each step.
"""

from .errors import (
    AmbiguousMatch,
    AtCriticalPoint,
    CriticalFiber,
    CriticalPointOnPath,
    CurveTraceError,
    DegenerateInput,
    DegenerateQuadruple,
    InexactDivision,
    LeadingCoefficientVanishes,
    NoConvergence,
    NoProgress,
    NotSquareFree,
    RootInsideCircle,
    SingleRoot,
)
from .polynomial import (
    BivariatePolynomial,
    UnivariatePolynomial,
    discriminant_y,
    eval_biv,
    eval_uni,
    partial_x,
    partial_y,
    resultant_y,
)
from .rootfinder import RootSet, all_roots, min_distance_to, min_pairwise_distance
from .bounds import (
    BoundReport,
    CurveBounds,
    compute_delta,
    coeff_bounds_on_circle,
    delta_formula,
    derivative_bound_Y,
    fujiwara_bound,
    refine_epsilon,
    refine_epsilon_alt,
)
from .continuation import (
    Arc,
    ParamPath,
    Segment,
    TraceLog,
    TraceOptions,
    TraceStep,
    fiber,
    trace_curve,
)
from .systems import (
    ChainSystem,
    ComparisonReport,
    SystemOptions,
    SystemTraceLog,
    compare_with_resultant,
    eliminate_middle,
    trace_system,
)
from .darboux import (
    DiscreteCurve,
    MoebiusMap,
    MoebiusPencil,
    ProjectivePoint,
    closure_curve,
    cross_ratio,
    darboux_pencil,
    darboux_step,
    fixed_points,
    run_pentagon_experiment,
    transform_vertices,
)

__version__ = "0.1.0"
