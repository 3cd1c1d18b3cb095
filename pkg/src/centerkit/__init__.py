"""centerkit: Chebyshev-type centers, ball intersection certificates,
equal-radius ball relocation, and best n-nets in finite-dimensional normed
spaces."""

__version__ = "0.1.0"

from .spaces import (
    Functional,
    NormKind,
    NormSpec,
    affine_chart,
    distance,
    dual_norm,
    in_subspace,
    norm,
    norming_direction,
)
from .centers import (
    Aggregator,
    AggregatorKind,
    CenterResult,
    Method,
    PointSet,
    chebyshev_center,
    eval_radius,
    max_weighted,
    oracle_aggregator,
    pairwise_lower_bound,
    power_sum,
)
from .feasibility import (
    Ball,
    EmptyDomainError,
    FeasibilityCertificate,
    FeasibilityStatus,
    duality_check,
    intersect,
    linear_extent,
)
from .equalizer import (
    EqualizeResult,
    EqualizeStep,
    EqualizerError,
    LoopInvariantViolatedError,
    NotDisjointError,
    NotEmptyError,
    PreconditionRadiusError,
    Separation,
    SeparationTooThinError,
    StepCase,
    equalize,
    separate,
)
from .nnets import (
    BudgetExceeded,
    NNetResult,
    assign_to_nets,
    best_nnet_exact,
    best_nnet_heuristic,
    covering_radius,
)
from .truncations import SweepRecord, SweepResult, TruncationVariant, build_truncation, radius_sweep
from .instances import Instance, InstanceError, load_instance, parse_instance, serialize_instance

__all__ = [name for name in dir() if not name.startswith("_")]
