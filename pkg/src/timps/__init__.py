"""Translation-invariant matrix product states with periodic boundary
conditions: exact constructions, verification, and minimal bond dimension
search."""

from .scalars import GaussianRational
from .polynomials import (
    Budget,
    BudgetExceededError,
    GREVLEX,
    LEX,
    MonomialOrder,
    MultiPoly,
    buchberger,
    contains_one,
    reduce,
    spoly,
)
from .states import (
    Necklace,
    TIState,
    canonical_rotation,
    enumerate_necklaces,
    is_unit_sparse,
    polya_count,
    scale_state,
    w_state,
)
from .mps import (
    MPSRep,
    VerifyReport,
    as_floating,
    conjugate_rep,
    eval_coefficient,
    evaluate_classes,
    mps_rep,
    scale_rep,
    trace_polynomial,
    verify,
)
from .constructions import (
    CanonicalParams,
    UnitRepReport,
    UnitRepSpec,
    WConstruction,
    build_w,
    canonicalize,
    check_unit_rep,
    normalize_w,
    scaled_upper_shift_rep,
    solve_trace_root,
    upper_shift_spec,
)
from .mindim import (
    MinDimOptions,
    MinDimReport,
    SystemSpec,
    build_system,
    feasible_at,
    min_bond_dimension,
)

__version__ = "0.1.0"
