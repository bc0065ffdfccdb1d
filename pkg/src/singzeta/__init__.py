"""Universal zeta functions of curve singularities, with finite-field checks."""
from .errors import (
    DimensionMismatch,
    InvalidSemigroup,
    NotCoprime,
    NotDivisible,
    NotExpandable,
    NotUnibranch,
    PoleAtOne,
    SingZetaError,
    TruncationTooSmall,
    UnsupportedModel,
    WorkLimitExceeded,
)
from .ratfun import MultiPoly, UniRatFun, ZetaRatFun, divide_exact, reduce, series_expand, substitute
from .semigroup import (
    GoodSemigroup,
    contains,
    delta,
    from_modulus,
    from_small_elements,
    h_dim,
    is_symmetric,
    numerical_from_generators,
)
from .universal import (
    UniversalZeta,
    assemble_universal,
    b_j_members,
    counting_ca,
    generalized_poincare,
    ideal_class_poly,
    specialize_counting,
    specialize_monodromy,
)

__version__ = "0.1.0"
