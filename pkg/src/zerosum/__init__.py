"""Zero-sum invariants of finite abelian groups: counting, extraction, search and constructions."""

from .congruences import (
    corollary_pn,
    lemma6_matrix,
    lemma6_matrix_det,
    lucas_binomial,
    olson_alternating,
    theorem3_rank_argument,
    theorem6_window_constants,
    window_identity_check,
)
from .constructions import (
    construct_cor5_lower,
    construct_egz_lower,
    construct_thm2_lower,
    construct_thm3_lower,
    construct_thm6_lower,
)
from .dp import (
    CountTable,
    Witness,
    count_mod_p,
    count_table,
    find_zero_sum_length_in,
    find_zero_sum_of_length,
    zero_sum_length_spectrum,
)
from .errors import (
    BudgetExceeded,
    DomainError,
    InvariantViolation,
    ParseError,
    PreconditionError,
    ZeroSumError,
)
from .groups import GroupSpec, kernel_iso, kernel_lift, projection_hom
from .lifting import find_2x, find_3x, find_5x
from .search import (
    EXHAUSTIVE,
    LOWER_BOUND_ONLY,
    Budget,
    ExtremalCertificate,
    LengthSet,
    SLValue,
    compute_s_L,
    davenport,
    max_avoiding,
    verify_upper_bound,
)
from .sequences import Sequence, random_sequence

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
