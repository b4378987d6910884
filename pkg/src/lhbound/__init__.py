"""Monotone error structure of binary linear codes under weight-then-numeric
minimal syndrome decoding, and bounds on uncorrectable errors."""

from .bounds import (
    BoundReport,
    GeneralizedBoundReport,
    bound_report,
    even_condition,
    gap_diagnostics,
    odd_condition,
    theorem1_bounds,
    theorem2_bounds,
    theorem3_lower,
    theorem4_bounds,
)
from .codefactory import (
    GF2mField,
    RandomCodeSpec,
    bch,
    code_from_spec,
    extend,
    gv_relative_distance,
    hamming,
    random_code,
    reed_muller,
    repetition,
    rm_min_weight_count_bound,
)
from .config import DEFAULT_LIMITS, Limits
from .errorstructure import (
    CosetLeaderTable,
    WeightSlice,
    build_coset_leader_table,
    classify_weight,
    decode,
    is_coset_leader,
    minimal_uncorrectable,
    verify_monotone,
)
from .gf2core import (
    BitVector,
    GF2Matrix,
    LinearCode,
    covers,
    enumerate_codewords,
    intersect,
    leftmost,
    min_distance,
    numeric_value,
    parity_check_from_generator,
    precedes,
    precedes_strict,
    rref,
    support,
    syndrome,
    weight,
    weight_distribution,
)
from .largerhalf import (
    LHSlice,
    TrialSet,
    is_trial_set,
    larger_halves,
    larger_halves_oracle,
    lh_minus,
    lh_plus,
    lh_weight_slice,
    minimal_codewords,
    pairwise_lh_intersection_check,
    verify_trial_set_necessity,
)

__version__ = "0.1.0"

__all__ = [
    "BitVector",
    "BoundReport",
    "CosetLeaderTable",
    "DEFAULT_LIMITS",
    "GF2Matrix",
    "GF2mField",
    "GeneralizedBoundReport",
    "LHSlice",
    "Limits",
    "LinearCode",
    "RandomCodeSpec",
    "TrialSet",
    "WeightSlice",
    "bch",
    "bound_report",
    "build_coset_leader_table",
    "classify_weight",
    "code_from_spec",
    "covers",
    "decode",
    "enumerate_codewords",
    "even_condition",
    "extend",
    "gap_diagnostics",
    "gv_relative_distance",
    "hamming",
    "intersect",
    "is_coset_leader",
    "is_trial_set",
    "larger_halves",
    "larger_halves_oracle",
    "leftmost",
    "lh_minus",
    "lh_plus",
    "lh_weight_slice",
    "min_distance",
    "minimal_codewords",
    "minimal_uncorrectable",
    "numeric_value",
    "odd_condition",
    "pairwise_lh_intersection_check",
    "parity_check_from_generator",
    "precedes",
    "precedes_strict",
    "random_code",
    "reed_muller",
    "repetition",
    "rm_min_weight_count_bound",
    "rref",
    "support",
    "syndrome",
    "theorem1_bounds",
    "theorem2_bounds",
    "theorem3_lower",
    "theorem4_bounds",
    "verify_monotone",
    "verify_trial_set_necessity",
    "weight",
    "weight_distribution",
    "__version__",
]
