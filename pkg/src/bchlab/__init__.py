"""bchlab: cyclic-code workbench.

Construction of binary cyclic codes from cyclotomic coset selections,
minimal-weight dual-codeword mining, check-based reliability decoding
(hard and soft), Monte-Carlo channel campaigns with an ML lower bound,
flip-pattern planning, and Reed-Muller equivalence verification.
"""

__version__ = "0.1.0"

from .codes import (
    BchCode,
    bch_from_cosets,
    cyclotomic_cosets,
    designed_distance,
    dual_code,
    encode_systematic,
    is_information_set,
    load_code_spec,
    save_code_spec,
    systematic_basis,
)
from .gf2 import (
    BinaryField,
    CyclicWord,
    canonical_rotation,
    cyclic_mul,
    field_new,
    poly_gcd,
)
from .hard import (
    DecodeOutcome,
    FlipPlan,
    decode_bounded_distance,
    decode_error_reduction,
    decode_information_set,
    decode_redundancy_set,
    flip_plan_by_weight,
)
from .harness import (
    HardDecoderConfig,
    SoftDecoderConfig,
    ml_lb_update,
    run_hard_campaign,
    run_soft_campaign,
    sample_error,
    wer_from_ptau,
)
from .reliability import (
    ViolationCounts,
    ViolationTracker,
    count_violations,
    expected_check_stats,
    flip_weight_changes,
    separation_statistics,
)
from .rm import (
    extend_and_permute,
    rm_coset_leaders,
    rm_permutation,
    verify_generator_roots,
    verify_rm_equivalence,
    verify_rmstar_cyclic,
)
from .soft import (
    SoftReliability,
    awgn_sigma_sq,
    channel_reliability,
    decode_soft_information_set,
    extrinsic_update,
    plan_flips,
    simulate_error_ranks,
)
from .wsearch import (
    CheckSet,
    build_check_set,
    check_polynomial_set,
    classify_subcode,
    cyclic_orbit_reps,
    load_check_cache,
    min_weight_search,
    mine_or_load_checks,
    save_check_cache,
)
