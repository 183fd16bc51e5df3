"""Block-orthogonal space-time block codes.

Constructions of linear STBCs whose QR factor splits into block-orthogonal
form, detection and verification of that structure on random channels, and
a depth-first sphere decoder that exploits it through metric memoization.
"""

from .codes import (
    CiodDesign,
    CuwdDesign,
    GOLDEN_ORDERING_222,
    GOLDEN_ORDERING_421,
    GOLDEN_ORDERING_SCRAMBLED,
    InvalidPermutation,
    LinearSTBC,
    NotUnitary,
    PremiseViolated,
    UnsupportedSize,
    alamouti_code,
    bhv_code,
    cda_2x2,
    ciod,
    construction_i,
    construction_ii,
    construction_iii,
    construction_iv,
    cuwd_rate1_4group,
    golden_code,
    load_code,
    named_code,
    reorder,
    save_code,
    srinath_rajan_code,
)
from .decoder import (
    DecoderStats,
    EmCountBounds,
    InvalidProfile,
    NotUpperTriangular,
    PamConstellation,
    TooLarge,
    em_count_bounds,
    exhaustive_ml,
    force_full_tree_decode,
    qrdm_bound,
    sphere_decode,
)
from .linalg import (
    QrResult,
    RankDeficient,
    check_expand,
    gram_schmidt_qr,
    kron,
    tilde_vec,
    trace_inner_product,
    untilde_vec,
)
from .sim import (
    SimulationCampaign,
    SweepResult,
    run_sweep,
    run_trial,
    snr_to_noise_variance,
    write_csv,
)
from .structure import (
    BlockOrthogonalProfile,
    EquivalentChannelFactorization,
    StructureReport,
    TooFewReceiveAntennas,
    classify,
    detect_profile,
    detect_structure,
    equivalent_channel,
    ordering_search,
    profile_validates,
    r_factorize,
    structural_pattern,
    verify_cuwd_sum_structure,
    verify_hr_grouping,
    verify_paraunitary_premises,
    verify_two_block_premises,
    verify_multi_block_premises,
)

__version__ = "0.1.0"
