"""Middle-square Weyl-sequence RNG toolkit.

A 64-bit middle-square generator kept on a long period by an additive Weyl
sequence, plus the machinery around it: distinct-digit seed constants with
bijective stream indexing, a width-parameterized family for exhaustive
verification, a statistical screening battery, and a reduced-width
state-recovery demonstration.
"""

from ._kernels import BACKEND
from .attack import (
    AttackScan,
    RecoveredState,
    attack_cost_model,
    recover_state,
    scan_candidates,
    window_representative,
)
from .core import (
    MASK32,
    MASK64,
    Msws64PairState,
    MswsState,
    fill_bytes,
    generate64_block,
    generate_block,
    msrand_step,
    msws64_double,
    msws64_paired,
    msws_step,
    square_rotate,
    to_unit32,
    to_unit53,
)
from .seeding import (
    CONSTANT_COUNT,
    STREAM_INDEX_LIMIT,
    SeedConstant,
    SeedFileError,
    count_valid_constants,
    decode_constant,
    decode_constants,
    emit_seed_file,
    encode_constant,
    init_rand_digits,
    is_recommended_constant,
    new_stream,
    parse_seed_file,
    rejection_reason,
    scramble_index,
    scramble_indices,
)
from .stats import (
    ChiSquareReport,
    bit_frequency,
    chi_square_sf,
    chi_square_uniformity,
    pair_serial_test,
)
from .widths import (
    GenParams,
    GMswsState,
    ggenerate_block,
    gmsws_step,
    random_reduced_state,
    weyl_full_period_check,
    x_cycle_check,
)

__version__ = "0.1.0"

__all__ = [
    "AttackScan",
    "BACKEND",
    "ChiSquareReport",
    "CONSTANT_COUNT",
    "GMswsState",
    "GenParams",
    "MASK32",
    "MASK64",
    "Msws64PairState",
    "MswsState",
    "RecoveredState",
    "STREAM_INDEX_LIMIT",
    "SeedConstant",
    "SeedFileError",
    "attack_cost_model",
    "bit_frequency",
    "chi_square_sf",
    "chi_square_uniformity",
    "count_valid_constants",
    "decode_constant",
    "decode_constants",
    "emit_seed_file",
    "encode_constant",
    "fill_bytes",
    "generate64_block",
    "generate_block",
    "ggenerate_block",
    "gmsws_step",
    "init_rand_digits",
    "is_recommended_constant",
    "msrand_step",
    "msws64_double",
    "msws64_paired",
    "msws_step",
    "new_stream",
    "pair_serial_test",
    "parse_seed_file",
    "random_reduced_state",
    "recover_state",
    "rejection_reason",
    "scan_candidates",
    "scramble_index",
    "scramble_indices",
    "square_rotate",
    "to_unit32",
    "to_unit53",
    "weyl_full_period_check",
    "window_representative",
    "x_cycle_check",
]
