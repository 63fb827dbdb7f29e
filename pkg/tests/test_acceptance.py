"""Acceptance battery: one test per release criterion, fixed seeds throughout.

Each test prints a single pass line (visible with ``pytest -s``); pytest -v
reports the same verdicts through the test names.
"""

import itertools
import math
import random
import time

import numpy as np
import pytest

from msws import _kernels, attack, core, seeding, stats, widths

GOLDEN = [
    0x00000001, 0x00000004, 0x0000001B, 0x00000406, 0x00170A61,
    0xF765B52A, 0x68D57352, 0x0AAFC03F, 0xF461CD1E, 0xFBE33CC0,
    0x808D47E0, 0x230DC324, 0x93202F86,
]

# Four published distinct-digit constants plus the first four stream
# constants; all eight satisfy the recommended-structure predicate.
FIXED_SEEDS = (
    0x8B5AD4CEF9C2703B,
    0xDBC8915FABD37257,
    0x3A16E0C5540E9DAF,
    0xBF3AC427D39CB715,
    0xDE3B9517D371064D,  # stream 0
    0xC352BD98B149EC85,  # stream 1
    0x5DB4C8929F03C65F,  # stream 2
    0x386A70BE41F87DCB,  # stream 3
)


def _report(name: str, detail: str = "") -> None:
    line = f"[acceptance] {name}: pass"
    if detail:
        line += f" ({detail})"
    print(line)


def test_c01_golden_sparse_seed_vector():
    state = core.MswsState(x=0, w=0, s=0x0000000100000001)
    assert [core.msws_step(state) for _ in range(13)] == GOLDEN
    _report("golden sparse-seed vector", "13 outputs bit-exact")


def test_c02_square_rotate_worked_example():
    got = core.square_rotate(0xE3296D171EC4A36F)
    assert got == 0xAE4E8A2131C2914A
    assert got & 0xFFFFFFFF == 0x31C2914A
    _report("half-square worked example", "bit-exact")


def test_c03_weyl_full_period_at_16_bits():
    rng = random.Random(160)
    for _ in range(100):
        s = rng.getrandbits(16) | 1
        assert widths.weyl_full_period_check(s, 8)
    with pytest.raises(ValueError):
        widths.weyl_full_period_check(2, 8)
    _report("weyl full period 2k=16", "100 odd increments exhaustive; even rejected")


def test_c04_state_pairs_distinct_over_full_period():
    rng = random.Random(161)
    for _ in range(20):
        s = rng.getrandbits(16) | 1
        state = widths.GMswsState(x=s, w=s, s=s, params=widths.GenParams(8))
        assert widths.x_cycle_check(state, 1 << 16)
    _report("state-pair distinctness 2k=16", "20 seeds, full 2^16 steps")


def test_c05_uniformity_screen_on_fixed_seeds():
    in_band = 0
    worst_z = 0.0
    for s in FIXED_SEEDS:
        assert seeding.is_recommended_constant(s)
        samples = core.generate_block(core.MswsState(x=s, w=s, s=s), 1 << 24)
        report = stats.chi_square_uniformity(samples, 256)
        if 0.001 <= report.p_value <= 0.999:
            in_band += 1
        max_z = float(np.abs(stats.bit_frequency(samples)).max())
        worst_z = max(worst_z, max_z)
        assert max_z < 4.9
    assert in_band >= 7
    _report("uniformity screen", f"{in_band}/8 chi-square in band, max|z|={worst_z:.2f}")


def test_c06_seed_combinatorics_and_reduced_image_set():
    upper, lower, total = seeding.count_valid_constants()
    assert (upper, lower, total) == (518918400, 380540160, 197469290962944000)

    # Reduced analog: 4-digit words over an 8-digit alphabet.  Model the
    # generation procedure directly (choose distinct digits, OR 1 into the
    # lowest) and compare its image with the predicate's accepted set.
    alphabet = 8
    produced = set()
    for digits in itertools.permutations(range(alphabet), 4):
        d3, d2, d1, d0 = digits
        produced.add((d3, d2, d1, d0 | 1))
    accepted = set()
    for word in range(alphabet ** 4):
        nibs = [(word // alphabet**i) % alphabet for i in range(4)]
        if seeding.lower_pattern_ok(nibs, alphabet):
            accepted.add((nibs[3], nibs[2], nibs[1], nibs[0]))
    assert produced == accepted
    reduced_count = 4 * math.perm(7, 3) + 4 * 3 * math.perm(6, 2)
    assert len(accepted) == reduced_count
    _report("seed combinatorics", f"counts live-computed; reduced image {len(accepted)}")


def test_c07_seeding_bijection_and_injectivity():
    rng = random.Random(162)
    boundary = [
        0,
        seeding.LOWER_CLASS1_COUNT - 1,
        seeding.LOWER_CLASS1_COUNT,
        seeding.LOWER_CONSTANT_COUNT - 1,
        seeding.LOWER_CONSTANT_COUNT,
        seeding.CONSTANT_COUNT - 1,
    ]
    picks = boundary + [rng.randrange(seeding.CONSTANT_COUNT) for _ in range(100_000)]
    for rank in picks:
        assert seeding.encode_constant(seeding.decode_constant(rank)) == rank

    n = 1_000_000
    ranks = seeding.scramble_indices(np.arange(n, dtype=np.uint64))
    constants = seeding.decode_constants(ranks.astype(np.int64))
    assert int(np.unique(constants).size) == n
    assert bool(seeding.recommended_mask(constants).all())
    _report("seeding bijection", f"1e5 round trips, {n} injective indices")


def test_c08_attack_roundtrip_fifty_trials():
    params = widths.GenParams(8)
    recovered = 0
    for seed in range(50):
        rng = random.Random(1000 + seed)
        hidden = widths.random_reduced_state(params, rng)
        trace = hidden.copy()
        outputs = [widths.gmsws_step(trace) for _ in range(16)]
        after_first = hidden.copy()
        widths.gmsws_step(after_first)
        truth = attack.window_representative(
            after_first.x, after_first.w, after_first.s, params
        )
        scan = attack.scan_candidates(outputs, params)
        assert scan.candidates_checked == 1 << 24
        if truth in [(c.x, c.w, c.s) for c in scan.survivors]:
            recovered += 1
    assert recovered == 50
    _report("attack round-trip", "50/50 recovered, 2^24 candidates per trial")


def test_c09_float_output_contracts():
    assert core.to_unit32(0) == 0.0
    assert core.to_unit32(1) == 2.0**-32
    assert core.to_unit32(1 << 31) == 0.5
    assert core.to_unit32((1 << 32) - 1) == 1.0 - 2.0**-32

    rng = np.random.RandomState(163)
    halves = rng.randint(0, 1 << 32, size=(1 << 20, 2), dtype=np.uint64)
    words = (halves[:, 0] << np.uint64(32)) | halves[:, 1]
    for v in words[:4096].tolist():
        assert core.to_unit53(v) < 1.0
    # vectorized form of the same mapping covers the full sample
    mapped = (words >> np.uint64(11)).astype(np.float64) * 2.0**-53
    assert float(mapped.max()) < 1.0
    assert core.to_unit53((1 << 64) - 1) < 1.0
    _report("float contracts", "boundaries exact, 2^20 samples below 1.0")


def test_c09b_unit32_range_exhaustive():
    # Range invariant over every 32-bit input.  The jitted sweep covers all
    # 2^32 values in seconds; without numba a chunked sweep does the same.
    if _kernels.BACKEND == "numba":
        from numba import njit

        @njit(cache=True)
        def first_out_of_range():
            scale = 2.0**-32
            for v in range(1 << 32):
                r = v * scale
                if r < 0.0 or r >= 1.0:
                    return v
            return -1

        assert first_out_of_range() == -1
    else:
        for lo in range(0, 1 << 32, 1 << 26):
            v = np.arange(lo, lo + (1 << 26), dtype=np.float64)
            r = v * 2.0**-32
            assert r[0] >= 0.0 and float(r.max()) < 1.0
    # the scalar function computes the identical mapping
    probe = np.random.RandomState(164).randint(0, 1 << 32, size=4096, dtype=np.uint64)
    for v in probe.tolist():
        assert core.to_unit32(v) == v * 2.0**-32
    _report("unit32 exhaustive range", "all 2^32 inputs in [0, 1)")


def test_c10_cross_width_consistency():
    rng = random.Random(165)
    params = widths.GenParams(32)
    for _ in range(100_000):
        x = rng.getrandbits(64)
        w = rng.getrandbits(64)
        s = rng.getrandbits(64) | 1
        g = widths.GMswsState(x=x, w=w, s=s, params=params)
        m = core.MswsState(x=x, w=w, s=s)
        assert widths.gmsws_step(g) == core.msws_step(m)
    _report("cross-width consistency", "10^5 states bit-exact at k=32")


def test_c11_throughput_benchmark_informal():
    state = seeding.new_stream(0)
    core.generate_block(state, 1 << 16)  # warm the kernel
    n = 1 << 24
    started = time.perf_counter()
    core.generate_block(state, n)
    elapsed = time.perf_counter() - started
    rate = n / elapsed
    # Reporting only; throughput is hardware- and backend-specific and is
    # not a gate.
    print(
        f"[acceptance] informal throughput: {rate / 1e6:.0f}M outputs/s "
        f"({_kernels.BACKEND} backend, non-gating)"
    )
    assert rate > 0
