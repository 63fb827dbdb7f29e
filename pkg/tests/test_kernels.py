"""Backend parity: the jitted kernels and the fallback must agree exactly."""

import random
import subprocess
import sys

import numpy as np
import pytest

from msws import _kernels

needs_numba = pytest.mark.skipif(
    _kernels.BACKEND != "numba", reason="numba backend not active"
)


def _random_state(rng, k):
    width = 2 * k
    return (
        rng.getrandbits(width),
        rng.getrandbits(width),
        rng.getrandbits(width) | 1,
        (1 << width) - 1,
    )


@needs_numba
@pytest.mark.parametrize("k", [4, 8, 16, 32])
def test_gen_block_backends_agree(k):
    rng = random.Random(k)
    for _ in range(5):
        x, w, s, mask = _random_state(rng, k)
        out_a = np.empty(500, np.uint32)
        out_b = np.empty(500, np.uint32)
        end_a = _kernels._gen_block_numba(
            np.uint64(x), np.uint64(w), np.uint64(s), np.uint64(mask), np.uint64(k), out_a
        )
        end_b = _kernels._gen_block_py(
            np.uint64(x), np.uint64(w), np.uint64(s), np.uint64(mask), np.uint64(k), out_b
        )
        assert out_a.tolist() == out_b.tolist()
        assert tuple(map(int, end_a)) == tuple(map(int, end_b))


@needs_numba
@pytest.mark.parametrize("k", [4, 8, 12])
def test_pair_trace_backends_agree(k):
    rng = random.Random(100 + k)
    x, w, s, mask = _random_state(rng, k)
    keys_a = np.empty(2000, np.uint64)
    keys_b = np.empty(2000, np.uint64)
    _kernels._pair_trace_numba(
        np.uint64(x), np.uint64(w), np.uint64(s), np.uint64(mask), np.uint64(k), keys_a
    )
    _kernels._pair_trace_py(
        np.uint64(x), np.uint64(w), np.uint64(s), np.uint64(mask), np.uint64(k), keys_b
    )
    assert keys_a.tolist() == keys_b.tolist()


@needs_numba
def test_attack_scan_backends_agree():
    k = 4
    mask = (1 << 8) - 1
    rng = random.Random(17)
    x, w, s, _ = _random_state(rng, k)
    outs = []
    for _ in range(12):
        w = (w + s) & mask
        x = (x * x + w) & mask
        x = ((x >> k) | (x << k)) & mask
        outs.append(x & 0xF)
    arr = np.array(outs, np.uint64)
    bufs_a = [np.empty(4096, np.uint64) for _ in range(3)]
    bufs_b = [np.empty(4096, np.uint64) for _ in range(3)]
    checked_a, found_a = _kernels._attack_scan_numba(arr, k, np.uint64(mask), *bufs_a)
    checked_b, found_b = _kernels._attack_scan_py(arr, k, np.uint64(mask), *bufs_b)
    assert checked_a == checked_b == 1 << 12
    assert found_a == found_b
    for a, b in zip(bufs_a, bufs_b):
        assert a[:found_a].tolist() == b[:found_b].tolist()


@needs_numba
def test_decode_batch_matches_scalar():
    from msws import seeding

    rng = random.Random(23)
    ranks = np.array(
        [rng.randrange(seeding.CONSTANT_COUNT) for _ in range(2000)], np.int64
    )
    out = np.empty(ranks.size, np.uint64)
    _kernels._decode_batch_numba(ranks, out)
    for r, v in zip(ranks.tolist(), out.tolist()):
        assert seeding.decode_constant(r).value == v


def test_env_flag_selects_fallback():
    code = "import msws._kernels as k; print(k.BACKEND)"
    proc = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True, text=True, env={"MSWS_BACKEND": "numpy", "PATH": "/usr/bin:/bin"},
    )
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "numpy"


def test_env_flag_rejects_unknown_value():
    code = "import msws._kernels"
    proc = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True, text=True, env={"MSWS_BACKEND": "bogus", "PATH": "/usr/bin:/bin"},
    )
    assert proc.returncode != 0
    assert "MSWS_BACKEND" in proc.stderr
