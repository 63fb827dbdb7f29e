"""Compare the numba kernels against the NumPy/Python fallback.

Run from the repository root after installing the package:

    python3 benchmarks/bench_backends.py

The generator recurrence is sequential, so the fallback pays the full
per-step interpreter cost; the attack scan fallback is vectorized over the
candidate grid and fares much better.  Figures are hardware-specific.
"""

import random
import time

import numpy as np

from msws import _kernels, core, seeding, widths

FULL_MASK = np.uint64((1 << 64) - 1)
K32 = np.uint64(32)


def timeit(fn, *args):
    started = time.perf_counter()
    result = fn(*args)
    return time.perf_counter() - started, result


def bench_gen_block():
    print("== bulk generation (32-bit outputs) ==")
    seed = np.uint64(seeding.init_rand_digits(0).value)

    if _kernels.BACKEND == "numba":
        n = 1 << 25
        out = np.empty(n, np.uint32)
        _kernels._gen_block_numba(seed, seed, seed, FULL_MASK, K32, out[:16])  # warm
        dt, _ = timeit(_kernels._gen_block_numba, seed, seed, seed, FULL_MASK, K32, out)
        print(f"  numba:    {n / dt / 1e6:9.1f} M outputs/s  ({n} outputs in {dt:.3f}s)")
    else:
        print("  numba:    not available")

    n = 1 << 18
    out = np.empty(n, np.uint32)
    dt, _ = timeit(_kernels._gen_block_py, seed, seed, seed, FULL_MASK, K32, out)
    print(f"  fallback: {n / dt / 1e6:9.1f} M outputs/s  ({n} outputs in {dt:.3f}s)")


def bench_attack():
    print("== attack scan (k=8, 16 outputs, 2^24 candidates) ==")
    params = widths.GenParams(8)
    rng = random.Random(3)
    hidden = widths.random_reduced_state(params, rng)
    trace = hidden.copy()
    outputs = np.array([widths.gmsws_step(trace) for _ in range(16)], np.uint64)
    mask = np.uint64(params.mask)

    def run(scan):
        bufs = [np.empty(4096, np.uint64) for _ in range(3)]
        return scan(outputs, 8, mask, *bufs)

    if _kernels.BACKEND == "numba":
        run(_kernels._attack_scan_numba)  # warm
        dt, (checked, found) = timeit(run, _kernels._attack_scan_numba)
        print(f"  numba:    {checked / dt / 1e6:9.1f} M candidates/s  ({dt:.3f}s, {found} survivors)")
    else:
        print("  numba:    not available")

    dt, (checked, found) = timeit(run, _kernels._attack_scan_py)
    print(f"  fallback: {checked / dt / 1e6:9.1f} M candidates/s  ({dt:.3f}s, {found} survivors)")


def bench_64bit_constructions():
    # Scalar-path comparison of the two 64-bit constructions.  Informal:
    # in optimized C the side-by-side pair runs about 20% faster than the
    # double call, but interpreter overhead dominates here.
    print("== 64-bit constructions (scalar path, informal) ==")
    n = 200_000
    state = seeding.new_stream(0)
    dt, _ = timeit(lambda: [core.msws64_double(state) for _ in range(n)])
    print(f"  double-call: {n / dt / 1e6:7.2f} M outputs/s")
    pair = core.Msws64PairState(seeding.new_stream(1), seeding.new_stream(2))
    dt, _ = timeit(lambda: [core.msws64_paired(pair) for _ in range(n)])
    print(f"  paired:      {n / dt / 1e6:7.2f} M outputs/s")


if __name__ == "__main__":
    print(f"active backend: {_kernels.BACKEND}")
    bench_gen_block()
    bench_attack()
    bench_64bit_constructions()
