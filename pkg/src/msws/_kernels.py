"""Hot inner loops, JIT-compiled with numba when available.

The generator recurrence is strictly sequential (each x depends on the
previous square), so bulk output cannot be vectorized across time with
NumPy alone.  The kernels here are therefore compiled with ``numba.njit``
by default, with a fallback path that needs only NumPy and plain Python.

Backend selection is fixed at import time through the ``MSWS_BACKEND``
environment variable:

* ``auto`` (default): numba if importable, otherwise the fallback,
* ``numba``: require numba, raise if it is missing,
* ``numpy``: force the fallback even when numba is installed.

All kernels take and return ``np.uint64`` scalars so the two backends are
drop-in replacements for each other; ``benchmarks/bench_backends.py``
compares them directly.
"""

import math
import os

import numpy as np

ENV_FLAG = "MSWS_BACKEND"

_U1 = np.uint64(1)


def _select_backend():
    choice = os.environ.get(ENV_FLAG, "auto").strip().lower() or "auto"
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(
            f"{ENV_FLAG} must be 'auto', 'numba' or 'numpy', got {choice!r}"
        )
    if choice == "numpy":
        return "numpy", None
    try:
        from numba import njit
    except ImportError:
        if choice == "numba":
            raise ImportError(f"{ENV_FLAG}=numba but numba is not importable")
        return "numpy", None
    return "numba", njit


BACKEND, _njit = _select_backend()


# ---------------------------------------------------------------------------
# fallback implementations (NumPy arrays in, plain-int arithmetic inside)

def _gen_block_py(x, w, s, mask, k, out):
    x, w, s, mask, k = int(x), int(w), int(s), int(mask), int(k)
    kmask = mask >> k
    for i in range(out.size):
        w = (w + s) & mask
        x = (x * x + w) & mask
        x = ((x >> k) | (x << k)) & mask
        out[i] = x & kmask
    return np.uint64(x), np.uint64(w)


def _pair_trace_py(x, w, s, mask, k, keys):
    x, w, s, mask, k = int(x), int(w), int(s), int(mask), int(k)
    width = 2 * k
    for i in range(keys.size):
        keys[i] = (x << width) | w
        w = (w + s) & mask
        x = (x * x + w) & mask
        x = ((x >> k) | (x << k)) & mask
    return np.uint64(x), np.uint64(w)


def _attack_scan_py(outputs, k, mask, sx, sw, ss):
    # Vectorized over the (h1, h2) plane for each h0; h1 is chunked so the
    # working set stays a few million elements regardless of k.
    maskv = np.uint64(mask)
    ku = np.uint64(k)
    kmaskv = maskv >> ku
    half = 1 << k
    topbit = np.uint64(1 << (2 * k - 1))
    o0 = int(outputs[0])
    hs = np.arange(half, dtype=np.uint64)
    x1c = (hs << ku) | np.uint64(int(outputs[1]))
    x2c = (hs << ku) | np.uint64(int(outputs[2]))
    x1pre = ((x1c >> ku) | (x1c << ku)) & maskv
    x1sq = (x1c * x1c) & maskv
    x2pre = ((x2c >> ku) | (x2c << ku)) & maskv
    rest = [np.uint64(int(o)) for o in outputs[3:]]
    h1_chunk = max(1, (1 << 22) // half)
    cap = sx.shape[0]
    checked = 0
    found = 0
    for h0 in range(half):
        x0 = np.uint64((h0 << k) | o0)
        x0sq = (x0 * x0) & maskv
        w1_h1 = (x1pre - x0sq) & maskv
        store = (x0 & topbit) == np.uint64(0)
        for h1s in range(0, half, h1_chunk):
            h1e = min(half, h1s + h1_chunk)
            w1 = np.repeat(w1_h1[h1s:h1e], half)
            w2 = ((x2pre[None, :] - x1sq[h1s:h1e, None]) & maskv).reshape(-1)
            s = (w2 - w1) & maskv
            checked += (h1e - h1s) * half
            alive = (s & _U1) == _U1
            keep = np.flatnonzero(alive)
            if keep.size == 0:
                continue
            x = np.broadcast_to(x2c, (h1e - h1s, half)).reshape(-1)[keep].copy()
            w = w2[keep]
            sv = s[keep]
            for ov in rest:
                w = (w + sv) & maskv
                x = (x * x + w) & maskv
                x = ((x >> ku) | (x << ku)) & maskv
                m = (x & kmaskv) == ov
                if not m.all():
                    keep = keep[m]
                    x = x[m]
                    w = w[m]
                    sv = sv[m]
                    if keep.size == 0:
                        break
            if keep.size == 0 or not store:
                continue
            w0 = (w1[keep] - sv) & maskv
            for j in range(keep.size):
                if found < cap:
                    sx[found] = x0
                    sw[found] = w0[j]
                    ss[found] = sv[j]
                found += 1
    return checked, found


# ---------------------------------------------------------------------------
# seed-constant unranking tables (live combinatorial values, no literals)

_UPPER_FACTORS = np.array([math.perm(15 - i, 7 - i) for i in range(8)], np.int64)
_LOW1_FACTORS = np.array([math.perm(14 - i, 6 - i) for i in range(7)], np.int64)
_LOW2_FACTORS = np.array([math.perm(13 - i, 5 - i) for i in range(6)], np.int64)
_P15_7 = np.int64(math.perm(15, 7))
_P14_6 = np.int64(math.perm(14, 6))
_CLASS1_COUNT = np.int64(8 * math.perm(15, 7))
_LOWER_COUNT = np.int64(8 * math.perm(15, 7) + 8 * 7 * math.perm(14, 6))


def _decode_batch_py(ranks, out):
    # Fallback delegates to the scalar decoder; imported lazily to avoid a
    # circular module dependency.
    from .seeding import decode_constant

    for i in range(ranks.size):
        out[i] = decode_constant(int(ranks[i])).value


if BACKEND == "numba":

    @_njit(cache=True, nogil=True)
    def _gen_block_numba(x, w, s, mask, k, out):
        kmask = mask >> k
        for i in range(out.size):
            w = (w + s) & mask
            x = (x * x + w) & mask
            x = ((x >> k) | (x << k)) & mask
            out[i] = x & kmask
        return x, w

    @_njit(cache=True, nogil=True)
    def _pair_trace_numba(x, w, s, mask, k, keys):
        width = np.uint64(2) * k
        for i in range(keys.size):
            keys[i] = (x << width) | w
            w = (w + s) & mask
            x = (x * x + w) & mask
            x = ((x >> k) | (x << k)) & mask
        return x, w

    @_njit(cache=True, nogil=True)
    def _attack_scan_numba(outputs, k, mask, sx, sw, ss):
        ku = np.uint64(k)
        kmask = mask >> ku
        half = 1 << k
        topbit = np.uint64(1) << np.uint64(2 * k - 1)
        zero = np.uint64(0)
        one = np.uint64(1)
        o0 = outputs[0]
        o1 = outputs[1]
        o2 = outputs[2]
        nout = outputs.shape[0]
        cap = sx.shape[0]
        checked = 0
        found = 0
        for h0 in range(half):
            x0 = (np.uint64(h0) << ku) | o0
            x0sq = (x0 * x0) & mask
            for h1 in range(half):
                x1 = (np.uint64(h1) << ku) | o1
                x1pre = ((x1 >> ku) | (x1 << ku)) & mask
                w1 = (x1pre - x0sq) & mask
                x1sq = (x1 * x1) & mask
                for h2 in range(half):
                    checked += 1
                    x2 = (np.uint64(h2) << ku) | o2
                    x2pre = ((x2 >> ku) | (x2 << ku)) & mask
                    w2 = (x2pre - x1sq) & mask
                    s = (w2 - w1) & mask
                    if s & one == zero:
                        continue
                    x = x2
                    w = w2
                    ok = True
                    for j in range(3, nout):
                        w = (w + s) & mask
                        x = (x * x + w) & mask
                        x = ((x >> ku) | (x << ku)) & mask
                        if (x & kmask) != outputs[j]:
                            ok = False
                            break
                    if ok and (x0 & topbit) == zero:
                        if found < cap:
                            sx[found] = x0
                            sw[found] = (w1 - s) & mask
                            ss[found] = s
                        found += 1
        return checked, found

    @_njit(cache=True)
    def _decode_batch_numba(ranks, out):
        avail = np.empty(16, np.int64)
        low = np.empty(8, np.int64)
        for t in range(ranks.size):
            r = ranks[t]
            upper = r // _LOWER_COUNT
            lower = r % _LOWER_COUNT
            v = np.uint64(0)
            for j in range(16):
                avail[j] = j
            n_avail = 16
            for i in range(8):
                f = _UPPER_FACTORS[i]
                d = upper // f
                upper = upper % f
                v = (v << np.uint64(4)) | np.uint64(avail[d])
                for j in range(d, n_avail - 1):
                    avail[j] = avail[j + 1]
                n_avail -= 1
            if lower < _CLASS1_COUNT:
                o = 2 * (lower // _P15_7) + 1
                perm_rank = lower % _P15_7
                n_avail = 0
                for j in range(16):
                    if j != o:
                        avail[n_avail] = j
                        n_avail += 1
                for i in range(7):
                    f = _LOW1_FACTORS[i]
                    d = perm_rank // f
                    perm_rank = perm_rank % f
                    low[i] = avail[d]
                    for j in range(d, n_avail - 1):
                        avail[j] = avail[j + 1]
                    n_avail -= 1
                low[7] = o
            else:
                rr = lower - _CLASS1_COUNT
                o = 2 * (rr // (7 * _P14_6)) + 1
                rem = rr % (7 * _P14_6)
                pos = rem // _P14_6
                perm_rank = rem % _P14_6
                n_avail = 0
                for j in range(16):
                    if j != o and j != o - 1:
                        avail[n_avail] = j
                        n_avail += 1
                ri = 0
                for slot in range(7):
                    if slot == pos:
                        low[slot] = o
                    else:
                        f = _LOW2_FACTORS[ri]
                        d = perm_rank // f
                        perm_rank = perm_rank % f
                        low[slot] = avail[d]
                        for j in range(d, n_avail - 1):
                            avail[j] = avail[j + 1]
                        n_avail -= 1
                        ri += 1
                low[7] = o
            for i in range(8):
                v = (v << np.uint64(4)) | np.uint64(low[i])
            out[t] = v

    gen_block = _gen_block_numba
    pair_trace = _pair_trace_numba
    attack_scan = _attack_scan_numba
    decode_batch = _decode_batch_numba
else:
    gen_block = _gen_block_py
    pair_trace = _pair_trace_py
    attack_scan = _attack_scan_py
    decode_batch = _decode_batch_py
