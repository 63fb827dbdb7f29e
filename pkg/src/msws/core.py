"""Middle-square generator driven by a Weyl sequence.

The state is three 64-bit words: ``x`` accumulates the squared-and-rotated
value, ``w`` is the Weyl accumulator, and ``s`` is the odd Weyl increment.
One step computes ``x = rotl32(x*x + (w + s))`` modulo 2^64 and returns the
low 32 bits of the new ``x``.  Because arithmetic is modulo 2^64, the value
held after squaring is the lower half of the true 128-bit square, and
rotating by 32 puts middle digits of that square into the returned word.

Two 64-bit output constructions are provided: calling the 32-bit generator
twice, and running two generators side by side and mixing them.  Float
helpers map words onto [0, 1).
"""

from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from . import _kernels

MASK64 = (1 << 64) - 1
MASK32 = (1 << 32) - 1

_FULL_MASK = np.uint64(MASK64)
_K32 = np.uint64(32)


def _check_word(name: str, value: int) -> None:
    if not isinstance(value, int):
        raise ValueError(f"{name} must be an int, got {type(value).__name__}")
    if not 0 <= value <= MASK64:
        raise ValueError(f"{name} must be a 64-bit word, got {value:#x}")


@dataclass
class MswsState:
    """One independent generator stream: the (x, w, s) word triple.

    ``s`` must be odd; an even increment collapses the Weyl sequence to half
    period and is rejected outright rather than silently fixed.
    """

    x: int
    w: int
    s: int

    def __post_init__(self) -> None:
        _check_word("x", self.x)
        _check_word("w", self.w)
        _check_word("s", self.s)
        if self.s % 2 == 0:
            raise ValueError(f"weyl increment s must be odd, got {self.s:#x}")

    def copy(self) -> "MswsState":
        return MswsState(self.x, self.w, self.s)


@dataclass
class Msws64PairState:
    """Two generator streams mixed into one 64-bit output per call.

    Equal increments would make the two streams identical, so the
    constructor rejects ``g1.s == g2.s``.
    """

    g1: MswsState
    g2: MswsState

    def __post_init__(self) -> None:
        if self.g1.s == self.g2.s:
            raise ValueError("paired generator requires two distinct weyl increments")


def square_rotate(x: int) -> int:
    """Square ``x`` modulo 2^64 and rotate the result left by 32 bits.

    Pure function; the rotation swaps the two 32-bit halves, so it is its
    own inverse.
    """
    _check_word("x", x)
    sq = (x * x) & MASK64
    return ((sq << 32) | (sq >> 32)) & MASK64


def msws_step(state: MswsState) -> int:
    """Advance ``state`` one iteration and return a 32-bit output.

    Exactly one Weyl increment is consumed per call.
    """
    w = (state.w + state.s) & MASK64
    x = (state.x * state.x + w) & MASK64
    x = ((x << 32) | (x >> 32)) & MASK64
    state.x = x
    state.w = w
    return x & MASK32


def msws64_double(state: MswsState) -> int:
    """Two successive 32-bit outputs packed into one 64-bit word.

    The first output fills the high half, the second the low half; the
    state advances two iterations.
    """
    hi = msws_step(state)
    lo = msws_step(state)
    return (hi << 32) | lo


def msws64_paired(pair: Msws64PairState) -> int:
    """One 64-bit output from two parallel streams.

    The first stream's x is captured after the add but before the rotation;
    the result is that value xored with the second stream's rotated x.
    Both sub-states advance one iteration.
    """
    g1, g2 = pair.g1, pair.g2
    w1 = (g1.w + g1.s) & MASK64
    xx = (g1.x * g1.x + w1) & MASK64
    g1.x = ((xx << 32) | (xx >> 32)) & MASK64
    g1.w = w1
    w2 = (g2.w + g2.s) & MASK64
    x2 = (g2.x * g2.x + w2) & MASK64
    x2 = ((x2 << 32) | (x2 >> 32)) & MASK64
    g2.x = x2
    g2.w = w2
    return xx ^ x2


def msrand_step(x: int, source: Callable[[], int]) -> Tuple[int, int]:
    """Middle-square step driven by an arbitrary 64-bit word source.

    Replaces the Weyl term with one draw from ``source`` (expected, but not
    checked, to be uniform).  Returns ``(new_accumulator, output)``.  With a
    Weyl sequence as the source this reduces exactly to :func:`msws_step`;
    with a constant zero source and x=0 it exhibits the classic all-zero
    failure that the Weyl term exists to prevent.
    """
    _check_word("x", x)
    x = (x * x + source()) & MASK64
    x = ((x << 32) | (x >> 32)) & MASK64
    return x, x & MASK32


def to_unit32(v: int) -> float:
    """Map a 32-bit word onto [0, 1) with 32-bit resolution.

    Exact: every 32-bit integer is representable in a binary64 and the
    scale factor is a power of two.
    """
    if not 0 <= v <= MASK32:
        raise ValueError(f"expected a 32-bit word, got {v:#x}")
    return v * 2.0**-32


def to_unit53(v: int) -> float:
    """Map a 64-bit word onto [0, 1) with 53-bit resolution.

    Computed as ``(v >> 11) * 2**-53`` so the result is exact and strictly
    below 1.0; dividing the raw 64-bit word by 2^64 can round up to 1.0 for
    values near the top of the range.
    """
    _check_word("v", v)
    return (v >> 11) * 2.0**-53


def generate_block(state: MswsState, n: int) -> np.ndarray:
    """Produce ``n`` successive 32-bit outputs as a uint32 array.

    Bulk equivalent of calling :func:`msws_step` ``n`` times; the state
    advances ``n`` iterations.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    out = np.empty(n, np.uint32)
    x, w = _kernels.gen_block(
        np.uint64(state.x), np.uint64(state.w), np.uint64(state.s),
        _FULL_MASK, _K32, out,
    )
    state.x = int(x)
    state.w = int(w)
    return out


def generate64_block(state: MswsState, n: int) -> np.ndarray:
    """Produce ``n`` 64-bit double-call outputs as a uint64 array."""
    block = generate_block(state, 2 * n)
    return (block[0::2].astype(np.uint64) << np.uint64(32)) | block[1::2]


def fill_bytes(state: MswsState, n: int) -> bytes:
    """Serialize ceil(n/4) outputs little-endian and truncate to n bytes."""
    if n < 0:
        raise ValueError("byte count must be >= 0")
    if n == 0:
        return b""
    block = generate_block(state, (n + 3) // 4)
    return block.astype("<u4").tobytes()[:n]
