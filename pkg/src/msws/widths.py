"""Width-parameterized generator family for exhaustive verification.

The full-size generator squares a 64-bit word and outputs 32 bits.  Scaling
that to a 2k-bit word with k-bit outputs gives a family small enough that
whole-period claims can be checked by enumeration on a desk machine: the
Weyl sequence visits every 2k-bit value exactly once per period, and the
(x, w) state pair never repeats within one period.  The same reduced family
drives the state-recovery demonstration.

All arithmetic runs in 64-bit words with explicit masking, so no width
depends on native narrow integer types.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels

VALID_HALF_WIDTHS = (4, 8, 12, 16, 32)

#: Exhaustive checks enumerate 2^(2k) states; cap the word width at 24 bits.
EXHAUSTIVE_HALF_WIDTH_LIMIT = 12


@dataclass(frozen=True)
class GenParams:
    """Half-width parameter k; the generator word is 2k bits wide."""

    k: int

    def __post_init__(self) -> None:
        if self.k not in VALID_HALF_WIDTHS:
            raise ValueError(f"k must be one of {VALID_HALF_WIDTHS}, got {self.k}")

    @property
    def width(self) -> int:
        return 2 * self.k

    @property
    def mask(self) -> int:
        return (1 << (2 * self.k)) - 1

    @property
    def out_mask(self) -> int:
        return (1 << self.k) - 1


@dataclass
class GMswsState:
    """Reduced-width (x, w, s) triple plus its width parameters."""

    x: int
    w: int
    s: int
    params: GenParams

    def __post_init__(self) -> None:
        mask = self.params.mask
        for name in ("x", "w", "s"):
            v = getattr(self, name)
            if not 0 <= v <= mask:
                raise ValueError(f"{name} must fit in {self.params.width} bits, got {v:#x}")
        if self.s % 2 == 0:
            raise ValueError(f"weyl increment s must be odd, got {self.s:#x}")

    @classmethod
    def unchecked(cls, x: int, w: int, s: int, params: GenParams) -> "GMswsState":
        """Bypass validation, e.g. to study a deliberately even increment."""
        obj = object.__new__(cls)
        obj.x, obj.w, obj.s, obj.params = x, w, s, params
        return obj

    def copy(self) -> "GMswsState":
        return GMswsState.unchecked(self.x, self.w, self.s, self.params)


def gmsws_step(state: GMswsState) -> int:
    """One iteration at width 2k; returns the low k bits of the new x.

    At k=32 this is bit for bit the full-size generator step.
    """
    k = state.params.k
    mask = state.params.mask
    w = (state.w + state.s) & mask
    x = (state.x * state.x + w) & mask
    x = ((x >> k) | (x << k)) & mask
    state.x = x
    state.w = w
    return x & state.params.out_mask


def ggenerate_block(state: GMswsState, n: int) -> np.ndarray:
    """Bulk :func:`gmsws_step`: n successive k-bit outputs as uint32."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = np.empty(n, np.uint32)
    x, w = _kernels.gen_block(
        np.uint64(state.x), np.uint64(state.w), np.uint64(state.s),
        np.uint64(state.params.mask), np.uint64(state.params.k), out,
    )
    state.x = int(x)
    state.w = int(w)
    return out


def weyl_full_period_check(s: int, k: int) -> bool:
    """Exhaustively verify the Weyl sequence has full period 2^(2k).

    Walks i*s mod 2^(2k) over one whole period with a visit bitmap and
    reports whether every value occurred exactly once.  Requires odd ``s``;
    an even increment halves the period, which is exactly the degenerate
    case the oddness requirement rules out.
    """
    params = GenParams(k)
    if k > EXHAUSTIVE_HALF_WIDTH_LIMIT:
        raise ValueError(f"exhaustive check limited to k <= {EXHAUSTIVE_HALF_WIDTH_LIMIT}")
    if not 0 <= s <= params.mask:
        raise ValueError(f"s must fit in {params.width} bits")
    if s % 2 == 0:
        raise ValueError("weyl increment must be odd")
    n = 1 << params.width
    values = (np.arange(n, dtype=np.uint64) * np.uint64(s)) & np.uint64(params.mask)
    seen = np.zeros(n, bool)
    seen[values] = True
    return bool(seen.all())


def x_cycle_check(state: GMswsState, n_steps: int) -> bool:
    """True iff the (x, w) state pair never repeats within n_steps.

    Pair distinctness is the checkable form of "no repeating cycles in x":
    x values alone may recur transiently, but two equal x with different w
    produce different successors, so a cycle requires a repeated pair.
    The caller's state is not modified.
    """
    params = state.params
    if params.k > EXHAUSTIVE_HALF_WIDTH_LIMIT:
        raise ValueError(f"exhaustive check limited to k <= {EXHAUSTIVE_HALF_WIDTH_LIMIT}")
    if not 0 <= n_steps <= (1 << params.width):
        raise ValueError("n_steps must be within one period")
    keys = np.empty(n_steps, np.uint64)
    _kernels.pair_trace(
        np.uint64(state.x), np.uint64(state.w), np.uint64(state.s),
        np.uint64(params.mask), np.uint64(params.k), keys,
    )
    return int(np.unique(keys).size) == n_steps


def random_reduced_state(params: GenParams, rng) -> GMswsState:
    """Draw a test state whose increment has roughly half its bits set.

    Mirrors the guidance for full-width constants (irregular pattern, near
    half density, odd); used to seed reduced-width trials.
    """
    half = params.width // 2
    while True:
        s = rng.getrandbits(params.width) | 1
        if abs(bin(s).count("1") - half) <= 2:
            break
    return GMswsState(
        x=rng.getrandbits(params.width),
        w=rng.getrandbits(params.width),
        s=s,
        params=params,
    )
