"""Seed constants for the Weyl increment, and independent stream setup.

A good increment is an irregular bit pattern with roughly half the bits
set.  The constants produced here have all eight upper hexadecimal digits
pairwise distinct, and a lower half drawn from the image of the procedure
"pick eight distinct digits, then OR 1 into the lowest".  That OR collapses
some digit choices, so the accepted lower halves are exactly: digit 0 odd,
digits 1..7 pairwise distinct, and if digit 0 reappears among digits 1..7
then digit0-1 does not.

Streams are addressed by an integer index.  The index is passed through a
fixed cycle-walked 64-bit permutation (so consecutive indices give wildly
different constants) and the result is unranked into a constant.  Both maps
are bijections, so distinct indices always give distinct increments.
"""

import math
from dataclasses import dataclass
from typing import IO, Iterable, List, Optional, Sequence, Union

import numpy as np

from . import _kernels
from .core import MASK64, MswsState

UPPER_CONSTANT_COUNT = math.perm(16, 8)
LOWER_CLASS1_COUNT = 8 * math.perm(15, 7)
LOWER_CLASS2_COUNT = 8 * 7 * math.perm(14, 6)
LOWER_CONSTANT_COUNT = LOWER_CLASS1_COUNT + LOWER_CLASS2_COUNT
CONSTANT_COUNT = UPPER_CONSTANT_COUNT * LOWER_CONSTANT_COUNT

#: Valid stream indices are 0 <= n < STREAM_INDEX_LIMIT.
STREAM_INDEX_LIMIT = CONSTANT_COUNT

# Fixed permutation for index scrambling: odd multiplier, additive constant,
# xor-shift.  Pinned forever so stream n maps to the same constant on every
# platform and release.
SCRAMBLE_MULTIPLIER = 0x9E3779B97F4A7C15
SCRAMBLE_INCREMENT = 0x7F4A7C159E3779B9
SCRAMBLE_XOR_SHIFT = 31


def count_valid_constants() -> tuple:
    """Count the accepted constants: (upper half, lower half, total).

    Computed from the permutation counts each call, never from stored
    literals: 8-permutations of 16 digits for the upper half, and for the
    lower half the distinct class plus the duplicate-bearing class.
    """
    upper = math.perm(16, 8)
    lower = 8 * math.perm(15, 7) + 8 * 7 * math.perm(14, 6)
    return upper, lower, upper * lower


def lower_pattern_ok(nibs: Sequence[int], alphabet_size: int = 16) -> bool:
    """Check the lower-half digit rule over an arbitrary digit alphabet.

    ``nibs[0]`` is the least significant digit.  Exposed with a variable
    alphabet so reduced instances can be enumerated exhaustively against a
    brute-force model of the generation procedure.
    """
    n0 = nibs[0]
    rest = nibs[1:]
    if n0 % 2 == 0 or n0 >= alphabet_size:
        return False
    if any(d >= alphabet_size for d in rest):
        return False
    if len(set(rest)) != len(rest):
        return False
    if n0 in rest and (n0 - 1) in rest:
        return False
    return True


def _nibbles(v: int, count: int, shift: int) -> List[int]:
    return [(v >> (shift + 4 * i)) & 0xF for i in range(count)]


def rejection_reason(v: int) -> Optional[str]:
    """Why ``v`` is not an accepted constant, or None if it is."""
    if not 0 <= v <= MASK64:
        return "not a 64-bit word"
    if v % 2 == 0:
        return "even value"
    upper = _nibbles(v, 8, 32)
    if len(set(upper)) != 8:
        return "repeated nibbles"
    low = _nibbles(v, 8, 0)
    if len(set(low[1:])) != 7:
        return "repeated nibbles"
    if low[0] in low[1:] and (low[0] - 1) in low[1:]:
        return "conflicting duplicate nibbles"
    return None


def is_recommended_constant(v: int) -> bool:
    """True iff ``v`` has the recommended distinct-digit structure."""
    return rejection_reason(v) is None


def recommended_mask(values: np.ndarray) -> np.ndarray:
    """Vectorized :func:`is_recommended_constant` over a uint64 array."""
    values = np.asarray(values, dtype=np.uint64)
    nibs = [(values >> np.uint64(4 * i)) & np.uint64(0xF) for i in range(16)]
    ok = (nibs[0] & np.uint64(1)) == np.uint64(1)
    for i in range(8, 16):
        for j in range(i + 1, 16):
            ok &= nibs[i] != nibs[j]
    for i in range(1, 8):
        for j in range(i + 1, 8):
            ok &= nibs[i] != nibs[j]
    dup0 = np.zeros(values.shape, bool)
    dup_minus = np.zeros(values.shape, bool)
    lower_minus = (nibs[0] - np.uint64(1)) & np.uint64(0xF)
    for i in range(1, 8):
        dup0 |= nibs[i] == nibs[0]
        dup_minus |= nibs[i] == lower_minus
    ok &= ~(dup0 & dup_minus)
    return ok


@dataclass(frozen=True)
class SeedConstant:
    """A validated Weyl increment with the distinct-digit structure."""

    value: int

    def __post_init__(self) -> None:
        reason = rejection_reason(self.value)
        if reason is not None:
            raise ValueError(f"invalid seed constant {self.value:#x}: {reason}")

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value


def _unrank_perm(rank: int, pool: List[int], slots: int) -> List[int]:
    # pool must be sorted; enumeration is lexicographic over the remaining
    # digit list, first slot most significant.
    out = []
    for i in range(slots):
        f = math.perm(len(pool) - 1, slots - 1 - i)
        d, rank = divmod(rank, f)
        out.append(pool.pop(d))
    return out


def _rank_perm(chosen: Sequence[int], pool: List[int]) -> int:
    rank = 0
    slots = len(chosen)
    for i, digit in enumerate(chosen):
        d = pool.index(digit)
        rank += d * math.perm(len(pool) - 1, slots - 1 - i)
        pool.pop(d)
    return rank


def decode_constant(rank: int) -> SeedConstant:
    """Unrank ``rank`` in [0, CONSTANT_COUNT) to a seed constant.

    Mixed radix: the quotient by the lower-half count selects the upper
    8-permutation (most significant nibble first), the remainder selects
    the lower half.  Lower ranks below the distinct-class size enumerate
    lower halves whose digit 0 is absent from digits 7..1; the remaining
    ranks enumerate the duplicate-bearing class where digit 0 also occupies
    one of the seven upper positions.
    """
    if not 0 <= rank < CONSTANT_COUNT:
        raise ValueError(f"rank out of range: {rank}")
    upper_rank, lower_rank = divmod(rank, LOWER_CONSTANT_COUNT)
    v = 0
    for nib in _unrank_perm(upper_rank, list(range(16)), 8):
        v = (v << 4) | nib
    if lower_rank < LOWER_CLASS1_COUNT:
        o_idx, perm_rank = divmod(lower_rank, math.perm(15, 7))
        o = 2 * o_idx + 1
        pool = [d for d in range(16) if d != o]
        low = _unrank_perm(perm_rank, pool, 7) + [o]
    else:
        r = lower_rank - LOWER_CLASS1_COUNT
        o_idx, rem = divmod(r, 7 * math.perm(14, 6))
        o = 2 * o_idx + 1
        pos, perm_rank = divmod(rem, math.perm(14, 6))
        pool = [d for d in range(16) if d not in (o, o - 1)]
        rest = _unrank_perm(perm_rank, pool, 6)
        low = rest[:pos] + [o] + rest[pos:] + [o]
    for nib in low:
        v = (v << 4) | nib
    return SeedConstant(v)


def encode_constant(c: Union[SeedConstant, int]) -> int:
    """Rank a seed constant; exact inverse of :func:`decode_constant`."""
    v = int(c)
    reason = rejection_reason(v)
    if reason is not None:
        raise ValueError(f"invalid seed constant {v:#x}: {reason}")
    upper = _nibbles(v, 8, 32)[::-1]  # most significant first
    upper_rank = _rank_perm(upper, list(range(16)))
    low = _nibbles(v, 8, 0)  # low[0] least significant
    o = low[0]
    o_idx = (o - 1) // 2
    slots = low[1:][::-1]  # nibble 7 down to nibble 1
    if o not in slots:
        pool = [d for d in range(16) if d != o]
        lower_rank = o_idx * math.perm(15, 7) + _rank_perm(slots, pool)
    else:
        pos = slots.index(o)
        rest = slots[:pos] + slots[pos + 1:]
        pool = [d for d in range(16) if d not in (o, o - 1)]
        lower_rank = (
            LOWER_CLASS1_COUNT
            + o_idx * 7 * math.perm(14, 6)
            + pos * math.perm(14, 6)
            + _rank_perm(rest, pool)
        )
    return upper_rank * LOWER_CONSTANT_COUNT + lower_rank


def decode_constants(ranks) -> np.ndarray:
    """Batch :func:`decode_constant`, returning raw uint64 values."""
    ranks = np.ascontiguousarray(ranks, dtype=np.int64)
    if ranks.size and (ranks.min() < 0 or ranks.max() >= CONSTANT_COUNT):
        raise ValueError("rank out of range")
    out = np.empty(ranks.size, np.uint64)
    _kernels.decode_batch(ranks, out)
    return out


def scramble_index(n: int) -> int:
    """Cycle-walk ``n`` through a fixed 64-bit permutation into range.

    Applies multiply-add then xor-shift repeatedly until the value lands in
    [0, CONSTANT_COUNT); inputs at or above the limit are first reduced
    modulo it.  Walking a bijection is a bijection, so distinct indices
    give distinct ranks.  About 93 applications are expected per call.
    """
    if n < 0:
        raise ValueError("index must be >= 0")
    v = n % CONSTANT_COUNT
    while True:
        v = (v * SCRAMBLE_MULTIPLIER + SCRAMBLE_INCREMENT) & MASK64
        v ^= v >> SCRAMBLE_XOR_SHIFT
        if v < CONSTANT_COUNT:
            return v


def scramble_indices(ns) -> np.ndarray:
    """Vectorized :func:`scramble_index` over an array of indices."""
    v = np.ascontiguousarray(ns, dtype=np.uint64) % np.uint64(CONSTANT_COUNT)
    limit = np.uint64(CONSTANT_COUNT)
    mul = np.uint64(SCRAMBLE_MULTIPLIER)
    add = np.uint64(SCRAMBLE_INCREMENT)
    shift = np.uint64(SCRAMBLE_XOR_SHIFT)
    active = np.arange(v.size)
    while active.size:
        vv = v[active] * mul + add
        vv ^= vv >> shift
        v[active] = vv
        active = active[vv >= limit]
    return v


def init_rand_digits(n: int) -> SeedConstant:
    """Map stream index ``n`` to its seed constant.

    Injective over the whole index range because it composes two
    bijections: the index scramble and the rank decode.
    """
    if not 0 <= n < STREAM_INDEX_LIMIT:
        raise ValueError(f"stream index out of range: {n}")
    return decode_constant(scramble_index(n))


def new_stream(n: int) -> MswsState:
    """Generator state for stream ``n``: x = w = s = init_rand_digits(n).

    Starting x and w at the constant (rather than zero) makes the very
    first iteration already randomize, so first outputs across streams look
    random as a set.
    """
    c = init_rand_digits(n).value
    return MswsState(x=c, w=c, s=c)


class SeedFileError(ValueError):
    """Raised for malformed seed-file lines; carries the line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def emit_seed_file(indices: Iterable[int], destination: Union[str, IO[str]]) -> None:
    """Write one constant per index as ``0x...,`` lines.

    The format is usable verbatim as a C array initializer body.
    """
    lines = [f"0x{init_rand_digits(n).value:016x},\n" for n in indices]
    if hasattr(destination, "write"):
        destination.write("".join(lines))
    else:
        with open(destination, "w", encoding="ascii") as fh:
            fh.write("".join(lines))


def parse_seed_file(source: Union[str, IO[str]]) -> List[int]:
    """Read constants back from the seed-file format.

    Blank lines and a trailing comma are tolerated; anything else raises
    :class:`SeedFileError` naming the offending line.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="ascii") as fh:
            text = fh.read()
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.endswith(","):
            line = line[:-1].rstrip()
        if not line.lower().startswith("0x"):
            raise SeedFileError(lineno, f"expected 0x-prefixed constant, got {raw!r}")
        try:
            value = int(line, 16)
        except ValueError:
            raise SeedFileError(lineno, f"invalid hex constant {raw!r}") from None
        if value > MASK64:
            raise SeedFileError(lineno, f"constant wider than 64 bits: {raw!r}")
        values.append(value)
    return values
