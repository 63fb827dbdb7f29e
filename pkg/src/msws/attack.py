"""Brute-force state recovery against the reduced-width generator.

Each k-bit output reveals the low half of a post-rotation x word, leaving k
bits hidden.  Guessing the hidden halves of three consecutive x values
determines the pre-rotation words (the rotation is its own inverse), hence
two consecutive Weyl values and the increment:

    w[i+1] = pre_rot(x[i+1]) - x[i]^2
    s      = w[i+2] - w[i+1]        (all modulo 2^2k)

Every (2^k)^3 guess is enumerated and each derived (x, w, s) candidate is
replayed against the remaining outputs; candidates with an even increment
are dropped since no generator instance can carry one.  At k=32 the same
structure costs 2^96 candidate triples, which is the demonstrated scaling;
this module only implements widths small enough to enumerate on a desk
machine, and makes no claim about security at full width.

The top bit of a window's leading x never influences anything observable
(it feeds only the square, where it cancels modulo 2^2k), so survivors are
reported with that bit cleared and duplicates that differ only in such
unobservable bits are merged.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from . import _kernels
from .widths import EXHAUSTIVE_HALF_WIDTH_LIMIT, GenParams

#: Fewest outputs accepted: three derive a candidate, two or more filter it.
MIN_OUTPUTS = 5


@dataclass(frozen=True)
class RecoveredState:
    """Candidate (x, w, s) that replays every supplied output.

    ``x`` carries output 0 in its low k bits and is the minimal member of
    its observational class; stepping the generator from (x, w, s)
    reproduces outputs 1..N-1.  ``verified_against`` records how many
    outputs the candidate is consistent with in total.
    """

    x: int
    w: int
    s: int
    verified_against: int


@dataclass(frozen=True)
class AttackScan:
    """Full result of one scan: survivors plus the enumeration counter."""

    survivors: Tuple[RecoveredState, ...]
    candidates_checked: int
    params: GenParams


def attack_cost_model(k: int) -> int:
    """Candidate triples enumerated at half-width k: (2^k)^3.

    Extrapolates to 2^96 at the full k=32 width.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    return 1 << (3 * k)


def window_representative(x: int, w: int, s: int, params: GenParams) -> Tuple[int, int, int]:
    """Reduce a state to the canonical member of its observational class.

    States whose x values share low k bits and the same square modulo 2^2k
    are indistinguishable from outputs; the representative is the smallest
    such x.  Used to compare a known true state against scan survivors.
    """
    mask = params.mask
    kmask = params.out_mask
    low = x & kmask
    sq = (x * x) & mask
    for h in range(1 << params.k):
        cand = (h << params.k) | low
        if (cand * cand) & mask == sq:
            return cand, w, s
    raise AssertionError("state is a member of its own class")


def scan_candidates(
    outputs: Sequence[int],
    params: GenParams,
    *,
    survivor_cap: int = 4096,
) -> AttackScan:
    """Enumerate all (2^k)^3 hidden-half triples and filter by replay.

    Returns every surviving candidate class (the true generator state, in
    canonical form, is always among them) together with the exact number
    of candidates examined.
    """
    if params.k > EXHAUSTIVE_HALF_WIDTH_LIMIT:
        raise ValueError(
            f"attack enumeration limited to k <= {EXHAUSTIVE_HALF_WIDTH_LIMIT}, got {params.k}"
        )
    outs = list(outputs)
    if len(outs) < MIN_OUTPUTS:
        raise ValueError(f"need at least {MIN_OUTPUTS} outputs, got {len(outs)}")
    kmask = params.out_mask
    for o in outs:
        if not 0 <= o <= kmask:
            raise ValueError(f"output {o:#x} does not fit in {params.k} bits")
    arr = np.array(outs, np.uint64)
    mask = np.uint64(params.mask)
    cap = survivor_cap
    while True:
        sx = np.empty(cap, np.uint64)
        sw = np.empty(cap, np.uint64)
        ss = np.empty(cap, np.uint64)
        checked, found = _kernels.attack_scan(arr, params.k, mask, sx, sw, ss)
        if found <= cap:
            break
        cap = found  # degenerate inputs can flood the survivor buffer
    maskint = params.mask
    survivors: List[RecoveredState] = []
    seen = set()
    for i in range(found):
        x = int(sx[i])
        key = ((x * x) & maskint, int(sw[i]), int(ss[i]))
        if key in seen:
            continue
        seen.add(key)
        survivors.append(RecoveredState(x, int(sw[i]), int(ss[i]), len(outs)))
    return AttackScan(tuple(survivors), int(checked), params)


def recover_state(outputs: Sequence[int], params: GenParams) -> List[RecoveredState]:
    """All states consistent with ``outputs``; see :func:`scan_candidates`."""
    return list(scan_candidates(outputs, params).survivors)
