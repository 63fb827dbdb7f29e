"""Lightweight statistical screening for 32-bit generator output.

Adding a uniform sequence to the squared term makes the summed output
uniform regardless of how non-uniform the square alone is, so uniformity
is the first property worth screening.  This module provides a chi-square
goodness-of-fit over value bins, per-bit one-frequency z-scores, and a
two-dimensional serial test over high-byte pairs.  Heavyweight batteries
are deliberately out of scope; the command-line raw stream exists to feed
those externally.

P-values use the Wilson-Hilferty cube-root normal approximation, which
needs nothing beyond ``math.erfc`` and is accurate to well within the
screening bands used here.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass
class ChiSquareReport:
    """Chi-square statistic, its degrees of freedom, p-value, and counts."""

    statistic: float
    degrees_of_freedom: int
    p_value: float
    bins: np.ndarray


def chi_square_sf(statistic: float, dof: int) -> float:
    """Upper tail probability of the chi-square distribution.

    Wilson-Hilferty: (X/n)^(1/3) is approximately normal with mean
    1 - 2/(9n) and variance 2/(9n).
    """
    if dof < 1:
        raise ValueError("degrees of freedom must be >= 1")
    if statistic < 0:
        raise ValueError("statistic must be >= 0")
    mu = 1.0 - 2.0 / (9.0 * dof)
    sigma = math.sqrt(2.0 / (9.0 * dof))
    z = ((statistic / dof) ** (1.0 / 3.0) - mu) / sigma
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def _as_samples(samples) -> np.ndarray:
    arr = np.asarray(samples)
    if arr.ndim != 1:
        raise ValueError("samples must be one-dimensional")
    return arr.astype(np.uint32, copy=False)


def chi_square_uniformity(samples, bin_count: int) -> ChiSquareReport:
    """Chi-square test of value uniformity over equal-width bins.

    ``bin_count`` must divide 2^32 (hence be a power of two) and the sample
    count must be at least ten per bin.
    """
    arr = _as_samples(samples)
    if bin_count < 2 or (1 << 32) % bin_count != 0:
        raise ValueError(f"bin_count must divide 2^32 and be >= 2, got {bin_count}")
    n = arr.size
    if n < 10 * bin_count:
        raise ValueError(f"need at least {10 * bin_count} samples, got {n}")
    shift = 32 - (bin_count.bit_length() - 1)
    bins = np.bincount(arr >> np.uint32(shift), minlength=bin_count)
    expected = n / bin_count
    statistic = float(((bins - expected) ** 2 / expected).sum())
    dof = bin_count - 1
    return ChiSquareReport(statistic, dof, chi_square_sf(statistic, dof), bins)


def bit_frequency(samples) -> np.ndarray:
    """Per-bit one-frequency z-scores over 32 bit positions.

    For each bit, z = (ones - N/2) / sqrt(N/4); under uniformity each z is
    approximately standard normal.
    """
    arr = _as_samples(samples)
    n = arr.size
    if n < 10_000:
        raise ValueError(f"need at least 10000 samples, got {n}")
    zs = np.empty(32, np.float64)
    half = n / 2.0
    scale = math.sqrt(n / 4.0)
    for b in range(32):
        ones = int(((arr >> np.uint32(b)) & np.uint32(1)).sum())
        zs[b] = (ones - half) / scale
    return zs


def pair_serial_test(samples) -> ChiSquareReport:
    """Serial chi-square over 256x256 bins of consecutive high bytes.

    Sample 2i supplies the row byte and sample 2i+1 the column byte.  The
    sample count must be even and at least 10 * 2^16, which puts five or
    more expected pairs in every bin.  The report's bins count pairs.
    """
    arr = _as_samples(samples)
    n = arr.size
    if n % 2 != 0:
        raise ValueError("sample count must be even")
    if n < 10 * (1 << 16):
        raise ValueError(f"need at least {10 * (1 << 16)} samples, got {n}")
    hi = arr >> np.uint32(24)
    keys = (hi[0::2] << np.uint32(8)) | hi[1::2]
    bins = np.bincount(keys, minlength=1 << 16)
    pairs = n // 2
    expected = pairs / (1 << 16)
    statistic = float(((bins - expected) ** 2 / expected).sum())
    dof = (1 << 16) - 1
    return ChiSquareReport(statistic, dof, chi_square_sf(statistic, dof), bins)
