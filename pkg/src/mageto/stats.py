"""A small randomness battery and the seed avalanche measurement."""

from __future__ import annotations

from dataclasses import dataclass, asdict
from math import erfc, sqrt

import numpy as np
from scipy import stats as sps

from .errors import DataTooShort
from .variants import KeystreamVariant

MIN_BYTES = 4096
P_FLOOR = 0.001


@dataclass(frozen=True)
class StatReport:
    monobit_p: float
    byte_chi2_p: float
    runs_p: float
    serial_corr: float
    entropy_bits_per_byte: float

    @property
    def p_values(self):
        return {"monobit_p": self.monobit_p, "byte_chi2_p": self.byte_chi2_p,
                "runs_p": self.runs_p}

    def passes(self, floor: float = P_FLOOR, min_entropy: float = 7.99) -> bool:
        return (all(p >= floor for p in self.p_values.values())
                and self.entropy_bits_per_byte >= min_entropy)

    def to_text(self) -> str:
        return "\n".join(f"{k}\t{v:.6g}" for k, v in asdict(self).items())


def monobit(bits: np.ndarray) -> float:
    n = bits.size
    s = 2 * int(np.count_nonzero(bits)) - n
    return erfc(abs(s) / sqrt(2 * n))


def runs(bits: np.ndarray) -> float:
    n = bits.size
    pi = np.count_nonzero(bits) / n
    # frequency prerequisite of the runs test
    if abs(pi - 0.5) >= 2 / sqrt(n):
        return 0.0
    v = int(np.count_nonzero(bits[1:] != bits[:-1])) + 1
    return erfc(abs(v - 2 * n * pi * (1 - pi)) / (2 * sqrt(2 * n) * pi * (1 - pi)))


def byte_chi2(data: np.ndarray) -> float:
    counts = np.bincount(data, minlength=256)
    return float(sps.chisquare(counts).pvalue)


def serial_correlation(data: np.ndarray) -> float:
    x = data[:-1].astype(np.float64)
    y = data[1:].astype(np.float64)
    if x.std() == 0 or y.std() == 0:
        return 0.0
    return float(np.corrcoef(x, y)[0, 1])


def entropy(data: np.ndarray) -> float:
    counts = np.bincount(data, minlength=256)
    p = counts[counts > 0] / data.size
    return float(max(0.0, -(p * np.log2(p)).sum()))


def randomness_battery(data: bytes) -> StatReport:
    if len(data) < MIN_BYTES:
        raise DataTooShort(f"need at least {MIN_BYTES} bytes, got {len(data)}")
    arr = np.frombuffer(data, dtype=np.uint8)
    bits = np.unpackbits(arr)
    return StatReport(
        monobit_p=monobit(bits),
        byte_chi2_p=byte_chi2(arr),
        runs_p=runs(bits),
        serial_corr=serial_correlation(arr),
        entropy_bits_per_byte=entropy(arr),
    )


def bit_difference(x: bytes, y: bytes) -> float:
    """Fraction of differing bits between two equal-length byte strings."""
    if len(x) != len(y):
        raise ValueError("inputs differ in length")
    if not x:
        return 0.0
    diff = np.bitwise_xor(np.frombuffer(x, np.uint8), np.frombuffer(y, np.uint8))
    return int(np.unpackbits(diff).sum()) / (8 * len(x))


def avalanche_fraction(seed1, seed2, variant: KeystreamVariant | None = None,
                       n: int = 1 << 20, params=None) -> float:
    variant = variant or KeystreamVariant()
    s1 = variant.open(seed1, params).read(n)
    s2 = variant.open(seed2, params).read(n)
    return bit_difference(s1, s2)
