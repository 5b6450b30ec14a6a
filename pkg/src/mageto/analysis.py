"""First-byte continuation attack on v1 and the v2/v3 keystream relations.

The attack only ever sees keystream bytes. When every output byte is the
most significant byte of its cell, XORing the same cell across two
evolutions gives the top byte of the carry that updated it, and the top
bytes of the neighbours are enough to guess the branch most of the time.
That lets an observer predict the next output byte well above chance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ca import DEFAULT_CELLS, alternating_constant
from .errors import InsufficientData
from .variants import ExtractionPattern, V2Trace, V3Trace

BASELINE = 1 / 256


@dataclass(frozen=True)
class AttackReport:
    pattern: str
    predictions: int
    hits: int
    baseline: float = BASELINE

    @property
    def accuracy(self) -> float:
        return self.hits / self.predictions

    def to_text(self) -> str:
        return "\n".join([
            f"pattern\t{self.pattern}",
            f"predictions\t{self.predictions}",
            f"hits\t{self.hits}",
            f"accuracy\t{self.accuracy:.6f}",
            f"baseline\t{self.baseline:.6f}",
        ])


def first_byte_attack(observed: bytes, pattern, evolutions: int | None = None,
                      cells: int = DEFAULT_CELLS, width: int = 32) -> AttackReport:
    """Predict each output byte from the bytes observed before it.

    `observed` is a v1 keystream starting right after mixing. Each byte is
    treated as the top byte of its cell, which is only true for the
    broken5 pattern; for other one-byte patterns the same predictor runs
    on misaligned bytes and should fall to chance.
    """
    pattern = ExtractionPattern(pattern)
    if pattern.bytes_per_cell != 1:
        raise ValueError(f"pattern {pattern.value!r} emits several bytes per cell; not supported")
    a = cells
    available = len(observed) // a
    if evolutions is None:
        evolutions = available
    if evolutions < 2 or available < evolutions:
        raise InsufficientData(f"need at least 2 full evolutions ({2 * a} bytes), "
                               f"have {len(observed)} bytes")
    top_d = alternating_constant(width) >> (width - 8)
    rows = np.frombuffer(observed[:evolutions * a], dtype=np.uint8).reshape(evolutions, a)
    rows = rows.astype(int).tolist()

    predictions = hits = 0
    for t in range(1, evolutions):
        cur, prev = rows[t], rows[t - 1]
        for i in range(a):
            # top byte of the carry that updated the previous cell
            if i:
                c = cur[i - 1] ^ prev[i - 1]
            elif t >= 2:
                c = prev[a - 1] ^ rows[t - 2][a - 1]
            else:
                continue
            c = (c + top_d) & 0xFF  # carry-in from the hidden low bytes ignored
            g1, g2, g3 = ((prev[j] if j < a else cur[j - a]) for j in (i + 1, i + 2, i + 3))
            c ^= g1 if g2 > g3 else g1 ^ 0xFF
            predictions += 1
            hits += (prev[i] ^ c) == cur[i]
    return AttackReport(pattern.value, predictions, hits)


def verify_v3_row_identity(trace: V3Trace) -> bool:
    """s[i] ^ s[i+4] == A'[i] ^ A'[i+4] within every recorded evolution."""
    s, cells = trace.outputs, trace.cells
    if s.size == 0:
        return True
    return bool(np.array_equal(s[:, :-4] ^ s[:, 4:], cells[:, :-4] ^ cells[:, 4:]))


def verify_v2_evolution_identity(trace: V2Trace) -> bool:
    """XOR of the members' carries at cell i == s[i] ^ s'[i] across consecutive evolutions."""
    s = trace.outputs
    if len(s) < 2:
        return True
    carry = trace.carries[0][1:].copy()
    for c in trace.carries[1:]:
        carry ^= c[1:]
    return bool(np.array_equal(carry, s[:-1] ^ s[1:]))
