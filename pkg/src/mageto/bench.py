"""Sustained keystream throughput per variant and cell width."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .ca import CaParams
from .variants import KeystreamVariant

CASES = [(tag, width) for tag in ("v1", "v2", "v3") for width in (32, 64)]
REFERENCE = "v1@32"
CHUNK = 1 << 18


@dataclass
class BenchReport:
    throughput: dict  # label -> bytes per second

    def ratio(self, label: str, reference: str = REFERENCE) -> float:
        return self.throughput[label] / self.throughput[reference]

    def rows(self):
        for label, bps in self.throughput.items():
            yield label, bps, self.ratio(label)

    def to_text(self, sep: str = "\t") -> str:
        lines = [sep.join(("variant", "bytes_per_s", "ratio_vs_" + REFERENCE))]
        lines += [sep.join((label, f"{bps:.0f}", f"{r:.3f}")) for label, bps, r in self.rows()]
        return "\n".join(lines)


def measure(variant: KeystreamVariant, width: int, duration: float = 0.5,
            chunk: int = CHUNK) -> float:
    stream = variant.open(b"benchmark key", CaParams(b=width))
    stream.read(chunk)  # warm-up, includes any JIT compilation
    total = 0
    start = time.perf_counter()
    while True:
        stream.read(chunk)
        total += chunk
        elapsed = time.perf_counter() - start
        if elapsed >= duration:
            return total / elapsed


def run_bench(duration: float = 0.5, cases=CASES) -> BenchReport:
    # one variant at a time, in sequence, so measurements do not overlap
    return BenchReport({f"{tag}@{width}": measure(KeystreamVariant(tag), width, duration)
                        for tag, width in cases})
