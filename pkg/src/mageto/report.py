"""Run the measurements behind the claims and write them out as TSV plus figures."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from . import plotting
from .analysis import first_byte_attack
from .bench import run_bench
from .ca import evolution_history, mixed_state
from .stats import avalanche_fraction, randomness_battery
from .variants import ExtractionPattern, KeystreamVariant, v1_keystream

VARIANTS = [KeystreamVariant("v1"), KeystreamVariant("v2"), KeystreamVariant("v3")]


def attack_sweep(seeds: int = 20, evolutions: int = 64):
    """Per-pattern lists of attack reports over `seeds` distinct keys."""
    out = {}
    for pattern in (ExtractionPattern.BROKEN5, ExtractionPattern.SECURE):
        reports = []
        for k in range(seeds):
            state = mixed_state(f"attack seed {k}".encode())
            obs = v1_keystream(state, pattern, evolutions * state.params.a, unlock_analysis=True)
            reports.append(first_byte_attack(obs, pattern, evolutions))
        out[pattern.value] = reports
    return out


def run_report(out_dir, stats_bytes: int = 10 << 20, avalanche_bytes: int = 1 << 20,
               bench_seconds: float = 0.5, attack_seeds: int = 20) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = []

    samples = {}
    for v in VARIANTS:
        data = v.open(b"report battery key").read(stats_bytes)
        samples[v.label] = data
        for name, value in vars(randomness_battery(data)).items():
            rows.append(("stats", v.label, name, value))
        rows.append(("avalanche", v.label, "bit_fraction",
                     avalanche_fraction("entropy0", "entropy1", v, avalanche_bytes)))

    sweep = attack_sweep(attack_seeds)
    for pattern, reports in sweep.items():
        hits = sum(r.hits for r in reports)
        preds = sum(r.predictions for r in reports)
        rows += [("attack", pattern, "predictions", preds), ("attack", pattern, "hits", hits),
                 ("attack", pattern, "accuracy", hits / preds)]

    bench = run_bench(bench_seconds)
    for label, bps, ratio in bench.rows():
        rows += [("bench", label, "bytes_per_s", bps), ("bench", label, "ratio_vs_v1@32", ratio)]

    with open(out / "report.tsv", "w") as fh:
        fh.write("section\tsubject\tmetric\tvalue\n")
        for section, subject, metric, value in rows:
            fh.write(f"{section}\t{subject}\t{metric}\t{value:.6g}\n")

    for seed in ("entropy0", "entropy1"):
        plotting.plot_bytes(evolution_history(seed, 1024), out / f"{seed}.png", title=f'seed "{seed}"')
    plotting.plot_histograms({k: v[:1 << 20] for k, v in samples.items()}, out / "byte_histograms.png")
    plotting.plot_attack({p: np.array([r.accuracy for r in rs]) for p, rs in sweep.items()},
                         out / "attack_accuracy.png")
    plotting.plot_bench(bench, out / "throughput.png")
    return out
