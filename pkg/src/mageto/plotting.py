"""Matplotlib figures for the report command. Everything renders off-screen."""

import math

import matplotlib
import matplotlib.ticker

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_bytes(data: bytes, path, width: int = 64, title: str = ""):
    """One pixel per byte, 8-bit greyscale, row-major."""
    height = math.ceil(len(data) / width)
    img = np.frombuffer(bytes(data).ljust(width * height, b"\0"), np.uint8).reshape(height, width)
    fig, ax = plt.subplots(figsize=(4, 4 * height / width + 0.4))
    ax.imshow(img, cmap="gray", vmin=0, vmax=255, interpolation="nearest")
    ax.set_title(title, fontsize=9)
    ax.set_xticks([])
    ax.set_yticks([])
    return _finish(fig, path)


def plot_bench(report, path):
    labels = list(report.throughput)
    mbps = [report.throughput[k] / 1e6 for k in labels]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    bars = ax.bar(labels, mbps, color=["#7a9cc6" if "@32" in k else "#2d5c8f" for k in labels])
    for bar, label in zip(bars, labels):
        ax.annotate(f"{report.ratio(label):.2f}x", (bar.get_x() + bar.get_width() / 2, bar.get_height()),
                    ha="center", va="bottom", fontsize=8)
    ax.set_ylabel("MB/s")
    ax.set_title("keystream throughput (ratio vs v1@32)", fontsize=9)
    return _finish(fig, path)


def plot_attack(per_seed: dict, path, baseline: float = 1 / 256):
    """Per-seed prediction accuracy for each extraction pattern, log scale."""
    fig, ax = plt.subplots(figsize=(6, 3.5))
    for name, accs in per_seed.items():
        # zero hits cannot be drawn on a log axis
        ax.plot(range(len(accs)), np.maximum(accs, 1e-5), "o-", ms=3, label=name)
    ax.axhline(baseline, color="k", ls="--", lw=0.8, label="1/256")
    ax.set_yscale("log")
    ax.set_xlabel("seed")
    ax.xaxis.set_major_locator(matplotlib.ticker.MaxNLocator(integer=True))
    ax.set_ylabel("next-byte prediction accuracy")
    ax.legend(fontsize=8)
    return _finish(fig, path)


def plot_histograms(samples: dict, path):
    fig, ax = plt.subplots(figsize=(6, 3.5))
    for name, data in samples.items():
        counts = np.bincount(np.frombuffer(data, np.uint8), minlength=256)
        ax.step(np.arange(256), counts / counts.mean(), where="mid", lw=0.8, label=name)
    ax.set_xlabel("byte value")
    ax.set_ylabel("count / expected")
    ax.legend(fontsize=8)
    return _finish(fig, path)
