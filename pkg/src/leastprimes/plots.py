"""Figure rendering for the CLI report paths.

Each function writes one PNG next to the delimited output and returns the
path.  Figures are deliberately plain: matplotlib defaults, one panel each.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_DPI = 150


def _finish(fig, out: Path) -> Path:
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=_DPI, bbox_inches="tight")
    plt.close(fig)
    return out


def constants_figure(rows: Sequence[dict], out: Path, title: str) -> Path:
    """Computed values with reference overlays plus the absolute differences.

    `rows` are the dicts emitted by the constants report (label, value,
    reference, diff fields; reference may be None).
    """
    labels = [r["class"] or r["quantity"] for r in rows]
    values = [r["value"] for r in rows]
    refs = [r.get("reference") for r in rows]
    fig, (ax1, ax2) = plt.subplots(
        1, 2, figsize=(9, 0.5 + 0.45 * max(len(rows), 4))
    )
    ypos = np.arange(len(rows))
    ax1.barh(ypos, values, color="#4878d0", label="computed")
    have_ref = [i for i, r in enumerate(refs) if r is not None]
    if have_ref:
        ax1.plot(
            [refs[i] for i in have_ref],
            [ypos[i] for i in have_ref],
            "k|",
            markersize=12,
            label="reference",
        )
    ax1.set_yticks(ypos)
    ax1.set_yticklabels(labels)
    ax1.invert_yaxis()
    ax1.set_xlabel("average value")
    ax1.set_title(title)
    ax1.legend(fontsize=8)
    diffs = [abs(r["diff"]) if r.get("diff") is not None else np.nan for r in rows]
    ax2.barh(ypos, diffs, color="#d65f5f")
    ax2.set_yticks(ypos)
    ax2.set_yticklabels([])
    ax2.invert_yaxis()
    ax2.set_xscale("log")
    ax2.set_xlabel("|computed - reference|")
    fig.tight_layout()
    return _finish(fig, out)


def montecarlo_figure(
    counts: Mapping[int, int],
    mc_mean: float,
    series_value: Optional[float],
    out: Path,
    title: str,
) -> Path:
    """First-hit prime histogram with the sample and series means marked."""
    primes = sorted(counts)
    total = sum(counts.values())
    freq = [counts[p] / total for p in primes]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(range(len(primes)), freq, color="#4878d0")
    ax.set_xticks(range(len(primes)))
    step = max(1, len(primes) // 20)
    ax.set_xticklabels(
        [str(p) if i % step == 0 else "" for i, p in enumerate(primes)], fontsize=7
    )
    ax.set_yscale("log")
    ax.set_xlabel("first-hit prime")
    ax.set_ylabel("sample fraction")
    ax.set_title(f"{title}\nsample mean {mc_mean:.6g}"
                 + (f", series {series_value:.6g}" if series_value is not None else ""))
    fig.tight_layout()
    return _finish(fig, out)


def quadratic_figure(
    ds: np.ndarray,
    values: np.ndarray,
    predicted: float,
    out: Path,
    title: str,
) -> Path:
    """Running mean of the statistic against |D|, with the predicted limit."""
    order = np.argsort(np.abs(ds), kind="stable")
    v = values[order].astype(np.float64)
    running = np.cumsum(v) / np.arange(1, v.size + 1)
    x = np.abs(ds)[order]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(x, running, lw=1, color="#4878d0", label="running mean")
    ax.axhline(predicted, color="#d65f5f", ls="--", lw=1, label=f"predicted {predicted:.6g}")
    ax.set_xscale("log")
    ax.set_xlabel("|D|")
    ax.set_ylabel("mean")
    ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    return _finish(fig, out)


def scan_figure(
    values: Sequence[int],
    empirical_mean: Optional[float],
    predicted_mean: float,
    out: Path,
    title: str,
) -> Path:
    """Histogram of per-field least primes with both means marked."""
    fig, ax = plt.subplots(figsize=(7, 4))
    if values:
        uniq = sorted(set(values))
        ax.hist(
            values,
            bins=[u - 0.5 for u in uniq] + [uniq[-1] + 0.5],
            color="#4878d0",
        )
    if empirical_mean is not None:
        ax.axvline(empirical_mean, color="k", lw=1, label=f"empirical {empirical_mean:.4g}")
    ax.axvline(predicted_mean, color="#d65f5f", ls="--", lw=1, label=f"predicted {predicted_mean:.4g}")
    ax.set_xlabel("least prime")
    ax.set_ylabel("fields")
    ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    return _finish(fig, out)
