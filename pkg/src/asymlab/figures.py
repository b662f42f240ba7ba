"""Figure rendering for the report paths; files are written next to the delimited output."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .asymmetry import AsymmetryReport, bound_eval, _admissible_iter


def save_histogram_figure(report: AsymmetryReport, path: str | Path) -> Path:
    """Bar chart of the automorphism-group-order histogram."""
    path = Path(path)
    orders = list(report.aut_order_histogram)
    counts = [report.aut_order_histogram[o] for o in orders]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(range(len(orders)), counts, color="#4878a8")
    ax.set_xticks(range(len(orders)))
    ax.set_xticklabels([str(o) for o in orders], rotation=45 if len(orders) > 6 else 0)
    ax.set_xlabel("automorphism group order")
    ax.set_ylabel("labeled structures")
    if counts and max(counts) / max(min(counts), 1) > 50:
        ax.set_yscale("log")
    ax.set_title(
        f"{report.kind} n={report.n}: {report.with_nontrivial_aut}/{report.total} "
        "with non-trivial automorphisms"
    )
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_crossover_figure(
    kind: str, n0: int, path: str | Path, eps: float | None = None
) -> Path:
    """Log-domain lower bound vs automorphism upper bound around the crossover."""
    path = Path(path)
    lower_kind, upper_kind = {
        "latin": ("latin_lower", "latin_aut_upper"),
        "sts": ("sts_lower", "sts_aut_upper"),
        "ep": ("ep_lower", "ep_aut_upper"),
    }[kind]
    use_eps = None if kind == "latin" else eps
    lo = max(2, n0 - max(20, n0 // 4))
    ns = list(_admissible_iter(kind, lo, n0 + 60))
    lower = [bound_eval(lower_kind, n, use_eps).ln_float() for n in ns]
    upper = [bound_eval(upper_kind, n, use_eps).ln_float() for n in ns]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ns, lower, label="ln lower bound", color="#2a7d2a")
    ax.plot(ns, upper, label="ln upper bound (with automorphisms)", color="#a83232")
    ax.axvline(n0, color="gray", linestyle="--", label=f"crossover n0={n0}")
    ax.set_xlabel("n")
    ax.set_ylabel("natural log of bound")
    title = f"{kind} bound crossover"
    if use_eps is not None:
        title += f" (eps={eps})"
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
