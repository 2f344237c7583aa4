"""Figures for bounded word checks."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .embedding import FaithfulnessReport  # noqa: E402


def plot_piece_growth(report: FaithfulnessReport, path, title: str | None = None) -> None:
    """Piece counts of word images against word length, next to word counts."""
    lengths = [s.length for s in report.stats]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax1.plot(lengths, [s.max_pieces for s in report.stats], "o-", label="max")
    ax1.plot(lengths, [s.mean_pieces for s in report.stats], "s--", label="mean")
    ax1.set_xlabel("word length")
    ax1.set_ylabel("pieces after reduction")
    ax1.legend(frameon=False)

    nontrivial = [s.words - s.trivial for s in report.stats]
    ax2.bar(lengths, [s.trivial for s in report.stats], label="trivial in RAAG")
    ax2.bar(lengths, nontrivial, bottom=[s.trivial for s in report.stats], label="nontrivial")
    bad = [s.counterexamples for s in report.stats]
    if any(bad):
        ax2.plot(lengths, bad, "rx", ms=9, label="counterexamples")
    ax2.set_yscale("log")
    ax2.set_xlabel("word length")
    ax2.set_ylabel("words")
    ax2.legend(frameon=False, fontsize=8)

    for ax in (ax1, ax2):
        ax.set_xticks(lengths)
        ax.spines["top"].set_visible(False)
        ax.spines["right"].set_visible(False)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
