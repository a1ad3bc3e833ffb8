"""PNG figures for the property suites (matplotlib, Agg backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .suites import DISTANCE_RATIO, SuiteResult  # noqa: E402


def _by_class(checks) -> dict[str, list[dict]]:
    out: dict[str, list[dict]] = {}
    for c in checks:
        out.setdefault(c.get("cls", "all"), []).append(c)
    return out


def excess_scatter(result: SuiteResult, path) -> Path:
    """Area excess against Hausdorff distance, both in units of the oval width."""
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for cls, rows in sorted(_by_class(result.checks).items()):
        ax.scatter([r["dh_over_h"] for r in rows], [r["excess_over_h2"] for r in rows], s=8, label=cls)
    ax.axvline(DISTANCE_RATIO, color="0.4", ls="--", lw=1)
    ax.set_yscale("symlog", linthresh=1e-6)
    ax.set_xlabel("d_H(M, V) / h")
    ax.set_ylabel("(S(M) - S(V)) / h^2")
    ax.set_title("area excess against distance from the oval")
    ax.legend(fontsize=8)
    out = Path(path)
    fig.savefig(out, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return out


def excess_histograms(areas: SuiteResult, diameters: SuiteResult, path) -> Path:
    """Area excess S(M) - S(V) and diameter deficit diam(V) - diam(M) per class."""
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    for ax, res, label in ((axes[0], areas, "S(M) - S(V)"), (axes[1], diameters, "diam(V) - diam(M)")):
        for cls, rows in sorted(_by_class(res.checks).items()):
            ax.hist([r["excess"] for r in rows], bins=30, histtype="step", label=cls)
        ax.set_xlabel(label)
        ax.set_ylabel("count")
        ax.legend(fontsize=8)
    axes[0].set_title("area excess over the oval")
    axes[1].set_title("diameter deficit against the oval")
    out = Path(path)
    fig.savefig(out, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return out
