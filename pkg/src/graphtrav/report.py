"""CSV output and figures for benchmark runs."""

from __future__ import annotations

import csv
import math
from pathlib import Path

from .bench import COLUMNS, summarize

ENGINE_STYLE = {
    "relational": {"color": "#b2182b", "marker": "o", "label": "relational join"},
    "graph": {"color": "#2166ac", "marker": "s", "label": "graph traversal"},
}


def write_csv(rows: list[dict], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=COLUMNS, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return path


def read_csv(path: str | Path) -> list[dict]:
    with Path(path).open(newline="", encoding="utf-8") as fh:
        out = []
        for r in csv.DictReader(fh):
            out.append({k: (r[k] if k == "engine" else int(r[k])) for k in COLUMNS})
        return out


def plot_costs(rows: list[dict], path: str | Path, title: str | None = None) -> Path:
    """Comparisons and elements touched against log2 n, one line per engine."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    summary = summarize(rows)
    fig, (ax_cmp, ax_touch) = plt.subplots(1, 2, figsize=(9, 3.6), constrained_layout=True)
    for engine, style in ENGINE_STYLE.items():
        pts = sorted((math.log2(s["n"]), s["comparisons"], s["elements_touched"])
                     for s in summary if s["engine"] == engine)
        if not pts:
            continue
        xs = [p[0] for p in pts]
        ax_cmp.plot(xs, [p[1] for p in pts], **style)
        ax_touch.plot(xs, [p[2] for p in pts], **style)
    ax_cmp.set_xlabel(r"$\log_2 n$")
    ax_cmp.set_ylabel("comparisons per query")
    ax_touch.set_xlabel(r"$\log_2 n$")
    ax_touch.set_ylabel("elements touched per query")
    for ax in (ax_cmp, ax_touch):
        ax.grid(True, alpha=0.3)
        ax.legend(frameon=False, fontsize=8)
    if title:
        fig.suptitle(title, fontsize=10)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
