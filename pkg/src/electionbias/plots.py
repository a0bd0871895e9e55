"""Plain SVG charts of bias series (needs the optional ``matplotlib`` extra)."""

from __future__ import annotations

from collections import defaultdict


def series_chart(points, by, path):
    """Line chart per source for per-poll series, grouped bars for monthly series."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "electionbias"
    series = defaultdict(list)
    for period, source, scope, b in points:
        label = source if scope == "US" else f"{source} ({scope})"
        series[label].append((period, b))

    fig, ax = plt.subplots(figsize=(9, 4.5))
    if by == "month":
        periods = sorted({p for p, *_ in points})
        width = 0.8 / max(len(series), 1)
        for k, (label, pts) in enumerate(sorted(series.items())):
            lookup = dict(pts)
            xs = [i + k * width for i, p in enumerate(periods) if p in lookup]
            ax.bar(xs, [lookup[p] for p in periods if p in lookup], width, label=label)
        ax.set_xticks([i + 0.4 - width / 2 for i in range(len(periods))], periods, rotation=45)
    else:
        for label, pts in sorted(series.items()):
            ax.plot([p for p, _ in pts], [b for _, b in pts], marker="o", label=label)
        ax.tick_params(axis="x", rotation=45)
    ax.axhline(0, color="black", linewidth=0.8)
    ax.set_ylabel("bias (percentage points)")
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
