"""
Monthly bias of eight pollsters
===============================

One bar chart per pollster, bars above zero leaning Trump and bars below
leaning Clinton. Also recomputes Fox's months from the raw polls to show
they line up with the reference figures.
"""

import csv
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from electionbias import average_bias, bias_time_series, load_polls, load_results

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"

series = defaultdict(dict)
with open(FIXTURES / "reference_monthly_biases.csv", newline="") as fh:
    for row in csv.DictReader(fh):
        if row["period"] != "avg":
            series[row["source"]][row["period"]] = float(row["bias"])

months = [f"2016-{m:02d}" for m in range(1, 12)]
fig, axes = plt.subplots(2, 4, figsize=(14, 6), sharey=True)
for ax, (source, by_month) in zip(axes.flat, series.items()):
    values = [by_month.get(m, 0.0) for m in months]
    ax.bar(range(len(months)), values, color=["tab:red" if v > 0 else "tab:blue" for v in values])
    ax.axhline(0, color="black", linewidth=0.6)
    ax.set_title(f"{source} (avg {average_bias(by_month.values()):+.1f})")
    ax.set_xticks(range(len(months)), [m[5:] for m in months], fontsize=7)
fig.suptitle("bias by month, percentage points")
fig.tight_layout()
fig.savefig("monthly_bias_grid.png", dpi=90)

###############################################################################
# Fox from scratch: aggregate each month, then compare with the actual result.
fox = load_polls(FIXTURES / "fox_polls_2016.csv")
actual = {r.scope: r for r in load_results(FIXTURES / "results_2016.csv")}["US"]
for month, b in bias_time_series(fox, actual, by="month"):
    print(month, f"{b:+.2f}", "reference", series["Fox News"].get(month))
