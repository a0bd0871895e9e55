"""
Two-party shares and monthly aggregates
=======================================

Final national polls before election day, squeezed down to a two-candidate
race, then one pollster's year rolled up month by month.
"""

from pathlib import Path

from electionbias import adjust_two_party, aggregate_period, display_round, load_polls, load_results
from electionbias.polls import group_by_period, months_between

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"

# Third-party support is dropped and the two majors rescaled to 100
for poll in load_polls(FIXTURES / "final_national_polls.csv"):
    adj = adjust_two_party(poll.raw)
    print(f"{poll.source:16s} {display_round(adj.pct_c1):5.1f} {display_round(adj.pct_c2):5.1f}")

# The actual popular vote gets the same treatment
actual = {r.scope: r for r in load_results(FIXTURES / "results_2016.csv")}["US"]
print("actual          ", round(actual.adjusted.pct_c1, 2), round(actual.adjusted.pct_c2, 2))

###############################################################################
# Each Fox poll belongs to the month its fieldwork ended in. Bigger polls
# count for more; July had no poll, so it stays empty.
fox = load_polls(FIXTURES / "fox_polls_2016.csv")
groups = group_by_period(fox)
for month in months_between(min(groups), max(groups)):
    if month not in groups:
        print(month, "no polls")
        continue
    agg = aggregate_period(groups[month], month)
    print(month, f"raw {agg.raw.pct_c1:.1f}/{agg.raw.pct_c2:.1f}",
          f"adjusted {agg.adjusted.pct_c1:.1f}/{agg.adjusted.pct_c2:.1f}", f"({agg.polls_included} polls)")
