"""
State polls against Twitter
===========================

Nine states, two pollsters, and the Twitter vote counts. Works entirely
through the command line, the way a batch job would.
"""

import csv
import tempfile
from pathlib import Path

from electionbias.cli import main
from electionbias.ingest import persist_user_sentiments
from electionbias.synthetic import users_from_counts

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"
STATES = "CA,NY,TX,TN,OH,WI,PA,MN,MI"

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    main(["bias", "--in", str(FIXTURES / "state_polls.csv"),
          "--results", str(FIXTURES / "results_2016.csv"), "--by", "poll", "--out", str(tmp / "polls.csv")])

    # Only the per-state vote counts survive, so rebuild users that reproduce them
    with open(FIXTURES / "twitter_vote_counts.csv", newline="") as fh:
        counts = {r["scope"]: (int(r["votes_c1"]), int(r["votes_c2"])) for r in csv.DictReader(fh)}
    persist_user_sentiments(users_from_counts(counts), tmp / "users.csv")
    main(["predict", "--users", str(tmp / "users.csv"), "--results", str(FIXTURES / "results_2016.csv"),
          "--scope", STATES, "--out", str(tmp / "social.csv")])

    main(["compare", "--in", str(tmp / "polls.csv"), "--social", str(tmp / "social.csv"), "--decimals", "1"])
