"""
From tweets to an electorate
============================

A made-up corpus goes through the whole Twitter side: score each tweet,
sum per user and candidate, turn users into votes, and compare with the
real result nationally and in a couple of states.
"""

import tempfile
from pathlib import Path

from electionbias import load_corpus, load_results, predict_bias
from electionbias.electorate import tally_scopes
from electionbias.pipeline import build_users
from electionbias.synthetic import generate_tweets, write_corpus

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"

with tempfile.TemporaryDirectory() as tmp:
    corpus = Path(tmp) / "tweets.jsonl"
    write_corpus(corpus, generate_tweets(20_000, 3_000, seed=1))
    users = build_users(load_corpus(corpus))

print(len(users), "users")
first = next(iter(users.values()))
print("one user:", first)

###############################################################################
# Ties, including users who never named a candidate, abstain.
results = {r.scope: r for r in load_results(FIXTURES / "results_2016.csv")}
for scope, votes in tally_scopes(users.values(), ["US", "CA", "TX", "OH"]).items():
    share = votes.shares()
    print(f"{scope}: {votes.votes_c1} vs {votes.votes_c2}, {votes.abstentions} abstain,"
          f" Trump {share.pct_c1:.1f}%, bias {predict_bias(votes, results[scope]):+.1f}")
