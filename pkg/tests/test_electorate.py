import random

import pytest
from hypothesis import given, strategies as st

from electionbias.electorate import (
    Mention,
    MentionClassifier,
    UserSentiment,
    Vote,
    VoteTally,
    accumulate,
    classify_mentions,
    decide_vote,
    merge,
    predict_bias,
    tally,
    tally_scopes,
)
from electionbias.polls import ElectionResult, NoDataError, RawShare, display_round


@pytest.mark.parametrize("text, expected", [
    ("Trump rally tonight", Mention.C1_ONLY),
    ("#ImWithHer Clinton", Mention.C2_ONLY),
    ("Pence vs KAINE debate", Mention.BOTH),
    ("@realDonaldTrump and @HillaryClinton", Mention.BOTH),
    ("the weather is nice", Mention.NEITHER),
])
def test_classify(text, expected):
    assert classify_mentions(text) is expected


def test_accumulate_routes_scores():
    u = UserSentiment("u")
    u = accumulate(u, 0.5, Mention.C1_ONLY)
    u = accumulate(u, -0.2, Mention.C2_ONLY)
    u = accumulate(u, 0.1, Mention.BOTH)
    assert (u.sum_c1, u.sum_c2, u.tweets_seen) == (pytest.approx(0.6), pytest.approx(-0.1), 3)
    assert decide_vote(u) is Vote.C1


def test_accumulate_is_pure():
    u = UserSentiment("u")
    accumulate(u, 1.0, Mention.C1_ONLY)
    assert u.sum_c1 == 0.0


def test_decide_vote_tie_and_negative():
    assert decide_vote(UserSentiment("u", 0.3, 0.3)) is Vote.ABSTAIN
    assert decide_vote(UserSentiment("u")) is Vote.ABSTAIN
    assert decide_vote(UserSentiment("u", -0.9, -0.1)) is Vote.C2


def test_merge():
    a = UserSentiment("u", 0.5, 0.1, "NY", 2)
    b = UserSentiment("u", -0.2, 0.0, None, 1)
    m = merge(a, b)
    assert (m.sum_c1, m.sum_c2, m.state, m.tweets_seen) == (0.3, 0.1, "NY", 3)
    with pytest.raises(ValueError):
        merge(a, UserSentiment("v"))


def test_tally_and_shares():
    users = [UserSentiment("a", 1, 0, "CA"), UserSentiment("b", 0, 1, "CA"), UserSentiment("c", 1, 0, None),
             UserSentiment("d", 0, 0, "CA")]
    t = tally(users)
    assert t == VoteTally(2, 1, 1)
    assert t.shares().pct_c1 == pytest.approx(200 / 3)
    assert tally(users, "CA") == VoteTally(1, 1, 1)
    assert tally(users, "TX") == VoteTally()
    with pytest.raises(NoDataError):
        tally(users, "TX").shares()
    assert tally_scopes(users, ["US", "CA", "TX"]) == {"US": t, "CA": tally(users, "CA"), "TX": VoteTally()}


def test_national_twitter_example():
    votes = VoteTally(252011, 229346)
    assert display_round(votes.shares().pct_c1) == 52.4
    actual = ElectionResult("US", RawShare.from_percent(46.3, 48.2))
    assert display_round(predict_bias(votes, actual)) == 3.4


def test_custom_indicators():
    c = MentionClassifier(["donald"], ["hillary"])
    assert c("Donald and HILLARY") is Mention.BOTH
    assert c("Trump") is Mention.NEITHER


users_st = st.lists(
    st.builds(UserSentiment, st.text(min_size=1, max_size=5),
              st.floats(-5, 5), st.floats(-5, 5), st.sampled_from([None, "CA", "NY", "TX"]),
              st.integers(0, 10)),
    max_size=40,
)


@given(users_st, st.randoms())
def test_tally_order_independent(users, rng):
    shuffled = list(users)
    rng.shuffle(shuffled)
    for scope in ("US", "CA", "NY"):
        assert tally(users, scope) == tally(shuffled, scope)


@given(users_st)
def test_tally_conservation(users):
    t = tally(users)
    assert t.votes_c1 + t.votes_c2 + t.abstentions == len(users)
    states = sum(tally(users, s).votes_c1 + tally(users, s).votes_c2 + tally(users, s).abstentions
                 for s in ("CA", "NY", "TX"))
    assert states == sum(1 for u in users if u.state is not None)


@given(users_st)
def test_shares_normalized(users):
    t = tally(users)
    if t.voters:
        s = t.shares()
        assert s.pct_c1 + s.pct_c2 == pytest.approx(100.0)


@given(st.lists(st.tuples(st.sampled_from(["u1", "u2", "u3"]), st.floats(-1, 1),
                          st.sampled_from(list(Mention))), max_size=60))
def test_brute_force_recount(events):
    users = {}
    for uid, score, m in events:
        users[uid] = accumulate(users.get(uid, UserSentiment(uid)), score, m)
    # independent recount straight from the events
    expected = {Vote.C1: 0, Vote.C2: 0, Vote.ABSTAIN: 0}
    for uid in users:
        s1 = sum(sc for u, sc, m in events if u == uid and m in (Mention.C1_ONLY, Mention.BOTH))
        s2 = sum(sc for u, sc, m in events if u == uid and m in (Mention.C2_ONLY, Mention.BOTH))
        expected[Vote.C1 if s1 > s2 else Vote.C2 if s2 > s1 else Vote.ABSTAIN] += 1
    assert tally(users.values()) == VoteTally(expected[Vote.C1], expected[Vote.C2], expected[Vote.ABSTAIN])


@given(st.text(max_size=80), st.lists(st.text(min_size=1, max_size=6), min_size=1, max_size=3))
def test_indicator_monotonicity(text, extra):
    # more indicator words can only add mentions
    base = MentionClassifier()(text)
    wider = MentionClassifier(("trump", "pence", *extra), ("clinton", "kaine"))(text)
    c1_before = base in (Mention.C1_ONLY, Mention.BOTH)
    c1_after = wider in (Mention.C1_ONLY, Mention.BOTH)
    assert c1_after or not c1_before
    assert (base in (Mention.C2_ONLY, Mention.BOTH)) == (wider in (Mention.C2_ONLY, Mention.BOTH))


def test_shuffled_accumulation_same_votes():
    rng = random.Random(3)
    events = [(f"u{rng.randrange(10)}", rng.choice([-0.5, 0.25, 0.75]), rng.choice(list(Mention)))
              for _ in range(300)]

    def run(evts):
        acc = {}
        for uid, s, m in evts:
            acc[uid] = accumulate(acc.get(uid, UserSentiment(uid)), s, m)
        return {uid: decide_vote(u) for uid, u in acc.items()}

    shuffled = events[:]
    rng.shuffle(shuffled)
    # dyadic scores keep float addition exact, so order cannot matter
    assert run(events) == run(shuffled)
