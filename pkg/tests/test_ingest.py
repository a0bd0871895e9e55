import datetime as dt
import json

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from electionbias.electorate import UserSentiment
from electionbias.ingest import (
    CorpusStats,
    FormatError,
    Gazetteer,
    Method,
    TweetRecord,
    bundled_gazetteer,
    is_english,
    load_corpus,
    load_polls,
    load_results,
    load_user_sentiments,
    parse_record,
    persist_user_sentiments,
    resolve_state,
)


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def test_load_polls_fixture(fixtures_dir):
    polls = load_polls(fixtures_dir / "fox_polls_2016.csv")
    assert len(polls) == 17
    assert all(p.source == "Fox News" for p in polls) or len({p.source for p in polls}) == 1
    assert polls[0].respondents > 0


def test_load_polls_rejects_bad_rows(tmp_path):
    p = write(tmp_path / "p.csv",
              "source,start_date,end_date,respondents,pct_c1,pct_c2\n"
              "A,2016-11-01,2016-11-03,900,44,48\n"
              "B,2016-11-05,2016-11-03,900,44,48\n"
              "C,2016-11-01,2016-11-03,0,44,48\n"
              "D,2016-11-01,2016-11-03,900,70,48\n"
              "E,2016-11-01,2016-11-03,,41,45\n"
              "F,not-a-date,2016-11-03,900,41,45\n")
    rejected = []
    polls = load_polls(p, rejected)
    assert [x.source for x in polls] == ["A", "E"]
    assert polls[1].respondents is None
    assert [line for line, _ in rejected] == [3, 4, 5, 7]


def test_load_polls_missing_column(tmp_path):
    p = write(tmp_path / "p.csv", "source,start_date,end_date,pct_c1,pct_c2\nA,2016-11-01,2016-11-03,44,48\n")
    with pytest.raises(FormatError, match="respondents"):
        load_polls(p)


def test_load_polls_scope_and_note(fixtures_dir):
    polls = load_polls(fixtures_dir / "state_polls.csv")
    assert len(polls) == 18
    assert {p.scope for p in polls} >= {"CA", "TX", "TN"}
    assert any(p.note for p in polls)


def test_load_results(fixtures_dir, tmp_path):
    results = {r.scope: r for r in load_results(fixtures_dir / "results_2016.csv")}
    assert results["US"].adjusted.pct_c1 == pytest.approx(48.99, abs=0.005)
    assert len(results) == 10
    dup = write(tmp_path / "r.csv", "scope,pct_c1,pct_c2\nUS,46.3,48.2\nus,46,48\n")
    with pytest.raises(FormatError):
        load_results(dup)


def test_corpus_streaming_and_skips(tmp_path):
    lines = [
        json.dumps({"tweet_id": "1", "user_id": "a", "text": "Trump!", "lang": "en"}),
        "{broken json",
        json.dumps({"tweet_id": "2", "user_id": "a"}),
        json.dumps([1, 2]),
        "",
        json.dumps({"tweet_id": 3, "user_id": 7, "text": "Clinton", "user_location": "Austin TX"}),
    ]
    p = write(tmp_path / "c.jsonl", "\n".join(lines) + "\n")
    stats = CorpusStats()
    records = list(load_corpus(p, stats))
    assert [r.tweet_id for r in records] == ["1", "3"]
    assert records[1].user_id == "7"
    assert (stats.read, stats.skipped) == (2, 3)


def test_is_english():
    assert is_english(TweetRecord("1", "u", "x"))
    assert is_english(TweetRecord("1", "u", "x", lang="en-GB"))
    assert not is_english(TweetRecord("1", "u", "x", lang="es"))


@pytest.mark.parametrize("location, state", [
    ("Rochester, NY", "NY"),
    ("NY", "NY"),
    ("Austin TX", "TX"),
    ("Houston, Texas", "TX"),
    ("San Francisco", "CA"),
    ("California", "CA"),
    ("NYC", "NY"),
    ("Portland, OR", "OR"),
    ("Paris, France", None),
    ("somewhere over the rainbow", None),
    ("Come IN and see", None),
    ("", None),
    (None, None),
])
def test_locate(location, state):
    assert bundled_gazetteer().locate(location) == state


def test_resolve_precedence():
    geo = TweetRecord("1", "u", "t", geo_state="oh", user_location="Austin TX")
    assert resolve_state(geo).state == "OH" and resolve_state(geo).method is Method.GEOTAG
    profile = TweetRecord("1", "u", "t", geo_state="ZZ", user_location="Austin TX")
    r = resolve_state(profile)
    assert (r.state, r.method) == ("TX", Method.PROFILE_TEXT)
    none = TweetRecord("1", "u", "t", user_location="Earth")
    assert resolve_state(none).method is Method.UNRESOLVED


def test_custom_gazetteer():
    g = Gazetteer({"states": {"XA": "Exampleland"}, "cities": [{"name": "Sampleton", "state": "XA"}]})
    assert g.locate("downtown sampleton") == "XA"
    rec = TweetRecord("1", "u", "t", user_location="Exampleland")
    assert resolve_state(rec, g).state == "XA"


def test_snapshot_round_trip(tmp_path):
    users = [UserSentiment("a", 0.1 + 0.2, -1e-17, "CA", 3), UserSentiment("b,\"q\"", 0.0, 2.5, None, 0)]
    p = tmp_path / "snap.csv"
    persist_user_sentiments(users, p)
    assert load_user_sentiments(p) == users
    assert [f.name for f in tmp_path.iterdir()] == ["snap.csv"]


def test_empty_snapshot(tmp_path):
    p = tmp_path / "snap.csv"
    persist_user_sentiments([], p)
    assert load_user_sentiments(p) == []


def test_snapshot_rejects_rows(tmp_path):
    p = write(tmp_path / "s.csv", "user_id,sum_c1,sum_c2,state,tweets_seen\na,1,2,,1\nb,nan,2,,1\nc,1,2,,-1\n")
    rejected = []
    assert [u.user_id for u in load_user_sentiments(p, rejected)] == ["a"]
    assert len(rejected) == 2


@settings(max_examples=150, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.binary(max_size=400))
def test_loaders_total_on_garbage(tmp_path, blob):
    # either parse, skip rows, or raise FormatError; never anything else
    p = tmp_path / "garbage"
    header = b"source,start_date,end_date,respondents,pct_c1,pct_c2\n"
    for content in (header + blob, blob):
        p.write_bytes(content)
        for loader in (load_polls, load_results, load_user_sentiments):
            try:
                loader(p)
            except FormatError:
                pass
        list(load_corpus(p))


@given(st.text(max_size=60))
def test_locate_total(text):
    state = bundled_gazetteer().locate(text)
    assert state is None or state in bundled_gazetteer().codes


@given(st.dictionaries(st.sampled_from(["tweet_id", "user_id", "text", "lang", "geo_state"]),
                       st.one_of(st.none(), st.integers(), st.text(max_size=5), st.booleans())))
def test_parse_record_total(obj):
    try:
        rec = parse_record(json.dumps(obj))
    except ValueError:
        return
    assert rec.tweet_id and rec.user_id and isinstance(rec.text, str)
