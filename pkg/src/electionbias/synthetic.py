"""Synthetic tweet corpora and user snapshots for tests, demos and benchmarks."""

from __future__ import annotations

import json
import random
from pathlib import Path
from typing import Iterator, Mapping

from .electorate import UserSentiment

POSITIVE = ["great", "love", "amazing", "win", "best", "strong", "honest", "brilliant", "happy", "proud",
            "excellent", "good", "support", "hope", "smart", "wonderful", "trust", "fantastic"]
NEGATIVE = ["terrible", "hate", "awful", "liar", "worst", "weak", "corrupt", "disaster", "sad", "angry",
            "bad", "fraud", "fear", "stupid", "horrible", "ugly", "crooked", "scandal"]
NEUTRAL = ["the", "debate", "tonight", "rally", "speech", "vote", "election", "campaign", "people", "news",
           "today", "america", "media", "poll", "ohio", "watching", "just", "about", "on", "with", "#election2016"]
MODIFIERS = ["very", "really", "not", "so", "totally", "never", "extremely", "kinda", "barely"]
C1_WORDS = ["Trump", "#TrumpTrain", "@realDonaldTrump", "Pence", "Trump's"]
C2_WORDS = ["Clinton", "#ImWithHer Clinton", "@HillaryClinton", "Kaine", "Hillary Clinton"]
LOCATIONS = {
    "CA": ["Los Angeles, CA", "San Francisco", "California"],
    "NY": ["Rochester, NY", "New York City", "Buffalo"],
    "TX": ["Austin TX", "Houston, Texas", "Dallas"],
    "OH": ["Columbus, OH", "Cleveland", "Ohio"],
}
FOREIGN = ["Paris, France", "London, UK", "Earth", "", "somewhere over the rainbow"]


def _sentence(rng: random.Random, candidate_words: list[str]) -> str:
    words = [rng.choice(NEUTRAL) for _ in range(rng.randint(2, 6))]
    for _ in range(rng.randint(1, 3)):
        w = rng.choice(POSITIVE if rng.random() < 0.5 else NEGATIVE)
        if rng.random() < 0.3:
            w = f"{rng.choice(MODIFIERS)} {w}"
        if rng.random() < 0.1:
            w = w.upper()
        words.insert(rng.randrange(len(words) + 1), w)
    for c in candidate_words:
        words.insert(rng.randrange(len(words) + 1), c)
    text = " ".join(words)
    if rng.random() < 0.2:
        text += rng.choice(["!", "!!", "!!!", "?", "??", "."])
    return text


def generate_tweets(n_tweets: int, n_users: int, seed: int = 0,
                    states: Mapping[str, list[str]] | None = None) -> Iterator[dict]:
    """Yield ``n_tweets`` tweet records spread over ``n_users`` users.

    About a third of users are geotagged, a third give a profile location
    and the rest are unresolvable; roughly one tweet in six names neither
    candidate.
    """
    rng = random.Random(seed)
    states = LOCATIONS if states is None else states
    codes = sorted(states)
    profiles = []
    for u in range(n_users):
        r = rng.random()
        code = rng.choice(codes)
        if r < 0.33:
            profiles.append((code, rng.choice(FOREIGN)))
        elif r < 0.66:
            profiles.append((None, rng.choice(states[code])))
        else:
            profiles.append((None, rng.choice(FOREIGN)))
    for i in range(n_tweets):
        u = rng.randrange(n_users)
        geo, location = profiles[u]
        r = rng.random()
        if r < 0.35:
            cands = [rng.choice(C1_WORDS)]
        elif r < 0.7:
            cands = [rng.choice(C2_WORDS)]
        elif r < 0.83:
            cands = [rng.choice(C1_WORDS), rng.choice(C2_WORDS)]
        else:
            cands = []
        rec = {"tweet_id": f"t{i}", "user_id": f"u{u}", "text": _sentence(rng, cands), "lang": "en"}
        if geo is not None:
            rec["geo_state"] = geo
        if location:
            rec["user_location"] = location
        yield rec


def write_corpus(path: str | Path, records) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec))
            fh.write("\n")
            n += 1
    return n


def users_from_counts(counts: Mapping[str, tuple[int, int]], abstentions: Mapping[str, int] | None = None,
                      national_scope: str = "US") -> list[UserSentiment]:
    """Users whose votes reproduce the given per-scope counts exactly.

    The ``national_scope`` counts are totals that include every state's
    users, so only the remainder becomes users without a state.
    """
    abstentions = dict(abstentions or {})
    counts = dict(counts)
    if national_scope in counts:
        v1, v2 = counts[national_scope]
        states = [s for s in counts if s != national_scope]
        rest = (v1 - sum(counts[s][0] for s in states), v2 - sum(counts[s][1] for s in states),
                abstentions.get(national_scope, 0) - sum(abstentions.get(s, 0) for s in states))
        if min(rest) < 0:
            raise ValueError("state counts exceed the national totals")
        counts[national_scope] = rest[:2]
        abstentions[national_scope] = rest[2]
    users = []
    for scope, (v1, v2) in counts.items():
        state = None if scope == national_scope else scope
        prefix = scope.lower()
        for k in range(v1):
            users.append(UserSentiment(f"{prefix}-a{k}", 0.5, -0.25, state, 2))
        for k in range(v2):
            users.append(UserSentiment(f"{prefix}-b{k}", -0.125, 0.75, state, 2))
        for k in range(abstentions.get(scope, 0)):
            users.append(UserSentiment(f"{prefix}-n{k}", 0.0, 0.0, state, 1))
    return users
