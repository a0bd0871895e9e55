"""Per-user candidate sentiment, extrapolated votes and vote-share bias."""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .polls import ElectionResult, NoDataError, TwoPartyShare, bias

# candidate 1 is the Republican ticket, so positive bias means overpredicting Trump
C1_INDICATORS = ("trump", "pence")
C2_INDICATORS = ("clinton", "kaine")


class Mention(enum.Enum):
    C1_ONLY = "c1"
    C2_ONLY = "c2"
    BOTH = "both"
    NEITHER = "neither"


class Vote(enum.Enum):
    C1 = "c1"
    C2 = "c2"
    ABSTAIN = "abstain"


@dataclass(frozen=True, slots=True)
class UserSentiment:
    user_id: str
    sum_c1: float = 0.0
    sum_c2: float = 0.0
    state: str | None = None
    tweets_seen: int = 0


class MentionClassifier:
    """Case-insensitive substring test for each candidate's indicator words."""

    def __init__(self, c1: Sequence[str] = C1_INDICATORS, c2: Sequence[str] = C2_INDICATORS):
        self.c1 = tuple(w.lower() for w in c1)
        self.c2 = tuple(w.lower() for w in c2)

    def __call__(self, text: str) -> Mention:
        lower = text.lower()
        hit1 = any(w in lower for w in self.c1)
        hit2 = any(w in lower for w in self.c2)
        if hit1 and hit2:
            return Mention.BOTH
        if hit1:
            return Mention.C1_ONLY
        if hit2:
            return Mention.C2_ONLY
        return Mention.NEITHER


classify_mentions = MentionClassifier()


def accumulate(user: UserSentiment, tweet_score: float, mentions: Mention) -> UserSentiment:
    s1, s2 = user.sum_c1, user.sum_c2
    if mentions is Mention.C1_ONLY or mentions is Mention.BOTH:
        s1 += tweet_score
    if mentions is Mention.C2_ONLY or mentions is Mention.BOTH:
        s2 += tweet_score
    return replace(user, sum_c1=s1, sum_c2=s2, tweets_seen=user.tweets_seen + 1)


def merge(a: UserSentiment, b: UserSentiment) -> UserSentiment:
    """Combine two partial accumulations of the same user; ``b`` is the later shard."""
    if a.user_id != b.user_id:
        raise ValueError(f"cannot merge users {a.user_id!r} and {b.user_id!r}")
    return UserSentiment(
        a.user_id,
        a.sum_c1 + b.sum_c1,
        a.sum_c2 + b.sum_c2,
        b.state if b.state is not None else a.state,
        a.tweets_seen + b.tweets_seen,
    )


def decide_vote(user: UserSentiment) -> Vote:
    if user.sum_c1 > user.sum_c2:
        return Vote.C1
    if user.sum_c2 > user.sum_c1:
        return Vote.C2
    return Vote.ABSTAIN


@dataclass(frozen=True)
class VoteTally:
    votes_c1: int = 0
    votes_c2: int = 0
    abstentions: int = 0

    @property
    def voters(self) -> int:
        return self.votes_c1 + self.votes_c2

    def shares(self) -> TwoPartyShare:
        """Vote shares among users who voted; abstainers are excluded."""
        if self.voters == 0:
            raise NoDataError("no voting users")
        return TwoPartyShare(self.votes_c1 / self.voters)


def tally(users: Iterable[UserSentiment], scope: str = "US") -> VoteTally:
    """Count votes for the national scope ``"US"`` or for one state's users."""
    counts = {Vote.C1: 0, Vote.C2: 0, Vote.ABSTAIN: 0}
    national = scope == "US"
    for u in users:
        if national or u.state == scope:
            counts[decide_vote(u)] += 1
    return VoteTally(counts[Vote.C1], counts[Vote.C2], counts[Vote.ABSTAIN])


def tally_scopes(users: Iterable[UserSentiment], scopes: Sequence[str]) -> dict[str, VoteTally]:
    """Tally several scopes in a single pass over ``users``."""
    wanted = list(dict.fromkeys(scopes))
    counts = {s: [0, 0, 0] for s in wanted}
    index = {Vote.C1: 0, Vote.C2: 1, Vote.ABSTAIN: 2}
    national = counts.get("US")
    for u in users:
        k = index[decide_vote(u)]
        if national is not None:
            national[k] += 1
        if u.state in counts and u.state != "US":
            counts[u.state][k] += 1
    return {s: VoteTally(*c) for s, c in counts.items()}


def predict_bias(votes: VoteTally, actual: ElectionResult) -> float:
    return bias(votes.shares(), actual.adjusted)
