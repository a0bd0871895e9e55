"""Streaming tweet-to-user pipeline with optional multi-process scoring.

Scores are always folded into user sums in corpus order, so the result is
bit-identical whatever the worker count.
"""

from __future__ import annotations

import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from itertools import islice
from pathlib import Path
from typing import Callable, Iterable

from .electorate import Mention, MentionClassifier, UserSentiment, classify_mentions
from .ingest import Gazetteer, TweetRecord, is_english, resolve_state
from .sentiment import Lexicon, compound_sentiment, default_lexicon, default_lexicon_path, load_lexicon

CHUNK = 4096

_worker_lexicon: Lexicon | None = None


def _init_worker(lexicon_path):
    global _worker_lexicon
    _worker_lexicon = load_lexicon(lexicon_path)


def _score_chunk(texts):
    lex = _worker_lexicon
    return [compound_sentiment(t, lex) for t in texts]


def default_threads() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)


def build_users(
    records: Iterable[TweetRecord],
    lexicon_path: str | Path | None = None,
    threads: int = 1,
    classify: Callable[[str], Mention] | MentionClassifier = classify_mentions,
    english_only: bool = True,
    gazetteer: Gazetteer | None = None,
) -> dict[str, UserSentiment]:
    """Fold a tweet stream into one :class:`UserSentiment` per user.

    Duplicate tweet ids are dropped, tweets that mention neither candidate
    are counted but not scored, and a user's state is the one resolved from
    their latest resolvable tweet.  Users appear in order of first sighting.
    """
    if lexicon_path is None:
        lexicon = default_lexicon()
        lexicon_path = default_lexicon_path()
    else:
        lexicon = load_lexicon(lexicon_path)

    seen_ids: set[str] = set()
    # user_id -> [sum_c1, sum_c2, state, tweets_seen]
    acc: dict[str, list] = {}

    def fold(batch, scores):
        scores = iter(scores)
        for rec, mention in batch:
            entry = acc.get(rec.user_id)
            if entry is None:
                entry = acc[rec.user_id] = [0.0, 0.0, None, 0]
            entry[3] += 1
            res = resolve_state(rec, gazetteer)
            if res.state is not None:
                entry[2] = res.state
            if mention is Mention.NEITHER:
                continue
            score = next(scores)
            if mention is not Mention.C2_ONLY:
                entry[0] += score
            if mention is not Mention.C1_ONLY:
                entry[1] += score

    def texts_of(batch):
        return [rec.text for rec, m in batch if m is not Mention.NEITHER]

    batches = _batches(iter(records), seen_ids, english_only, classify)
    if threads <= 1:
        for batch in batches:
            fold(batch, [compound_sentiment(t, lexicon) for t in texts_of(batch)])
    else:
        with ProcessPoolExecutor(threads, initializer=_init_worker, initargs=(str(lexicon_path),)) as pool:
            pending: deque = deque()
            for batch in batches:
                pending.append((batch, pool.submit(_score_chunk, texts_of(batch))))
                if len(pending) >= 2 * threads:
                    done, fut = pending.popleft()
                    fold(done, fut.result())
            while pending:
                done, fut = pending.popleft()
                fold(done, fut.result())

    return {uid: UserSentiment(uid, e[0], e[1], e[2], e[3]) for uid, e in acc.items()}


def _batches(it, seen_ids, english_only, classify):
    while True:
        raw = list(islice(it, CHUNK))
        if not raw:
            return
        batch = []
        for rec in raw:
            if rec.tweet_id in seen_ids:
                continue
            seen_ids.add(rec.tweet_id)
            if english_only and not is_english(rec):
                continue
            batch.append((rec, classify(rec.text)))
        yield batch
