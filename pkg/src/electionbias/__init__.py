"""Quantify prediction bias of election polls and of tweet-sentiment vote extrapolation."""

from .electorate import (
    Mention,
    MentionClassifier,
    UserSentiment,
    Vote,
    VoteTally,
    accumulate,
    classify_mentions,
    decide_vote,
    predict_bias,
    tally,
)
from .ingest import (
    FormatError,
    Method,
    StateResolution,
    TweetRecord,
    load_corpus,
    load_polls,
    load_results,
    load_user_sentiments,
    persist_user_sentiments,
    resolve_state,
)
from .polls import (
    DegenerateInputError,
    ElectionResult,
    NoDataError,
    PeriodAggregate,
    Poll,
    RawShare,
    TwoPartyShare,
    adjust_two_party,
    aggregate_period,
    average_bias,
    bias,
    bias_time_series,
    cross_source_bias,
    display_round,
)
from .sentiment import Lexicon, compound_sentiment, default_lexicon, load_lexicon, tokenize

__version__ = "0.1.0"
