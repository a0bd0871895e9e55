"""Two-party adjustment, respondent-weighted monthly aggregation and poll bias.

Shares are stored as fractions of 1; percentages only appear at the I/O
boundary (``from_percent`` constructors and the ``pct_*`` properties).
Bias values are signed percentage points, positive meaning candidate 1
was overpredicted.
"""

from __future__ import annotations

import datetime as dt
import math
from collections import defaultdict
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Sequence

import numpy as np

_EPS = 1e-9


class DegenerateInputError(ValueError):
    """Both candidates have zero share, so there is no two-party race."""


class NoDataError(ValueError):
    """An aggregation was asked for over an empty set."""


@dataclass(frozen=True)
class RawShare:
    """Unadjusted shares of the two candidates (third parties may hold the rest)."""

    c1: float
    c2: float

    def __post_init__(self):
        if not (math.isfinite(self.c1) and math.isfinite(self.c2)):
            raise ValueError(f"non-finite share: {self.c1!r}, {self.c2!r}")
        if self.c1 < 0 or self.c2 < 0:
            raise ValueError(f"negative share: {self.c1!r}, {self.c2!r}")
        if self.c1 + self.c2 > 1 + _EPS:
            raise ValueError(f"shares sum above 100%: {self.c1!r} + {self.c2!r}")

    @classmethod
    def from_percent(cls, pct_c1: float, pct_c2: float) -> "RawShare":
        return cls(pct_c1 / 100.0, pct_c2 / 100.0)

    @property
    def pct_c1(self) -> float:
        return 100.0 * self.c1

    @property
    def pct_c2(self) -> float:
        return 100.0 * self.c2


@dataclass(frozen=True)
class TwoPartyShare:
    """Candidate 1's share of the two-party vote; candidate 2 holds the rest."""

    c1: float

    def __post_init__(self):
        if not (0.0 <= self.c1 <= 1.0):
            raise ValueError(f"two-party share outside [0, 1]: {self.c1!r}")

    @classmethod
    def from_percent(cls, pct_c1: float) -> "TwoPartyShare":
        return cls(pct_c1 / 100.0)

    @property
    def c2(self) -> float:
        return 1.0 - self.c1

    @property
    def pct_c1(self) -> float:
        return 100.0 * self.c1

    @property
    def pct_c2(self) -> float:
        return 100.0 * self.c2


@dataclass(frozen=True)
class Poll:
    source: str
    start_date: dt.date
    end_date: dt.date
    respondents: int | None
    raw: RawShare
    scope: str = "US"
    note: str = ""

    def __post_init__(self):
        if self.start_date > self.end_date:
            raise ValueError(f"poll starts after it ends: {self.start_date} > {self.end_date}")
        if self.respondents is not None and self.respondents < 1:
            raise ValueError(f"respondents must be positive, got {self.respondents}")

    @property
    def period(self) -> str:
        return month_of(self.end_date)


@dataclass(frozen=True)
class PeriodAggregate:
    period: str
    raw: RawShare
    adjusted: TwoPartyShare
    polls_included: int


@dataclass(frozen=True)
class ElectionResult:
    scope: str
    raw: RawShare
    adjusted: TwoPartyShare = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "adjusted", adjust_two_party(self.raw))


def month_of(day: dt.date) -> str:
    """Calendar month a poll is filed under, as ``YYYY-MM``."""
    return f"{day.year:04d}-{day.month:02d}"


def adjust_two_party(raw: RawShare) -> TwoPartyShare:
    total = raw.c1 + raw.c2
    if total <= 0:
        raise DegenerateInputError("both candidates at zero share")
    return TwoPartyShare(raw.c1 / total)


def aggregate_period(polls: Sequence[Poll], period: str) -> PeriodAggregate:
    """Combine one month's polls by weighting each by its respondent count."""
    if not polls:
        raise NoDataError(f"no polls in {period}")
    for p in polls:
        if p.period != period:
            raise ValueError(f"poll ending {p.end_date} does not belong to {period}")
        if p.respondents is None:
            raise ValueError(f"poll ending {p.end_date} has no respondent count")
    weights = np.array([p.respondents for p in polls], dtype=float)
    c1 = float(np.average([p.raw.c1 for p in polls], weights=weights))
    c2 = float(np.average([p.raw.c2 for p in polls], weights=weights))
    raw = RawShare(c1, c2)
    return PeriodAggregate(period, raw, adjust_two_party(raw), len(polls))


def bias(prediction: TwoPartyShare, actual: TwoPartyShare, candidate: int = 1) -> float:
    """Signed percentage-point overprediction of ``candidate`` (1 or 2)."""
    if candidate == 1:
        return 100.0 * (prediction.c1 - actual.c1)
    if candidate == 2:
        return 100.0 * (prediction.c2 - actual.c2)
    raise ValueError(f"candidate must be 1 or 2, got {candidate!r}")


def average_bias(series: Iterable[float]) -> float:
    values = list(series)
    if not values:
        raise NoDataError("empty bias series")
    return math.fsum(values) / len(values)


def cross_source_bias(per_source: dict[str, Sequence[float]]) -> float:
    """Unweighted mean of each source's own average bias."""
    averages = [average_bias(v) for v in per_source.values() if len(v)]
    return average_bias(averages)


def group_by_period(polls: Iterable[Poll]) -> dict[str, list[Poll]]:
    groups: dict[str, list[Poll]] = defaultdict(list)
    for p in polls:
        groups[p.period].append(p)
    return dict(sorted(groups.items()))


def bias_time_series(
    polls: Sequence[Poll], actual: ElectionResult, by: str = "month"
) -> list[tuple[str, float]]:
    """Chronological ``(period, bias)`` pairs for a single source.

    ``by="poll"`` yields one point per poll keyed by its ISO end date;
    ``by="month"`` aggregates each month first.  Months without polls are
    simply absent.
    """
    if not polls:
        return []
    sources = {p.source for p in polls}
    if len(sources) > 1:
        raise ValueError(f"polls from several sources: {sorted(sources)}")
    if by == "poll":
        ordered = sorted(polls, key=lambda p: (p.end_date, p.start_date))
        return [
            (p.end_date.isoformat(), bias(adjust_two_party(p.raw), actual.adjusted))
            for p in ordered
        ]
    if by == "month":
        return [
            (period, bias(aggregate_period(group, period).adjusted, actual.adjusted))
            for period, group in group_by_period(polls).items()
        ]
    raise ValueError(f"unknown series mode {by!r}")


def months_between(first: str, last: str) -> list[str]:
    """Every ``YYYY-MM`` from ``first`` to ``last`` inclusive."""
    y, m = map(int, first.split("-"))
    y_end, m_end = map(int, last.split("-"))
    out = []
    while (y, m) <= (y_end, m_end):
        out.append(f"{y:04d}-{m:02d}")
        y, m = (y + 1, 1) if m == 12 else (y, m + 1)
    return out


def display_round(value: float, places: int = 1) -> float:
    """Round half away from zero (0.25 -> 0.3, -0.25 -> -0.3); ``round`` would go to even."""
    q = Decimal(1).scaleb(-places)
    return float(Decimal(repr(value)).quantize(q, rounding=ROUND_HALF_UP))
