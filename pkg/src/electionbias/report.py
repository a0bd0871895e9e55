"""Batch commands behind the ``electionbias`` CLI.

Each ``cmd_*`` reads its inputs, writes one CSV and returns the rows it
wrote.  Output is fully determined by the inputs: rows are sorted and
numbers are rounded half away from zero to a fixed number of places.
"""

from __future__ import annotations

import csv
import io
import logging
import sys
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .electorate import MentionClassifier, UserSentiment, tally_scopes
from .ingest import (
    CorpusStats,
    load_corpus,
    load_polls,
    load_results,
    load_user_sentiments,
    persist_user_sentiments,
)
from .pipeline import build_users, default_threads
from .polls import (
    ElectionResult,
    NoDataError,
    Poll,
    adjust_two_party,
    aggregate_period,
    average_bias,
    bias,
    bias_time_series,
    display_round,
    group_by_period,
    months_between,
)

logger = logging.getLogger(__name__)

DEFAULT_DECIMALS = 4


class CommandError(Exception):
    """A command cannot run on the given inputs; ``kind`` names the failure class."""

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


@dataclass
class Labels:
    c1: str = "Trump"
    c2: str = "Clinton"

    def col(self, which: int, suffix: str) -> str:
        name = self.c1 if which == 1 else self.c2
        return f"{name.lower().replace(' ', '_')}_{suffix}"


def _num(value: float | None, decimals: int) -> str:
    if value is None:
        return ""
    out = f"{display_round(value, decimals):.{decimals}f}"
    # avoid "-0.0000" so identical inputs print identically regardless of sign of zero
    return out[1:] if out.startswith("-") and float(out) == 0 else out


def write_csv(rows: Sequence[dict], header: Sequence[str], out: str | Path | None) -> None:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(header), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    text = buf.getvalue()
    if out is None or str(out) == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="")


def _results_by_scope(path) -> dict[str, ElectionResult]:
    return {r.scope: r for r in load_results(path)}


def _actual_for(results, scope, path):
    try:
        return results[scope]
    except KeyError:
        raise CommandError("missing-scope", f"{path} has no result for scope {scope}") from None


def _groups(polls: Iterable[Poll]) -> dict[tuple[str, str], list[Poll]]:
    groups: dict[tuple[str, str], list[Poll]] = defaultdict(list)
    for p in polls:
        groups[(p.source, p.scope)].append(p)
    return dict(sorted(groups.items()))


def cmd_adjust(in_polls, out_csv=None, labels: Labels | None = None, decimals: int = DEFAULT_DECIMALS):
    labels = labels or Labels()
    polls = load_polls(in_polls)
    header = ["source", "scope", "start_date", "end_date", "respondents",
              labels.col(1, "pct"), labels.col(2, "pct"), labels.col(1, "adj"), labels.col(2, "adj")]
    rows = []
    for p in polls:
        adj = adjust_two_party(p.raw)
        rows.append(dict(zip(header, [
            p.source, p.scope, p.start_date.isoformat(), p.end_date.isoformat(),
            "" if p.respondents is None else p.respondents,
            _num(p.raw.pct_c1, decimals), _num(p.raw.pct_c2, decimals),
            _num(adj.pct_c1, decimals), _num(adj.pct_c2, decimals),
        ])))
    write_csv(rows, header, out_csv)
    return rows


def cmd_aggregate(in_polls, out_csv=None, labels: Labels | None = None, decimals: int = DEFAULT_DECIMALS):
    """Respondent-weighted monthly aggregate per source; months without polls are blank rows."""
    labels = labels or Labels()
    header = ["source", "scope", "period", "polls",
              labels.col(1, "pct"), labels.col(2, "pct"), labels.col(1, "adj"), labels.col(2, "adj")]
    rows = []
    for (source, scope), polls in _groups(load_polls(in_polls)).items():
        by_month = group_by_period(polls)
        months = list(by_month)
        for period in months_between(months[0], months[-1]):
            row = {"source": source, "scope": scope, "period": period, "polls": 0}
            if period in by_month:
                agg = aggregate_period(by_month[period], period)
                row.update({
                    "polls": agg.polls_included,
                    labels.col(1, "pct"): _num(agg.raw.pct_c1, decimals),
                    labels.col(2, "pct"): _num(agg.raw.pct_c2, decimals),
                    labels.col(1, "adj"): _num(agg.adjusted.pct_c1, decimals),
                    labels.col(2, "adj"): _num(agg.adjusted.pct_c2, decimals),
                })
            rows.append(row)
    write_csv(rows, header, out_csv)
    return rows


BIAS_HEADER = ["source", "scope", "period", "polls", "predicted", "actual", "bias"]


def cmd_bias(in_polls, in_results, by: str = "month", out_csv=None, decimals: int = DEFAULT_DECIMALS):
    """Per-source, per-scope bias rows followed by an ``avg`` row for each group."""
    results = _results_by_scope(in_results)
    rows = []
    for (source, scope), polls in _groups(load_polls(in_polls)).items():
        actual = _actual_for(results, scope, in_results)
        values = []
        if by == "month":
            for period, group in group_by_period(polls).items():
                agg = aggregate_period(group, period)
                b = bias(agg.adjusted, actual.adjusted)
                values.append(b)
                rows.append(_bias_row(source, scope, period, len(group), agg.adjusted.pct_c1,
                                      actual.adjusted.pct_c1, b, decimals))
        elif by == "poll":
            for p in sorted(polls, key=lambda p: (p.end_date, p.start_date)):
                adj = adjust_two_party(p.raw)
                b = bias(adj, actual.adjusted)
                values.append(b)
                rows.append(_bias_row(source, scope, p.end_date.isoformat(), 1, adj.pct_c1,
                                      actual.adjusted.pct_c1, b, decimals))
        else:
            raise CommandError("usage", f"unknown mode {by!r}")
        rows.append(_bias_row(source, scope, "avg", len(values), None, actual.adjusted.pct_c1,
                              average_bias(values), decimals))
    write_csv(rows, BIAS_HEADER, out_csv)
    return rows


def _bias_row(source, scope, period, n, predicted, actual, b, decimals):
    return {"source": source, "scope": scope, "period": period, "polls": n,
            "predicted": _num(predicted, decimals), "actual": _num(actual, decimals),
            "bias": _num(b, decimals)}


def cmd_series(in_polls, in_results, source_filter: str | None = None, by: str = "poll",
               out_csv=None, decimals: int = DEFAULT_DECIMALS, svg: str | Path | None = None):
    """Chronological ``(period, bias)`` points for plotting, one series per source and scope."""
    results = _results_by_scope(in_results)
    polls = load_polls(in_polls)
    sources = sorted({p.source for p in polls})
    if source_filter is not None:
        wanted = [s for s in sources if s.lower() == source_filter.lower()]
        if not wanted:
            raise CommandError("unknown-source",
                               f"no polls from {source_filter!r}; available: {', '.join(sources) or '(none)'}")
        polls = [p for p in polls if p.source in wanted]
    points = []
    for (source, scope), group in _groups(polls).items():
        actual = _actual_for(results, scope, in_results)
        for period, b in bias_time_series(group, actual, by=by):
            points.append((period, source, scope, b))
    points.sort()
    rows = [{"period": p, "source": s, "scope": sc, "bias": _num(b, decimals)} for p, s, sc, b in points]
    write_csv(rows, ["period", "source", "scope", "bias"], out_csv)
    if svg is not None:
        from .plots import series_chart

        series_chart(points, by, svg)
    return rows


PREDICT_HEADER = ["scope", "votes_c1", "votes_c2", "abstentions", "share_c1", "share_c2",
                  "actual", "bias", "status"]


def cmd_predict(in_corpus=None, in_lexicon=None, in_results=None, scope_list: Sequence[str] | None = None,
                out_csv=None, *, users_in=None, snapshot=None, threads: int | None = None,
                classifier: MentionClassifier | None = None, english_only: bool = True,
                decimals: int = DEFAULT_DECIMALS):
    """Tally extrapolated user votes per scope and compare with the actual outcome.

    Users come either from a tweet corpus (``in_corpus``), in which case the
    per-user sums are also written to ``snapshot``, or from a previously
    written snapshot (``users_in``).
    """
    if (in_corpus is None) == (users_in is None):
        raise CommandError("usage", "give exactly one of a corpus or a user snapshot")
    results = _results_by_scope(in_results)
    scopes = list(scope_list) if scope_list else list(results)
    for s in scopes:
        _actual_for(results, s, in_results)

    if in_corpus is not None:
        stats = CorpusStats()
        users: list[UserSentiment] = list(build_users(
            load_corpus(in_corpus, stats),
            lexicon_path=in_lexicon,
            threads=threads or default_threads(),
            classify=classifier or MentionClassifier(),
            english_only=english_only,
        ).values())
        if snapshot is not None:
            persist_user_sentiments(users, snapshot)
    else:
        users = load_user_sentiments(users_in)

    tallies = tally_scopes(users, scopes)
    rows = []
    for scope in scopes:
        t = tallies[scope]
        actual = results[scope]
        row = {"scope": scope, "votes_c1": t.votes_c1, "votes_c2": t.votes_c2,
               "abstentions": t.abstentions, "actual": _num(actual.adjusted.pct_c1, decimals)}
        try:
            shares = t.shares()
        except NoDataError:
            row["status"] = "no-data"
        else:
            row.update(share_c1=_num(shares.pct_c1, decimals), share_c2=_num(shares.pct_c2, decimals),
                       bias=_num(bias(shares, actual.adjusted), decimals), status="ok")
        rows.append(row)
    write_csv(rows, PREDICT_HEADER, out_csv)
    return rows


@dataclass
class ComparisonReport:
    poll_avg_bias: float
    social_avg_bias: float
    # scope -> ({source: bias}, social bias)
    per_scope: dict[str, tuple[dict[str, float], float]] = field(default_factory=dict)


def read_bias_table(path) -> dict[str, dict[str, float]]:
    """Collapse a bias CSV to ``{scope: {source: bias}}``.

    A group's ``avg`` row is used when present, otherwise the mean of its
    rows.  Rows without a bias value (no-data) are ignored; a file without a
    ``source`` column is treated as a single source.
    """
    with open(path, newline="", encoding="utf-8", errors="replace") as fh:
        reader = csv.DictReader(fh)
        missing = {"scope", "bias"} - set(reader.fieldnames or ())
        if missing:
            raise CommandError("format", f"{path}: missing column(s) {', '.join(sorted(missing))}")
        groups: dict[tuple[str, str], dict[str, list[float]]] = defaultdict(lambda: {"avg": [], "rows": []})
        for lineno, row in enumerate(reader, 2):
            text = (row.get("bias") or "").strip()
            if not text:
                continue
            try:
                value = float(text)
            except ValueError:
                raise CommandError("format", f"{path}:{lineno}: bad bias {text!r}") from None
            key = ((row.get("scope") or "").strip().upper(), (row.get("source") or "").strip() or "-")
            kind = "avg" if (row.get("period") or "").strip() == "avg" else "rows"
            groups[key][kind].append(value)
    table: dict[str, dict[str, float]] = defaultdict(dict)
    for (scope, source), g in groups.items():
        table[scope][source] = average_bias(g["avg"] or g["rows"])
    return {s: dict(sorted(v.items())) for s, v in sorted(table.items())}


def compare(poll_table: dict[str, dict[str, float]], social_table: dict[str, dict[str, float]]) -> ComparisonReport:
    only_polls = sorted(set(poll_table) - set(social_table))
    only_social = sorted(set(social_table) - set(poll_table))
    if only_polls or only_social:
        raise CommandError("scope-mismatch",
                           f"unmatched scopes: polls only [{' '.join(only_polls)}], "
                           f"social only [{' '.join(only_social)}]")
    if not poll_table:
        raise CommandError("no-data", "no bias rows to compare")
    per_scope = {}
    by_source: dict[str, list[float]] = defaultdict(list)
    for scope, sources in poll_table.items():
        for source, b in sources.items():
            by_source[source].append(b)
        per_scope[scope] = (sources, average_bias(social_table[scope].values()))
    poll_avg = average_bias(average_bias(v) for v in by_source.values())
    social_avg = average_bias(s for _, s in per_scope.values())
    return ComparisonReport(poll_avg, social_avg, per_scope)


def cmd_compare(in_poll_bias, in_social_bias, out_csv=None, decimals: int = DEFAULT_DECIMALS):
    report = compare(read_bias_table(in_poll_bias), read_bias_table(in_social_bias))
    sources = sorted({s for srcs, _ in report.per_scope.values() for s in srcs})
    header = ["scope", *sources, "poll_bias", "social_bias", "abs_poll", "abs_social",
              "difference", "more_biased"]
    rows = []

    def row_for(scope, per_source, poll_b, social_b):
        row = {"scope": scope, **{s: _num(per_source.get(s), decimals) for s in sources}}
        diff = abs(social_b) - abs(poll_b)
        r_diff = display_round(diff, decimals)
        row.update(poll_bias=_num(poll_b, decimals), social_bias=_num(social_b, decimals),
                   abs_poll=_num(abs(poll_b), decimals), abs_social=_num(abs(social_b), decimals),
                   difference=_num(social_b - poll_b, decimals),
                   more_biased="tie" if r_diff == 0 else ("social" if r_diff > 0 else "polls"))
        return row

    for scope, (per_source, social_b) in report.per_scope.items():
        rows.append(row_for(scope, per_source, average_bias(per_source.values()), social_b))
    source_avgs = {s: average_bias(srcs[s] for srcs, _ in report.per_scope.values() if s in srcs)
                   for s in sources}
    rows.append(row_for("AVERAGE", source_avgs, report.poll_avg_bias, report.social_avg_bias))
    write_csv(rows, header, out_csv)
    return rows
