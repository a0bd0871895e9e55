"""File loaders, location-to-state resolution and user snapshot persistence.

Every loader either parses a row or skips it with a logged reason; only a
structurally unusable file (missing header columns, duplicate result scope)
raises :class:`FormatError`.
"""

from __future__ import annotations

import csv
import datetime as dt
import enum
import json
import logging
import math
import os
import re
import tempfile
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator

from .electorate import UserSentiment
from .polls import ElectionResult, Poll, RawShare

logger = logging.getLogger(__name__)

POLL_COLUMNS = ("source", "start_date", "end_date", "respondents", "pct_c1", "pct_c2")
RESULT_COLUMNS = ("scope", "pct_c1", "pct_c2")
SNAPSHOT_COLUMNS = ("user_id", "sum_c1", "sum_c2", "state", "tweets_seen")
NATIONAL = "US"


class FormatError(ValueError):
    pass


def _open_text(path):
    # undecodable bytes become U+FFFD so a bad row is rejected instead of the whole file
    return open(path, newline="", encoding="utf-8", errors="replace")


def _check_header(path, fieldnames, required):
    missing = [c for c in required if c not in (fieldnames or ())]
    if missing:
        raise FormatError(f"{path}: missing column(s) {', '.join(missing)}")


def _rows(path, required):
    with _open_text(path) as fh:
        reader = csv.DictReader(fh)
        try:
            _check_header(path, reader.fieldnames, required)
            # header is line 1
            for lineno, row in enumerate(reader, 2):
                yield lineno, row
        except csv.Error as exc:
            raise FormatError(f"{path}: {exc}") from exc


def _percent(text):
    value = float(text)
    if not math.isfinite(value) or not 0.0 <= value <= 100.0:
        raise ValueError(f"percentage out of range: {text!r}")
    return value


def load_polls(path: str | Path, rejected: list | None = None) -> list[Poll]:
    """Read a poll CSV.

    Required columns are ``source,start_date,end_date,respondents,pct_c1,pct_c2``;
    ``scope`` (default ``US``) and ``note`` are optional.  A blank respondent
    count is allowed for polls whose size was not published.  Rows that fail
    validation are logged and, if ``rejected`` is given, appended to it as
    ``(line_number, reason)``.
    """
    polls = []
    for lineno, row in _rows(path, POLL_COLUMNS):
        try:
            source = (row["source"] or "").strip()
            if not source:
                raise ValueError("empty source")
            respondents_text = (row["respondents"] or "").strip()
            respondents = int(respondents_text) if respondents_text else None
            if respondents is not None and respondents <= 0:
                raise ValueError(f"respondents must be positive, got {respondents}")
            poll = Poll(
                source=source,
                start_date=dt.date.fromisoformat((row["start_date"] or "").strip()),
                end_date=dt.date.fromisoformat((row["end_date"] or "").strip()),
                respondents=respondents,
                raw=RawShare.from_percent(_percent(row["pct_c1"]), _percent(row["pct_c2"])),
                scope=(row.get("scope") or NATIONAL).strip().upper() or NATIONAL,
                note=(row.get("note") or "").strip(),
            )
        except (TypeError, ValueError) as exc:
            logger.warning("%s:%d: rejected poll row: %s", path, lineno, exc)
            if rejected is not None:
                rejected.append((lineno, str(exc)))
            continue
        polls.append(poll)
    return polls


def load_results(path: str | Path, rejected: list | None = None) -> list[ElectionResult]:
    """Read a ``scope,pct_c1,pct_c2`` results CSV; adjusted shares are recomputed."""
    results: dict[str, ElectionResult] = {}
    for lineno, row in _rows(path, RESULT_COLUMNS):
        try:
            scope = (row["scope"] or "").strip().upper()
            if not scope:
                raise ValueError("empty scope")
            result = ElectionResult(scope, RawShare.from_percent(_percent(row["pct_c1"]), _percent(row["pct_c2"])))
        except (TypeError, ValueError) as exc:
            logger.warning("%s:%d: rejected result row: %s", path, lineno, exc)
            if rejected is not None:
                rejected.append((lineno, str(exc)))
            continue
        if scope in results:
            raise FormatError(f"{path}:{lineno}: duplicate scope {scope}")
        results[scope] = result
    return list(results.values())


@dataclass(frozen=True, slots=True)
class TweetRecord:
    tweet_id: str
    user_id: str
    text: str
    lang: str | None = None
    geo_state: str | None = None
    user_location: str | None = None


@dataclass
class CorpusStats:
    read: int = 0
    skipped: int = 0


def _ident(value):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ValueError(f"bad identifier {value!r}")
    value = str(value)
    if not value:
        raise ValueError("empty identifier")
    return value


def _optional_str(value):
    if value is None or isinstance(value, str):
        return value or None
    raise ValueError(f"expected a string, got {value!r}")


def parse_record(line: str) -> TweetRecord:
    obj = json.loads(line)
    if not isinstance(obj, dict):
        raise ValueError("record is not an object")
    text = obj.get("text")
    if not isinstance(text, str):
        raise ValueError("missing text")
    return TweetRecord(
        _ident(obj.get("tweet_id")),
        _ident(obj.get("user_id")),
        text,
        _optional_str(obj.get("lang")),
        _optional_str(obj.get("geo_state")),
        _optional_str(obj.get("user_location")),
    )


def load_corpus(path: str | Path, stats: CorpusStats | None = None) -> Iterator[TweetRecord]:
    """Stream one JSON object per line; malformed lines are counted in ``stats.skipped``."""
    if stats is None:
        stats = CorpusStats()
    with open(path, encoding="utf-8", errors="replace") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                record = parse_record(line)
            except (ValueError, RecursionError) as exc:
                stats.skipped += 1
                logger.debug("%s:%d: skipped record: %s", path, lineno, exc)
                continue
            stats.read += 1
            yield record
    if stats.skipped:
        logger.warning("%s: skipped %d malformed record(s)", path, stats.skipped)


def is_english(record: TweetRecord) -> bool:
    """Language pre-filter: keep records tagged English or untagged."""
    return record.lang is None or record.lang.lower().split("-")[0] == "en"


class Method(enum.Enum):
    GEOTAG = "geotag"
    PROFILE_TEXT = "profile_text"
    UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class StateResolution:
    state: str | None
    method: Method

    def __post_init__(self):
        if (self.state is None) != (self.method is Method.UNRESOLVED):
            raise ValueError("state must be present exactly when resolved")


UNRESOLVED = StateResolution(None, Method.UNRESOLVED)


class Gazetteer:
    """Offline lookup of free-text locations against state names, codes and big cities."""

    def __init__(self, data: dict):
        self.version = data.get("version", "")
        self.codes = frozenset(data["states"])
        self._codes_lower = frozenset(c.lower() for c in self.codes)
        names: dict[str, str] = {}
        for code, name in data["states"].items():
            names[name.lower()] = code
        for city in data["cities"]:
            names.setdefault(city["name"].lower(), city["state"])
        for alias, code in data.get("aliases", {}).items():
            names[alias.lower()] = code
        self.names = names
        self.ambiguous_codes = frozenset(data.get("ambiguous_bare_codes", ()))
        alternatives = "|".join(re.escape(n) for n in sorted(names, key=len, reverse=True))
        self._name_re = re.compile(rf"(?<![a-z0-9])(?:{alternatives})(?![a-z0-9])")
        self._comma_code_re = re.compile(r",\s*([a-z]{2})(?![a-z0-9])")
        self._bare_code_re = re.compile(r"(?:^|\s)([A-Z]{2})(?![A-Za-z0-9])")

    @classmethod
    def bundled(cls) -> "Gazetteer":
        path = resources.files("electionbias") / "data" / "gazetteer.json"
        return cls(json.loads(path.read_text(encoding="utf-8")))

    def locate(self, location: str | None) -> str | None:
        """Postal code for a free-text location, or ``None``.

        A comma-delimited code ("Rochester, NY") wins; otherwise the last
        state, alias or city name in the text; otherwise an upper-case code
        standing on its own ("Austin TX"), except codes that are common words.
        """
        if not location:
            return None
        text = location.strip()
        lower = text.lower()
        bare = lower.strip(" .,")
        if bare in self._codes_lower:
            return bare.upper()
        for m in reversed(list(self._comma_code_re.finditer(lower))):
            code = m.group(1).upper()
            if code in self.codes:
                return code
        best = None
        for m in self._name_re.finditer(lower):
            if best is None or m.end() > best.end() or (m.end() == best.end() and len(m.group()) > len(best.group())):
                best = m
        if best is not None:
            return self.names[best.group()]
        for m in reversed(list(self._bare_code_re.finditer(text))):
            code = m.group(1)
            if code in self.codes and code not in self.ambiguous_codes:
                return code
        return None


_gazetteer: Gazetteer | None = None


def bundled_gazetteer() -> Gazetteer:
    global _gazetteer
    if _gazetteer is None:
        _gazetteer = Gazetteer.bundled()
    return _gazetteer


@lru_cache(maxsize=65536)
def _locate_cached(location: str) -> str | None:
    return bundled_gazetteer().locate(location)


def resolve_state(record: TweetRecord, gazetteer: Gazetteer | None = None) -> StateResolution:
    geo = (record.geo_state or "").strip().upper()
    g = gazetteer or bundled_gazetteer()
    if geo in g.codes:
        return StateResolution(geo, Method.GEOTAG)
    if record.user_location:
        state = _locate_cached(record.user_location) if gazetteer is None else gazetteer.locate(record.user_location)
        if state:
            return StateResolution(state, Method.PROFILE_TEXT)
    return UNRESOLVED


def persist_user_sentiments(users: Iterable[UserSentiment], path: str | Path) -> None:
    """Write a snapshot CSV atomically (temp file in the same directory, then rename)."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(SNAPSHOT_COLUMNS)
            writer.writerows(
                (u.user_id, repr(u.sum_c1), repr(u.sum_c2), u.state or "", u.tweets_seen) for u in users
            )
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_user_sentiments(path: str | Path, rejected: list | None = None) -> list[UserSentiment]:
    users = []
    for lineno, row in _rows(path, SNAPSHOT_COLUMNS):
        try:
            user_id = (row["user_id"] or "").strip()
            if not user_id:
                raise ValueError("empty user_id")
            s1, s2 = float(row["sum_c1"]), float(row["sum_c2"])
            if not (math.isfinite(s1) and math.isfinite(s2)):
                raise ValueError("non-finite sum")
            seen = int(row["tweets_seen"])
            if seen < 0:
                raise ValueError("negative tweets_seen")
            users.append(UserSentiment(user_id, s1, s2, (row["state"] or "").strip() or None, seen))
        except (TypeError, ValueError) as exc:
            logger.warning("%s:%d: rejected snapshot row: %s", path, lineno, exc)
            if rejected is not None:
                rejected.append((lineno, str(exc)))
    return users
