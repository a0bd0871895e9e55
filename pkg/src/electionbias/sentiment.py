"""Lexicon and rule-based compound sentiment (the VADER method).

The rule constants below are the ones published with the method's reference
lexicon release 3.3.2.  A whole text gets one compound score; there is no
sentence splitting and no emoji-to-text translation.
"""

from __future__ import annotations

import logging
import math
import string
from importlib import resources
from pathlib import Path
from typing import Iterator, Mapping

logger = logging.getLogger(__name__)

BOOST_INCREMENT = 0.293
CAPS_INCREMENT = 0.733
NEGATION_SCALAR = -0.74
EXCLAMATION_INCREMENT = 0.292
EXCLAMATION_MAX = 4
QUESTION_INCREMENT = 0.18
QUESTION_CAP = 0.96
NORMALIZATION_ALPHA = 15.0
BUT_BEFORE = 0.5
BUT_AFTER = 1.5

NEGATIONS = frozenset("""
    aint arent cannot cant couldnt darent didnt doesnt ain't aren't can't couldn't
    daren't didn't doesn't dont hadnt hasnt havent isnt mightnt mustnt neither
    don't hadn't hasn't haven't isn't mightn't mustn't neednt needn't never none
    nope nor not nothing nowhere oughtnt shant shouldnt uhuh wasnt werent oughtn't
    shan't shouldn't uh-uh wasn't weren't without wont wouldnt won't wouldn't
    rarely seldom despite
""".split())

_BOOSTERS_UP = """
    absolutely amazingly awfully completely considerable considerably decidedly
    deeply effing enormous enormously entirely especially exceptional exceptionally
    extreme extremely fabulously flipping flippin frackin fracking fricking frickin
    frigging friggin fully fuckin fucking fuggin fugging greatly hella highly hugely
    incredible incredibly intensely major majorly more most particularly purely
    quite really remarkably so substantially thoroughly total totally tremendous
    tremendously uber unbelievably unusually utter utterly very
""".split()
_BOOSTERS_DOWN = """
    almost barely hardly kinda kindof kind-of less little marginal marginally
    occasional occasionally partly scarce scarcely slight slightly somewhat sorta
    sortof sort-of
""".split() + ["just enough", "kind of", "sort of"]

BOOSTERS: dict[str, float] = {
    **{w: BOOST_INCREMENT for w in _BOOSTERS_UP},
    **{w: -BOOST_INCREMENT for w in _BOOSTERS_DOWN},
}

# phrases containing a lexicon word whose meaning overrides that word's valence
IDIOMS = {
    "the shit": 3.0, "the bomb": 3.0, "bad ass": 1.5, "badass": 1.5, "bus stop": 0.0,
    "yeah right": -2.0, "kiss of death": -1.5, "to die for": 3.0, "beating heart": 3.5,
}

_PUNCT = string.punctuation
_PHRASE_WORDS = frozenset(
    w for phrase in [*IDIOMS, *BOOSTERS] if " " in phrase or phrase in IDIOMS for w in phrase.split()
)


class LexiconFormatError(ValueError):
    pass


class Lexicon(Mapping[str, float]):
    """Immutable lowercase token -> valence table."""

    def __init__(self, entries: Mapping[str, float]):
        if not entries:
            raise LexiconFormatError("lexicon has no entries")
        self.entries = dict(entries)

    def __getitem__(self, token: str) -> float:
        return self.entries[token]

    def __contains__(self, token) -> bool:
        return token in self.entries

    def __iter__(self) -> Iterator[str]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __repr__(self):
        return f"Lexicon({len(self)} entries)"


def load_lexicon(path: str | Path) -> Lexicon:
    """Read a ``token<TAB>valence`` file; extra columns and ``#`` lines are ignored."""
    entries: dict[str, float] = {}
    duplicates = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) < 2:
                logger.warning("%s:%d: no valence column", path, lineno)
                continue
            try:
                valence = float(parts[1])
            except ValueError:
                logger.warning("%s:%d: bad valence %r", path, lineno, parts[1])
                continue
            if not math.isfinite(valence):
                logger.warning("%s:%d: non-finite valence", path, lineno)
                continue
            if parts[0] in entries:
                duplicates.append(parts[0])
            entries[parts[0]] = valence
    if not entries:
        raise LexiconFormatError(f"{path}: no valid lexicon entries")
    if duplicates:
        logger.warning("%s: %d duplicate tokens, later values kept: %s",
                       path, len(duplicates), " ".join(duplicates))
    return Lexicon(entries)


def default_lexicon_path() -> Path:
    return Path(str(resources.files("electionbias") / "data" / "vader_lexicon.txt"))


_default: Lexicon | None = None


def default_lexicon() -> Lexicon:
    global _default
    if _default is None:
        _default = load_lexicon(default_lexicon_path())
    return _default


class Token(str):
    """A word as used for lexicon lookup, keeping its raw whitespace-delimited form."""

    __slots__ = ("raw",)

    def __new__(cls, word: str, raw: str):
        self = super().__new__(cls, word)
        self.raw = raw
        return self


def _strip(chunk: str) -> str:
    stripped = chunk.strip(_PUNCT)
    # short leftovers mean the chunk was an emoticon such as ":)" or "<3"
    return chunk if len(stripped) <= 2 else stripped


def tokenize(text: str) -> list[Token]:
    return [Token(_strip(chunk), chunk) for chunk in text.split()]


def _is_negation(word: str) -> bool:
    return word in NEGATIONS or "n't" in word


def _punctuation_boost(text: str) -> float:
    boost = min(text.count("!"), EXCLAMATION_MAX) * EXCLAMATION_INCREMENT
    q = text.count("?")
    if q > 3:
        boost += QUESTION_CAP
    elif q > 1:
        boost += q * QUESTION_INCREMENT
    return boost


def normalize(total: float, alpha: float = NORMALIZATION_ALPHA) -> float:
    score = total / math.sqrt(total * total + alpha)
    return max(-1.0, min(1.0, score))


def _word_valence(i, words, lowers, lex, caps_emphasis):
    word = lowers[i]
    n = len(words)
    base = lex[word]
    valence = base
    if word == "no" and i != n - 1 and lowers[i + 1] in lex:
        # "no" acting as a negator of the next word rather than a sentiment word
        valence = 0.0
    if (i > 0 and lowers[i - 1] == "no") or (i > 1 and lowers[i - 2] == "no") or (
        i > 2 and lowers[i - 3] == "no" and lowers[i - 1] in ("or", "nor")
    ):
        valence = base * NEGATION_SCALAR
    if caps_emphasis and words[i].isupper():
        valence = valence + CAPS_INCREMENT if valence > 0 else valence - CAPS_INCREMENT

    for dist in (1, 2, 3):
        if i < dist:
            break
        prev = lowers[i - dist]
        if prev in lex:
            continue
        shift = BOOSTERS.get(prev, 0.0)
        if shift:
            if valence < 0:
                shift = -shift
            if caps_emphasis and words[i - dist].isupper():
                shift = shift + CAPS_INCREMENT if valence > 0 else shift - CAPS_INCREMENT
            if dist == 2:
                shift *= 0.95
            elif dist == 3:
                shift *= 0.9
            valence += shift

        if dist == 1:
            if _is_negation(prev):
                valence *= NEGATION_SCALAR
        elif dist == 2:
            if prev == "never" and lowers[i - 1] in ("so", "this"):
                valence *= 1.25
            elif prev == "without" and lowers[i - 1] == "doubt":
                pass
            elif _is_negation(prev):
                valence *= NEGATION_SCALAR
        else:
            if (prev == "never" and lowers[i - 2] in ("so", "this")) or lowers[i - 1] in ("so", "this"):
                valence *= 1.25
            elif prev == "without" and "doubt" in (lowers[i - 2], lowers[i - 1]):
                pass
            elif _is_negation(prev):
                valence *= NEGATION_SCALAR
            valence = _idioms(valence, lowers, i)

    if i > 0 and lowers[i - 1] == "least" and "least" not in lex:
        if i == 1 or lowers[i - 2] not in ("at", "very"):
            valence *= NEGATION_SCALAR
    return valence


def _idioms(valence, lowers, i):
    window = lowers[i - 3 : i + 3]
    if _PHRASE_WORDS.isdisjoint(window):
        return valence
    w3, w2, w1, w0 = lowers[i - 3], lowers[i - 2], lowers[i - 1], lowers[i]
    for seq in (f"{w1} {w0}", f"{w2} {w1} {w0}", f"{w2} {w1}", f"{w3} {w2} {w1}", f"{w3} {w2}"):
        if seq in IDIOMS:
            valence = IDIOMS[seq]
            break
    n = len(lowers)
    if n - 1 > i:
        seq = f"{w0} {lowers[i + 1]}"
        if seq in IDIOMS:
            valence = IDIOMS[seq]
    if n - 1 > i + 1:
        seq = f"{w0} {lowers[i + 1]} {lowers[i + 2]}"
        if seq in IDIOMS:
            valence = IDIOMS[seq]
    # multiword dampeners such as "kind of" sitting in front of the word
    for seq in (f"{w3} {w2} {w1}", f"{w3} {w2}", f"{w2} {w1}"):
        if seq in BOOSTERS:
            valence += BOOSTERS[seq]
    return valence


def _rule_valences(text, lexicon):
    lexicon = getattr(lexicon, "entries", lexicon)
    words = [_strip(chunk) for chunk in text.split()]
    lowers = [w.lower() for w in words]
    n = len(words)
    caps = sum(1 for w in words if w.isupper())
    caps_emphasis = 0 < n - caps < n

    out = []
    for i, word in enumerate(lowers):
        if word in BOOSTERS or word not in lexicon or (word == "kind" and i < n - 1 and lowers[i + 1] == "of"):
            out.append(0.0)
        else:
            out.append(_word_valence(i, words, lowers, lexicon, caps_emphasis))
    return out, lowers


def token_valences(text: str, lexicon: Mapping[str, float]) -> list[float]:
    """Rule-adjusted valence of every whitespace token of ``text``.

    Words before the first "but" are halved and words after it are scaled
    by 1.5, by position.
    """
    out, lowers = _rule_valences(text, lexicon)
    if "but" in lowers:
        pivot = lowers.index("but")
        out = [v * BUT_BEFORE if k < pivot else v * BUT_AFTER if k > pivot else v for k, v in enumerate(out)]
    return out


def compound_sentiment(text: str, lexicon: Mapping[str, float] | None = None) -> float:
    """Bounded [-1, 1] compound score of ``text``; 0.0 when no lexicon word occurs."""
    if lexicon is None:
        lexicon = default_lexicon()
    # plain left-to-right sum: exact cancellation (total == 0.0) must not depend on summation tricks
    total = sum(token_valences(text, lexicon))
    if total > 0:
        total += _punctuation_boost(text)
    elif total < 0:
        total -= _punctuation_boost(text)
    else:
        return 0.0
    return normalize(total)
