"""
How the compound score moves
============================

A handful of tweets-worth of text, each nudging one rule: boosters, caps,
negation, "but", and trailing punctuation.
"""

from electionbias import compound_sentiment
from electionbias.sentiment import token_valences, default_lexicon

examples = [
    "Trump is a good speaker",
    "Trump is a very good speaker",
    "Trump is a VERY GOOD speaker",
    "Trump is not a good speaker",
    "Clinton is good but her campaign is terrible",
    "Clinton is good!!!",
    "Clinton is kind of good",
    "debate tonight at 9",
]

for text in examples:
    print(f"{compound_sentiment(text):+.4f}  {text}")

###############################################################################
# Per-token contributions, before normalisation squeezes them into [-1, 1]
lex = default_lexicon()
text = "Clinton is good but her campaign is terrible"
for word, v in zip(text.split(), token_valences(text, lex)):
    print(f"{word:10s} {v:+.3f}")
