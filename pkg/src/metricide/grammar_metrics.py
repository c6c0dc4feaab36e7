"""Reference-less grammar and readability metrics.

These are computed from the system output alone: Flesch Reading Ease,
surface-complexity ratios, misspelling counts against a word list, and
passthrough of an externally computed parse score.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .textproc import TokenSequence, count_syllables


class GrammarMetricError(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceStats:
    """Per-utterance surface statistics; field names match report columns."""

    len: int      # non-space characters of the raw utterance
    cpw: float    # alphabetic characters per word
    wps: float    # words per sentence
    sps: float    # syllables per sentence
    spw: float    # syllables per word
    pol: int      # words with >= 3 syllables
    ppw: float    # polysyllables per word
    re: float     # Flesch Reading Ease
    msp: int      # misspelled words


def flesch_re(seq: TokenSequence) -> float:
    """206.835 - 1.015*(words/sentences) - 84.6*(syllables/words).

    Word and syllable counts exclude standalone punctuation tokens.
    """
    words = seq.word_tokens()
    if not words:
        raise GrammarMetricError("no word tokens; reading ease undefined")
    sentences = max(1, seq.n_sentences)
    syllables = sum(count_syllables(w) for w in words)
    return 206.835 - 1.015 * (len(words) / sentences) - 84.6 * (syllables / len(words))


def misspellings(seq: TokenSequence, dictionary: frozenset) -> int:
    """Alphabetic word tokens missing from the dictionary.

    The placeholder token "x" and tokens containing digits or other
    non-letter characters (hyphenations, contractions) are never counted.
    """
    if dictionary is None:
        raise GrammarMetricError(
            "misspelling count requires a word list; supply one via --dictionary")
    count = 0
    for tok in seq.word_tokens():
        if tok == "x" or not tok.isalpha():
            continue
        if tok not in dictionary:
            count += 1
    return count


def surface_stats(seq: TokenSequence, raw: str,
                  dictionary: frozenset | None = None) -> SurfaceStats:
    """The full grammar-metric bundle for one utterance.

    ``len`` counts the non-space characters of the raw string; everything
    else is computed over word tokens (punctuation excluded) with sentence
    counts from the tokenizer.
    """
    words = seq.word_tokens()
    if not words:
        raise GrammarMetricError("no word tokens in utterance")
    if dictionary is None:
        dictionary = default_dictionary()
    sentences = max(1, seq.n_sentences)
    syllable_counts = [count_syllables(w) for w in words]
    syllables = sum(syllable_counts)
    pol = sum(1 for s in syllable_counts if s >= 3)
    alpha_chars = sum(1 for w in words for ch in w if ch.isalpha())
    return SurfaceStats(
        len=sum(1 for ch in raw if not ch.isspace()),
        cpw=alpha_chars / len(words),
        wps=len(words) / sentences,
        sps=syllables / sentences,
        spw=syllables / len(words),
        pol=pol,
        ppw=pol / len(words),
        re=flesch_re(seq),
        msp=misspellings(seq, dictionary),
    )


def parse_score(instance) -> float | None:
    """Externally computed parser score, passed through verbatim."""
    return instance.parse_score


@lru_cache(maxsize=1)
def default_dictionary() -> frozenset:
    """The bundled ~112k-entry English word list."""
    text = resources.files("metricide").joinpath("data/wordlist.txt").read_text("utf-8")
    return frozenset(w for w in text.split("\n") if w)
