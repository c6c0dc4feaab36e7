"""Deterministic text primitives shared by every metric.

All metrics in this package run on the same tokenizer so that their scores
are comparable with each other; the tokenizer, syllable heuristic and
stemmer below are frozen (any change silently shifts every downstream
number).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

PUNCT_TOKENS = frozenset({".", ",", "!", "?", ";", ":"})
SENTENCE_FINAL = frozenset({".", "!", "?"})
_VOWELS = frozenset("aeiouy")


@dataclass(frozen=True)
class TokenSequence:
    """Lowercased tokens plus sentence spans (token-index ranges)."""

    tokens: tuple[str, ...]
    sentence_bounds: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def n_sentences(self) -> int:
        return len(self.sentence_bounds)

    def word_tokens(self) -> list[str]:
        """Tokens that are not standalone punctuation."""
        return [t for t in self.tokens if t not in PUNCT_TOKENS]


def tokenize(text: str) -> TokenSequence:
    """Lowercase, split on whitespace, detach trailing punctuation.

    Trailing ``. , ! ? ; :`` characters become their own tokens; internal
    apostrophes and hyphens stay inside their word.  A sentence closes after
    the last token of a run of ``.``/``!``/``?`` tokens; text without any of
    those is a single sentence.  Empty input gives an empty sequence.
    """
    tokens: list[str] = []
    for chunk in text.lower().split():
        tail: list[str] = []
        while chunk and chunk[-1] in PUNCT_TOKENS:
            tail.append(chunk[-1])
            chunk = chunk[:-1]
        if chunk:
            tokens.append(chunk)
        tokens.extend(reversed(tail))

    bounds: list[tuple[int, int]] = []
    start = 0
    n = len(tokens)
    for i, tok in enumerate(tokens):
        if tok in SENTENCE_FINAL and (i + 1 == n or tokens[i + 1] not in SENTENCE_FINAL):
            bounds.append((start, i + 1))
            start = i + 1
    if start < n:
        bounds.append((start, n))
    return TokenSequence(tuple(tokens), tuple(bounds))


def detokenize(seq: TokenSequence) -> str:
    return " ".join(seq.tokens)


def ngrams(tokens, n: int) -> Counter:
    """Multiset of contiguous n-token windows (sentence bounds ignored)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if isinstance(tokens, TokenSequence):
        tokens = tokens.tokens
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def count_syllables(word: str) -> int:
    """Heuristic syllable count: maximal vowel groups, silent final 'e'.

    Counts maximal runs of ``aeiouy``, drops one for a word-final ``e`` not
    preceded by ``l`` when more than one group was found, and clamps to a
    minimum of 1.  Tokens without any letter count as one syllable.
    """
    w = word.lower()
    if not any(ch.isalpha() for ch in w):
        return 1
    groups = 0
    prev_vowel = False
    for ch in w:
        is_vowel = ch in _VOWELS
        if is_vowel and not prev_vowel:
            groups += 1
        prev_vowel = is_vowel
    if groups > 1 and w.endswith("e") and (len(w) < 2 or w[-2] != "l"):
        groups -= 1
    return max(1, groups)


def edit_distance(a, b, bound=None) -> int:
    """Token-level Levenshtein distance, unit costs.

    ``bound`` switches to a banded computation that returns ``bound`` as
    soon as the true distance is known to be >= bound (cells with
    |i - j| >= bound cannot end below it).  The TER shift search leans on
    this to reject candidate block moves cheaply.
    """
    if isinstance(a, TokenSequence):
        a = a.tokens
    if isinstance(b, TokenSequence):
        b = b.tokens
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        d = la + lb
        return d if bound is None or d < bound else bound
    if bound is None:
        prev = list(range(lb + 1))
        for i in range(1, la + 1):
            ai = a[i - 1]
            cur = [i] + [0] * lb
            for j in range(1, lb + 1):
                if ai == b[j - 1]:
                    v = prev[j - 1]
                else:
                    v = prev[j - 1] + 1
                    up = prev[j] + 1
                    if up < v:
                        v = up
                    left = cur[j - 1] + 1
                    if left < v:
                        v = left
                cur[j] = v
            prev = cur
        return prev[lb]

    if abs(la - lb) >= bound:
        return bound
    # banded rows; entries at and beyond the cap never win
    prev = list(range(lb + 1))
    for j in range(bound, lb + 1):
        prev[j] = bound
    for i in range(1, la + 1):
        ai = a[i - 1]
        jlo = i - bound + 1
        if jlo < 1:
            jlo = 1
        jhi = i + bound - 1
        if jhi > lb:
            jhi = lb
        cur = [bound] * (lb + 1)
        if jlo == 1:
            cur[0] = i if i < bound else bound
        row_min = bound
        for j in range(jlo, jhi + 1):
            if ai == b[j - 1]:
                v = prev[j - 1]
            else:
                v = prev[j - 1] + 1
                up = prev[j] + 1
                if up < v:
                    v = up
                left = cur[j - 1] + 1
                if left < v:
                    v = left
                if v > bound:
                    v = bound
            cur[j] = v
            if v < row_min:
                row_min = v
        if row_min >= bound:
            return bound
        prev = cur
    d = prev[lb]
    return d if d < bound else bound


# ---------------------------------------------------------------------------
# Porter stemmer (Porter 1980), steps 1a-5b.  Supports the stem-match stage
# of the METEOR alignment.
# ---------------------------------------------------------------------------


def _is_consonant(word: str, i: int) -> bool:
    ch = word[i]
    if ch in "aeiou":
        return False
    if ch == "y":
        return i == 0 or not _is_consonant(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """Number of vowel->consonant transitions, the m of [C](VC)^m[V]."""
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        if _is_consonant(stem, i):
            if prev_vowel:
                m += 1
            prev_vowel = False
        else:
            prev_vowel = True
    return m


def _has_vowel(stem: str) -> bool:
    return any(not _is_consonant(stem, i) for i in range(len(stem)))


def _ends_double_consonant(stem: str) -> bool:
    return (
        len(stem) >= 2
        and stem[-1] == stem[-2]
        and _is_consonant(stem, len(stem) - 1)
    )


def _ends_cvc(stem: str) -> bool:
    if len(stem) < 3:
        return False
    return (
        _is_consonant(stem, len(stem) - 3)
        and not _is_consonant(stem, len(stem) - 2)
        and _is_consonant(stem, len(stem) - 1)
        and stem[-1] not in "wxy"
    )


def _apply_rules(word: str, rules) -> tuple[str, bool]:
    """Longest-suffix-match rule table; returns (word, a-rule-matched)."""
    best = None
    for suffix, replacement, condition in rules:
        if word.endswith(suffix) and (best is None or len(suffix) > len(best[0])):
            best = (suffix, replacement, condition)
    if best is None:
        return word, False
    suffix, replacement, condition = best
    stem = word[: len(word) - len(suffix)]
    if condition is None or condition(stem):
        return stem + replacement, True
    return word, True


_STEP2 = [
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"), ("abli", "able"), ("alli", "al"), ("entli", "ent"),
    ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
    ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
    ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
]

_STEP3 = [
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
]

_STEP4 = [
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
    "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
]


def porter_stem(word: str) -> str:
    """Classic Porter (1980) stem of a lowercase word."""
    if len(word) <= 2:
        return word
    w = word

    # Step 1a
    w, _ = _apply_rules(w, [
        ("sses", "ss", None), ("ies", "i", None), ("ss", "ss", None), ("s", "", None),
    ])

    # Step 1b
    if w.endswith("eed"):
        if _measure(w[:-3]) > 0:
            w = w[:-1]
    else:
        fired = False
        if w.endswith("ed") and _has_vowel(w[:-2]):
            w = w[:-2]
            fired = True
        elif w.endswith("ing") and _has_vowel(w[:-3]):
            w = w[:-3]
            fired = True
        if fired:
            if w.endswith(("at", "bl", "iz")):
                w += "e"
            elif _ends_double_consonant(w) and w[-1] not in "lsz":
                w = w[:-1]
            elif _measure(w) == 1 and _ends_cvc(w):
                w += "e"

    # Step 1c
    if w.endswith("y") and _has_vowel(w[:-1]):
        w = w[:-1] + "i"

    # Step 2
    w, _ = _apply_rules(w, [(s, r, lambda st: _measure(st) > 0) for s, r in _STEP2])

    # Step 3
    w, _ = _apply_rules(w, [(s, r, lambda st: _measure(st) > 0) for s, r in _STEP3])

    # Step 4
    def _step4_cond(suffix):
        if suffix == "ion":
            return lambda st: _measure(st) > 1 and st[-1:] in ("s", "t")
        return lambda st: _measure(st) > 1

    w, _ = _apply_rules(w, [(s, "", _step4_cond(s)) for s in _STEP4])

    # Step 5a
    if w.endswith("e"):
        m = _measure(w[:-1])
        if m > 1 or (m == 1 and not _ends_cvc(w[:-1])):
            w = w[:-1]

    # Step 5b
    if _measure(w) > 1 and _ends_double_consonant(w) and w.endswith("l"):
        w = w[:-1]

    return w
