import pytest
from hypothesis import given, settings, strategies as st

from metricide.corpus import load_corpus
from metricide.grammar_metrics import (
    GrammarMetricError, default_dictionary, flesch_re, misspellings,
    parse_score, surface_stats,
)
from metricide.textproc import tokenize

sentences = st.lists(
    st.sampled_from(["the", "cat", "sat", "moderately", "priced",
                     "restaurant", "table", "on", "a"]),
    min_size=1, max_size=12,
).map(lambda ws: " ".join(ws) + ".")


def test_flesch_the_cat_sat():
    value = flesch_re(tokenize("The cat sat."))
    assert value == pytest.approx(206.835 - 1.015 * 3 - 84.6 * 1.0)
    assert value == pytest.approx(119.19, abs=1e-9)


def test_flesch_invariant_under_sentence_doubling():
    text = "the cat sat. a table fell."
    assert flesch_re(tokenize(text + " " + text)) == pytest.approx(
        flesch_re(tokenize(text)))


def test_flesch_decreases_with_more_syllables():
    # swap a monosyllable for a polysyllable, all else equal
    low = flesch_re(tokenize("the cat sat."))
    high = flesch_re(tokenize("the moderately sat."))
    assert high < low


def test_flesch_requires_words():
    with pytest.raises(GrammarMetricError):
        flesch_re(tokenize("..."))


def test_surface_stats_hi():
    stats = surface_stats(tokenize("hi."), "hi.", frozenset({"hi"}))
    assert stats.len == 3
    assert stats.wps == 1.0
    assert stats.pol == 0
    assert stats.ppw == 0.0
    assert stats.msp == 0


def test_surface_stats_polysyllables():
    seq = tokenize("a moderately priced restaurant")
    stats = surface_stats(seq, "a moderately priced restaurant")
    # moderately and restaurant have >= 3 syllables under the heuristic
    assert stats.pol == 2
    assert stats.ppw == pytest.approx(2 / 4)


def test_surface_stats_len_counts_non_space_characters():
    stats = surface_stats(tokenize("ab  cd."), "ab  cd.", frozenset({"ab", "cd"}))
    assert stats.len == 5


def test_surface_stats_rejects_punctuation_only():
    with pytest.raises(GrammarMetricError):
        surface_stats(tokenize("?!"), "?!", frozenset())


@given(sentences)
@settings(max_examples=60)
def test_surface_arithmetic_identities(text):
    seq = tokenize(text)
    stats = surface_stats(seq, text, frozenset())
    words = len(seq.word_tokens())
    assert stats.sps == pytest.approx(stats.spw * stats.wps)
    assert stats.ppw * words == pytest.approx(stats.pol)
    assert stats.cpw >= 0 and stats.spw >= 1.0


def test_misspellings_spec_example():
    seq = tokenize("fifth floor does not allow childs")
    assert misspellings(seq, default_dictionary()) == 1


def test_misspellings_never_counts_placeholder_or_digits():
    seq = tokenize("x is 5 stars x2 great")
    assert misspellings(seq, frozenset({"is", "stars", "great"})) == 0


def test_misspellings_all_known_and_empty():
    dictionary = frozenset({"all", "good", "words"})
    assert misspellings(tokenize("all good words."), dictionary) == 0
    assert misspellings(tokenize(""), dictionary) == 0


def test_misspellings_monotone_in_dictionary():
    seq = tokenize("some unusual zorblat word")
    small = frozenset({"some", "word"})
    large = small | {"unusual", "zorblat"}
    assert misspellings(seq, large) <= misspellings(seq, small)


def test_misspellings_requires_dictionary():
    with pytest.raises(GrammarMetricError):
        misspellings(tokenize("hi"), None)


def test_parse_score_passthrough(fixture_corpus):
    values = [parse_score(inst) for inst in fixture_corpus]
    assert values[0] == 81.2
    assert values[[i.instance_id for i in fixture_corpus].index("r06b")] is None


def test_default_dictionary_size():
    words = default_dictionary()
    assert len(words) > 100_000
    assert "restaurant" in words
    assert "childs" not in words
