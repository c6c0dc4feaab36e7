import json

import pytest
from hypothesis import given, strategies as st

from metricide.corpus import (
    CorpusLoadError, MeaningRepresentation, MRParseError, RatingTriple,
    load_corpus, load_dictionary, load_embeddings, load_synonyms,
    median_rating, parse_mr, scan_corpus,
)

names = st.text(alphabet="abcdefghijklmnopqrstuvwxyz_", min_size=1, max_size=10)
values = st.one_of(
    st.none(),
    st.text(alphabet="abcdefghijklmnopqrstuvwxyz X'", min_size=1, max_size=12).map(
        str.strip).filter(bool))


def test_parse_mr_boxed_example():
    mr = parse_mr("inform(name=X, area=X, pricerange=moderate, type=restaurant)")
    assert mr.act_type == "inform"
    assert len(mr.slots) == 4
    assert mr.slots[2] == ("pricerange", "moderate")


def test_parse_mr_no_slots():
    mr = parse_mr("goodbye()")
    assert mr.act_type == "goodbye"
    assert mr.slots == ()


def test_parse_mr_spaces_around_equals():
    mr = parse_mr("inform_nomatch(area = embarcadero, kidsallowed = yes, pricerange = expensive)")
    assert mr.act_type == "inform_nomatch"
    assert len(mr.slots) == 3
    assert mr.slots[0] == ("area", "embarcadero")


def test_parse_mr_value_with_spaces():
    mr = parse_mr("inform(name=the donatello, hasinternet)")
    assert mr.slots == (("name", "the donatello"), ("hasinternet", None))


def test_parse_mr_errors_carry_offsets():
    with pytest.raises(MRParseError) as err:
        parse_mr("inform(name=X")
    assert err.value.offset == len("inform(name=X")
    with pytest.raises(MRParseError) as err:
        parse_mr("(name=X)")
    assert err.value.offset == 0
    with pytest.raises(MRParseError):
        parse_mr("inform(name=X)(")
    with pytest.raises(MRParseError):
        parse_mr("inform(a=1, , b=2)")
    with pytest.raises(MRParseError):
        parse_mr("inform(a=(1))")


@given(names, st.lists(st.tuples(names, values), max_size=5))
def test_parse_serialize_round_trip(act, slots):
    mr = MeaningRepresentation(act, tuple(slots), raw="")
    parsed = parse_mr(mr.serialize())
    assert parsed.act_type == act
    assert parsed == mr


def test_mr_equality_is_slot_multiset():
    a = parse_mr("inform(x=1, y=2)")
    b = parse_mr("inform(y=2, x=1)")
    c = parse_mr("inform(x=1, y=2, y=2)")
    assert a == b
    assert a != c
    assert hash(a) == hash(b)


def test_is_inform_prefix():
    assert parse_mr("inform(a)").is_inform
    assert parse_mr("inform_nomatch(a)").is_inform
    assert not parse_mr("confirm(a)").is_inform


def test_median_rating_examples():
    assert median_rating(RatingTriple((4, 4, 4), "quality")) == 4
    assert median_rating(RatingTriple((2, 6, 5), "quality")) == 5
    assert median_rating(RatingTriple((1, 1, 6), "quality")) == 1


@given(st.permutations([2, 6, 5]))
def test_median_permutation_invariant(scores):
    assert RatingTriple(tuple(scores), "naturalness").median == 5


def test_rating_triple_validation():
    with pytest.raises(ValueError):
        RatingTriple((0, 3, 3), "quality")
    with pytest.raises(ValueError):
        RatingTriple((7, 3, 3), "quality")
    with pytest.raises(ValueError):
        RatingTriple((1, 2, 3), "sentiment")


def test_load_csv_and_json_bit_equivalent(fixtures_dir):
    csv_corpus = load_corpus(fixtures_dir / "corpus.csv")
    json_corpus = load_corpus(fixtures_dir / "corpus.json")
    assert len(csv_corpus) == 18
    assert csv_corpus.instances == json_corpus.instances


def test_load_preserves_source_order_and_fields(fixture_corpus):
    first = fixture_corpus.instances[0]
    assert first.instance_id == "r01a"
    assert first.dataset == "FixRest"
    assert first.references[1] == "X serves cheap chinese food."
    assert first.parse_score == 81.2
    missing_prs = [i for i in fixture_corpus if i.parse_score is None]
    assert {i.instance_id for i in missing_prs} == {"r06b", "h02a"}


def _rows(tmp_path, mutate):
    import csv as csvmod

    src = []
    with open("tests/fixtures/corpus.csv", newline="", encoding="utf-8") as fh:
        src = list(csvmod.reader(fh))
    mutate(src)
    path = tmp_path / "corpus.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        csvmod.writer(fh).writerows(src)
    return path


def test_load_rejects_out_of_range_rating(tmp_path):
    def mutate(rows):
        rows[3][7] = "7"  # inf_1 of the third data row

    path = _rows(tmp_path, mutate)
    with pytest.raises(CorpusLoadError) as err:
        load_corpus(path)
    assert err.value.row == 3
    assert "inf_1" in str(err.value)


def test_load_rejects_bad_mr(tmp_path):
    path = _rows(tmp_path, lambda rows: rows[1].__setitem__(4, "inform(name=X"))
    with pytest.raises(CorpusLoadError) as err:
        load_corpus(path)
    assert err.value.row == 1


def test_load_rejects_duplicate_ids(tmp_path):
    path = _rows(tmp_path, lambda rows: rows[2].__setitem__(0, "r01a"))
    with pytest.raises(CorpusLoadError) as err:
        load_corpus(path)
    assert "duplicate" in str(err.value)


def test_load_rejects_missing_column(tmp_path):
    def mutate(rows):
        for row in rows:
            del row[1]

    path = _rows(tmp_path, mutate)
    with pytest.raises(CorpusLoadError) as err:
        load_corpus(path)
    assert "pair_key" in str(err.value)


def test_lenient_skips_and_keeps_the_rest(tmp_path, caplog):
    path = _rows(tmp_path, lambda rows: rows[3].__setitem__(7, "9"))
    corpus = load_corpus(path, lenient=True)
    assert len(corpus) == 17


def test_scan_corpus_collects_all_issues(tmp_path):
    def mutate(rows):
        rows[3][7] = "0"            # bad rating drops r02b, orphaning r2
        rows[5][4] = "broken(("     # bad MR drops r03b, orphaning r3
        rows[7][1] = "r1"           # r04a joins r1 (3 members), orphaning r4

    path = _rows(tmp_path, mutate)
    corpus, issues = scan_corpus(path)
    assert len(issues) == 6
    assert any("row 3" in i for i in issues)
    assert any("row 5" in i for i in issues)
    for key in ("'r1'", "'r2'", "'r3'", "'r4'"):
        assert any(f"pair_key {key}" in i for i in issues)
    assert len(corpus) == 16


def test_scan_corpus_clean_fixture(fixtures_dir):
    corpus, issues = scan_corpus(fixtures_dir / "corpus.csv")
    assert issues == []
    assert len(corpus) == 18


def test_nfc_normalization(tmp_path):
    decomposed = "café"  # e + combining acute
    rec = {
        "instance_id": "n1", "pair_key": None, "dataset": "D", "system": "S",
        "mr": "inform(name=X)", "output": decomposed,
        "references": [decomposed],
        **{f"{d}_{i}": 4 for d in ("inf", "nat", "qual") for i in (1, 2, 3)},
        "parse_score": None,
    }
    path = tmp_path / "c.json"
    path.write_text(json.dumps([rec]), encoding="utf-8")
    corpus = load_corpus(path)
    assert corpus.instances[0].output == "café"
    assert corpus.instances[0].references[0] == "café"


def test_pair_groups_and_integrity(fixture_corpus):
    groups = fixture_corpus.pair_groups()
    assert len(groups) == 9
    assert all(len(v) == 2 for v in groups.values())
    assert fixture_corpus.integrity_issues() == []


def test_helper_loaders(fixtures_dir, tmp_path):
    table = load_embeddings(fixtures_dir / "embeddings.txt")
    assert table["cheap"].shape == (4,)
    bad = tmp_path / "bad.txt"
    bad.write_text("a 1 2\nb 1 2 3\n", encoding="utf-8")
    with pytest.raises(ValueError):
        load_embeddings(bad)

    syns = load_synonyms(fixtures_dir / "synonyms.txt")
    assert "inexpensive" in syns["cheap"]

    words = tmp_path / "words.txt"
    words.write_text("alpha\nbeta\n", encoding="utf-8")
    assert load_dictionary(words) == frozenset({"alpha", "beta"})
