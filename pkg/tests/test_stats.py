import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import fixture_path, h, read_hsb_lines
from oracles import pearson
from tashkil.stats import (
    NotComputable,
    StatsAccumulator,
    accumulate,
    accumulate_line,
    analyze_corpus,
    correlate,
    finalize,
    merge,
)
from test_script import arabic_text

# The expected values in stats_expected.json were tallied by hand:
#   line 2 is the fully maximal sentence (6 words, all maximal, 25 marks);
#   line 4 has kat~ab (ok), kata~b (ShaddaOrder), kitAbAã (TanwiynOrder),
#     kitAbãA (ok), none maximal;
#   line 5 has three windows; ĩktAb and min. (before Ab.nihi) fail, the
#     other four words are maximal;
#   line 9 has two maximal words, one with a Dagger Alif;
#   the other five lines (one empty) carry no marks.
CORPUS = read_hsb_lines("stats_corpus.hsb.txt")


def test_hand_counted_fixture():
    with open(fixture_path("stats_expected.json"), encoding="utf-8") as f:
        expected = json.load(f)
    assert analyze_corpus(CORPUS).to_dict() == expected


def test_empty_corpus():
    s = analyze_corpus([])
    assert s.empty and s.word_count == 0 and s.diacritic_count == 0
    assert set(s.diac_distribution.values()) == {0.0}


def test_single_word():
    s = analyze_corpus([h("kat~ab")])
    assert s.pct_words_with_diac == 100.0
    assert s.diacs_per_diac_word == 3.0
    assert s.shadda_vowel_order["shadda_first"] == 100.0


def test_four_way_sharding_is_exact():
    whole = analyze_corpus(CORPUS)
    k = len(CORPUS)
    cuts = [0, k // 4, k // 2, 3 * k // 4, k]
    shards = [accumulate(CORPUS[a:b]) for a, b in zip(cuts, cuts[1:])]
    acc = StatsAccumulator()
    for sh in shards:
        acc = merge(acc, sh)
    assert finalize(acc) == whole


def test_correlation_examples():
    d = [0.5, 0.2, 0.1, 0.1, 0.05, 0.05, 0.0, 0.0, 0.0]
    assert correlate(d, d) == pytest.approx(1.0)
    a = (0.9, 0.1) + (0.0,) * 7
    b = (0.1, 0.9) + (0.0,) * 7
    assert correlate(a, b) == pytest.approx(31 / 319, abs=1e-12)
    assert correlate(a, b) == pytest.approx(pearson(a, b), abs=1e-12)
    with pytest.raises(NotComputable):
        correlate([1 / 9] * 9, a)


def test_correlate_accepts_distributions():
    s = analyze_corpus(CORPUS)
    assert correlate(s.diac_distribution, s.diac_distribution) == pytest.approx(1.0)


line_st = st.lists(arabic_text, max_size=5).map(" ".join)


@given(st.lists(line_st, max_size=6))
def test_merge_identity_and_commutativity(lines):
    x = accumulate(lines)
    y = accumulate(reversed(lines))
    assert merge(x, StatsAccumulator()) == x
    assert merge(x, y) == merge(y, x)
    assert x == y


@given(st.lists(line_st, max_size=6))
def test_bounds(lines):
    s = analyze_corpus(lines)
    for v in (s.pct_lines_with_diac, s.pct_words_with_diac, s.pct_maximal_words, s.pct_wellformed_of_diac_words):
        assert 0.0 <= v <= 100.0
    assert s.pct_maximal_words <= s.pct_words_with_diac
    if s.pct_words_with_diac > 0:
        assert s.diacs_per_diac_word >= 1
    if not s.empty:
        assert sum(s.diac_distribution.values()) == pytest.approx(1.0)


@given(st.lists(line_st, min_size=1, max_size=6), st.data())
def test_any_split_matches_whole(lines, data):
    cut = data.draw(st.integers(0, len(lines)))
    assert merge(accumulate(lines[:cut]), accumulate(lines[cut:])) == accumulate(lines)


def test_accumulate_line_counts_one_line():
    assert accumulate_line("").lines == 1
