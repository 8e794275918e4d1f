import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import fixture_path, h, t
from tashkil.db import (
    Analysis,
    build_db,
    dump_db,
    load_db,
    lookup,
    lookup_key,
    maximalize_analysis,
    validate_analysis,
)
from tashkil.errors import LoadError, RepairError, ValidationError
from tashkil.script import ALIF, ALIF_WASLA, dediacritize, externalize, split_flags
from tashkil.wellformed import check_word


def row(*cols):
    return "\t".join(cols)


def test_empty_file_gives_empty_db():
    db = load_db([])
    assert len(db) == 0 and db.analysis_count == 0
    assert lookup(db, h("ktb")) == []


def test_header_and_flagged_row():
    db = load_db(["# version: 7", "# source: test", row("mn", "min.%n", "min_1", "prep", "pos=prep", "-1.0", "-2.0")], hsb=True)
    assert db.version == "7" and db.source == "test"
    (a,) = db.lookup(h("mn"))
    assert a.flags == ("n",)
    assert t(a.base) == "min."
    assert a.feature_map == {"pos": "prep"}


def test_fixture_lookup(db):
    forms = [t(a.diac_internal) for a in lookup(db, h("mn"))]
    assert forms[0] == "min.%n"
    assert {"man.", "man~a", "man~ũ"} <= set(forms)
    # diacritics on the query are ignored, and so is a Wasla
    assert lookup(db, h("mina")) == lookup(db, h("mn"))
    assert lookup(db, h("Äal.yaw.ma")) == lookup(db, h("Alywm"))
    assert lookup(db, h("qwzH")) == []


def test_lookup_key():
    assert lookup_key(h("Aal.yaw.ma")) == h("Alywm")
    assert lookup_key(h("Äal.yaw.ma")) == h("Alywm")


def test_key_mismatch_is_rejected():
    with pytest.raises(ValidationError):
        load_db([row("ktb", "darasa", "l", "verb", "_", "0", "0")], hsb=True)
    with pytest.raises(ValidationError):
        validate_analysis(Analysis(h("kataba"), "l", "verb"), h("kataba"))


def test_ill_formed_analysis_is_rejected():
    with pytest.raises(ValidationError):
        load_db([row("ktb", "ktb", "l", "verb", "_", "0", "0")], hsb=True)


def test_bad_row_reports_line_number():
    lines = ["# version: 1", row("ktb", "kataba", "l", "verb", "_", "0", "0"), "ktb\tkataba"]
    with pytest.raises(LoadError) as info:
        load_db(lines, hsb=True)
    assert info.value.line_no == 3
    with pytest.raises(LoadError):
        load_db([row("ktb", "kataba", "l", "verb", "_", "zero", "0")], hsb=True)
    with pytest.raises(LoadError):
        load_db([row("ktb", "kataba", "l", "verb", "asp", "0", "0")], hsb=True)


def test_exact_duplicates_are_dropped():
    r = row("ktb", "kataba", "l", "verb", "_", "0.0", "0.0")
    assert load_db([r, r], hsb=True).analysis_count == 1


def test_round_trip_is_byte_identical(db):
    with open(fixture_path("db.tsv"), encoding="utf-8") as f:
        assert dump_db(db, hsb=True) == f.read()
    assert load_db(dump_db(db).splitlines()) == db


def test_build_db_validates():
    a = Analysis(h("kataba"), "katab_1", "verb", (("asp", "p"),), -1.0, -2.0)
    db = build_db([(h("ktb"), a), (h("ktb"), a)], version="x")
    assert db.analysis_count == 1 and db.version == "x"
    with pytest.raises(ValidationError):
        build_db([(h("drs"), a)])


@pytest.mark.parametrize(
    "atb, expected",
    [
        ("Als~ATiEaħu", "Äals~aATiςaħu"),
        ("Alγarbi", "Äal.γar.bi"),
        ("kitAbAã", "kitaAbãA"),
        ("hum%m", "hum.%m"),
        ("Alš~amsu", "Äalš~am.su"),
    ],
)
def test_maximalize_examples(atb, expected):
    assert t(maximalize_analysis(h(atb))) == expected


def test_maximalize_rejects_unrepairable():
    with pytest.raises(RepairError):
        maximalize_analysis(h("ktb"))


def test_maximalize_may_leave_final_letter_bare():
    assert t(maximalize_analysis(h("bayt"), omit_final_sukun=True)) == "bay.t"


def _fixture_forms():
    db = load_db(fixture_path("db.tsv"), hsb=True)
    return sorted({a.diac_internal for rows in db.entries.values() for a in rows})


FORMS = _fixture_forms()


@given(st.sampled_from(FORMS))
def test_maximalize_is_idempotent_on_stored_forms(form):
    assert maximalize_analysis(form) == form


@given(st.sampled_from(FORMS), st.data())
def test_maximalize_restores_dropped_sukuns(form, data):
    base, flags = split_flags(form)
    sukun = "ْ"
    positions = [i for i, c in enumerate(base) if c == sukun]
    drop = set(data.draw(st.lists(st.sampled_from(positions), unique=True))) if positions else set()
    atb = "".join(c for i, c in enumerate(base) if i not in drop).replace(ALIF_WASLA, ALIF)
    atb += "".join("%" + f for f in flags)
    out = maximalize_analysis(atb)
    assert dediacritize(externalize(split_flags(out)[0])) == dediacritize(externalize(base))
    assert check_word(externalize(split_flags(out)[0]), at_context_start=True).ok
