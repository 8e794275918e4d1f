"""Well-formedness of maximal diacritization, per word and per context.

A word is an optional starting pattern (conjunction, preposition, definite
article or Alif Wasla), one or more middle units (a letter with its cluster,
or a long vowel), and an optional ending (Tanwiyn, Waw of plurality).
Checks run on the raw word so ordering errors stay visible; the grammar
itself is applied to the canonical clusters, which keeps an ordering error
from cascading into unrelated codes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

from .script import (
    ALIF,
    ALIF_HAMZA_ABOVE,
    ALIF_MADDA,
    ALIF_MAQSURA,
    ALIFS,
    BA,
    FA,
    HAMZA,
    KAF,
    LAM,
    TA_MARBUTA,
    TATWEEL,
    WAW,
    YA,
    DiacCluster,
    Diacritic,
    DiacWord,
    ScriptTables,
    canonical_segments,
    default_tables,
    from_hsb,
    has_arabic_letter,
    is_arabic_letter,
    normalize,
    segment,
)


class ViolationCode(enum.Enum):
    SHADDA_ORDER = "ShaddaOrder"
    TANWIYN_ORDER = "TanwiynOrder"
    INCOMPATIBLE_CLUSTER = "IncompatibleCluster"
    WORD_INITIAL_DIACRITIC = "WordInitialDiacritic"
    BARE_LETTER_NOT_ALLOWED = "BareLetterNotAllowed"
    MISSING_CLUSTER_ON_LETTER = "MissingClusterOnLetter"
    INVALID_START_PATTERN = "InvalidStartPattern"
    INVALID_ENDING_PATTERN = "InvalidEndingPattern"
    DOUBLE_SUKUN = "DoubleSukun"
    SUKUN_BEFORE_SHADDA = "SukunBeforeShadda"
    CONTEXT_FINAL_SUKUN_BEFORE_WASLA = "ContextFinalSukunBeforeWasla"
    WASLA_MISSING_INITIAL_VOWEL = "WaslaMissingInitialVowel"
    UNKNOWN_EXCEPTION = "UnknownException"

    def __str__(self) -> str:
        return self.value


# Codes that say a diacritic is absent rather than wrong.
COMPLETENESS_CODES = frozenset(
    {
        ViolationCode.BARE_LETTER_NOT_ALLOWED,
        ViolationCode.MISSING_CLUSTER_ON_LETTER,
        ViolationCode.WASLA_MISSING_INITIAL_VOWEL,
    }
)


@dataclass(frozen=True)
class Violation:
    code: ViolationCode
    index: int  # segment index; -1 for the orphan cluster

    def __str__(self) -> str:
        return f"{self.code.value}@{self.index}"


@dataclass(frozen=True)
class WellFormedVerdict:
    word: str
    violations: tuple[Violation, ...] = ()
    applicable: bool = True

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def codes(self) -> frozenset[ViolationCode]:
        return frozenset(v.code for v in self.violations)

    def code_list(self) -> list[str]:
        """Distinct codes, in order of first occurrence."""
        seen: dict[str, None] = {}
        for v in self.violations:
            seen.setdefault(v.code.value, None)
        return list(seen)


@dataclass(frozen=True)
class ContextWindow:
    """Words between two delimiters (punctuation or a sentence boundary)."""

    words: tuple[str, ...]
    delimiters: tuple[str, str] = ("", "")


@lru_cache(maxsize=None)
def default_exceptions() -> frozenset[str]:
    text = resources.files("tashkil.data").joinpath("exceptions.txt").read_text("utf-8")
    return load_exceptions(text.splitlines())


def load_exceptions(lines: Iterable[str], hsb: bool = True) -> frozenset[str]:
    words = set()
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        words.add(normalize(from_hsb(line) if hsb else line))
    return frozenset(words)


# -- segment helpers ---------------------------------------------------------

Seg = tuple[str, DiacCluster]


def _is(cl: DiacCluster, *marks: Diacritic) -> bool:
    return cl.raw == marks


def _short_vowel(cl: DiacCluster) -> Diacritic | None:
    """The short vowel a long-vowel letter could extend, if any."""
    if cl.dagger or not cl.compatible:
        return None
    v = cl.vowel
    return v if v is not None and v.is_short_vowel else None


def _tanwiyn(cl: DiacCluster) -> Diacritic | None:
    v = cl.vowel
    return v if v is not None and v.is_tanwiyn else None


def _sukun(cl: DiacCluster) -> bool:
    return Diacritic.SUKUN in cl.raw


@dataclass
class _Shape:
    """Where the starting pattern puts a Wasla and an article lam."""

    proclitics: int = 0
    wasla_slots: set[int] = field(default_factory=set)
    article_lams: set[int] = field(default_factory=set)


def _shape(segs: Sequence[Seg]) -> _Shape:
    n = len(segs)
    j = 0
    if n > 1 and segs[0][0] in (WAW, FA) and _is(segs[0][1], Diacritic.FATHA):
        j = 1
    prep_li = False
    if n > j + 1:
        letter, cl = segs[j]
        if (
            (letter == BA and _is(cl, Diacritic.KASRA))
            or (letter == KAF and _is(cl, Diacritic.FATHA))
            or (letter == LAM and _is(cl, Diacritic.KASRA))
        ):
            prep_li = letter == LAM
            j += 1
    shape = _Shape(proclitics=j, wasla_slots={0} | ({j} if j else set()))
    for w in shape.wasla_slots:
        if w + 1 < n and segs[w][0] in ALIFS and segs[w + 1][0] == LAM:
            shape.article_lams.add(w + 1)
    if prep_li and segs[j][0] == LAM:
        # li + article: the article's Alif is not written.
        shape.article_lams.add(j)
    return shape


def _bare_status(
    segs: Sequence[Seg], i: int, shape: _Shape, tables: ScriptTables
) -> tuple[bool, ViolationCode | None]:
    """Whether a bare letter is licensed; returns (is_long_vowel, code)."""
    n = len(segs)
    letter = segs[i][0]
    prev = segs[i - 1][1] if i > 0 else None
    pv = _short_vowel(prev) if prev is not None else None
    last = i == n - 1

    if letter in ALIFS:
        if i in shape.wasla_slots:
            return False, None
        if pv is Diacritic.FATHA:
            return True, None
        if last and prev is not None and _tanwiyn(prev) is Diacritic.FATHATAN:
            return True, None
        if last and i >= 2 and segs[i - 1][0] == WAW:
            pp = _short_vowel(segs[i - 2][1])
            if not prev and pp is Diacritic.DAMMA:
                return True, None
            if _is(prev, Diacritic.SUKUN) and pp is Diacritic.FATHA:
                return False, None
        return False, ViolationCode.BARE_LETTER_NOT_ALLOWED
    if letter == WAW:
        if pv is Diacritic.DAMMA:
            return True, None
        return False, ViolationCode.BARE_LETTER_NOT_ALLOWED
    if letter == YA:
        if pv is Diacritic.KASRA:
            return True, None
        return False, ViolationCode.BARE_LETTER_NOT_ALLOWED
    if letter == ALIF_MAQSURA:
        if last and (pv is Diacritic.FATHA or (prev is not None and _tanwiyn(prev) is Diacritic.FATHATAN)):
            return True, None
        return False, ViolationCode.BARE_LETTER_NOT_ALLOWED
    if letter == ALIF_MADDA:
        return True, None
    if letter == TATWEEL:
        return False, None
    if letter == LAM and i in shape.article_lams:
        if i + 1 < n and segs[i + 1][0] in tables.sun and segs[i + 1][1].shadda:
            return False, None
        return False, ViolationCode.INVALID_START_PATTERN
    return False, ViolationCode.MISSING_CLUSTER_ON_LETTER


def _tanwiyn_needs_alif(segs: Sequence[Seg], i: int) -> bool:
    letter = segs[i][0]
    if letter in (TA_MARBUTA, ALIF_HAMZA_ABOVE):
        return False
    if letter == HAMZA and i > 0 and segs[i - 1][0] == ALIF and not segs[i - 1][1]:
        return False
    return True


def _cluster_status(segs: Sequence[Seg], i: int, shape: _Shape) -> ViolationCode | None:
    n = len(segs)
    letter, cl = segs[i]
    if not cl.compatible:
        return ViolationCode.INCOMPATIBLE_CLUSTER
    if letter in ALIFS:
        if i in shape.wasla_slots and i == 0 and cl.vowel is not None and cl.vowel.is_short_vowel and len(cl.raw) == 1:
            return None
        if i == 0:
            return ViolationCode.INVALID_START_PATTERN
        return ViolationCode.INCOMPATIBLE_CLUSTER
    if cl.shadda and _sukun(cl):
        return ViolationCode.INCOMPATIBLE_CLUSTER
    if cl.raw == (Diacritic.SHADDA,):
        # Shadda needs a vowel (or a dagger alif) to go with it.
        return ViolationCode.INCOMPATIBLE_CLUSTER
    t = _tanwiyn(cl)
    if t is None:
        return None
    if t is Diacritic.FATHATAN and _tanwiyn_needs_alif(segs, i):
        if i == n - 2 and segs[i + 1][0] in (ALIF, ALIF_MAQSURA) and not segs[i + 1][1]:
            return None
        return ViolationCode.INVALID_ENDING_PATTERN
    return None if i == n - 1 else ViolationCode.INVALID_ENDING_PATTERN


def ends_with_vowel(segs: Sequence[Seg], tables: ScriptTables | None = None) -> bool:
    """True when the last letter carries a vowel or is a long-vowel letter."""
    if not segs:
        return False
    tables = tables or default_tables()
    cl = segs[-1][1]
    v = cl.vowel
    if v is not None and v is not Diacritic.SUKUN:
        return True
    if not cl:
        is_long, code = _bare_status(segs, len(segs) - 1, _shape(segs), tables)
        return is_long and code is None
    return False


def _grammar_segments(dw: DiacWord) -> tuple[list[Seg], list[int]]:
    segs = canonical_segments(dw)
    kept = [(i, s) for i, s in enumerate(segs) if not (s[0] == TATWEEL and not s[1])]
    return [s for _, s in kept], [i for i, _ in kept]


def _wasla_initial(dw: DiacWord) -> bool:
    return bool(dw.segments) and dw.segments[0][0] in ALIFS


def check_word(
    word: str | DiacWord,
    at_context_start: bool = False,
    at_context_end: bool = False,
    *,
    complete: bool = True,
    exceptions: frozenset[str] | None = None,
    tables: ScriptTables | None = None,
) -> WellFormedVerdict:
    """Validate one word.

    ``complete=True`` checks maximal diacritization: unlicensed bare letters
    are violations. ``complete=False`` only reports diacritics that are
    present and wrong, which is the useful reading for partially
    diacritized text.
    """
    dw = word if isinstance(word, DiacWord) else segment(word)
    text = dw.serialize()
    if not has_arabic_letter(text):
        return WellFormedVerdict(text, applicable=False)
    tables = tables or default_tables()
    exceptions = default_exceptions() if exceptions is None else exceptions
    is_exception = normalize(text) in exceptions

    found: dict[tuple[ViolationCode, int], None] = {}

    def add(code: ViolationCode, index: int) -> None:
        if complete or code not in COMPLETENESS_CODES:
            found.setdefault((code, index), None)

    if dw.initial_orphan:
        add(ViolationCode.WORD_INITIAL_DIACRITIC, -1)

    for i, (letter, cl) in enumerate(dw.segments):
        if not is_arabic_letter(letter):
            add(ViolationCode.UNKNOWN_EXCEPTION, i)
        if not cl:
            continue
        if not cl.compatible:
            add(ViolationCode.INCOMPATIBLE_CLUSTER, i)
        elif cl.shadda and cl.raw[0] is not Diacritic.SHADDA:
            add(ViolationCode.SHADDA_ORDER, i)
        elif not cl.canonical_order:
            add(ViolationCode.INCOMPATIBLE_CLUSTER, i)

    n_raw = len(dw.segments)
    if n_raw >= 2:
        last, lcl = dw.segments[-1]
        if last in (ALIF, ALIF_MAQSURA) and Diacritic.FATHATAN in lcl:
            add(ViolationCode.TANWIYN_ORDER, n_raw - 1)

    segs, index_map = _grammar_segments(dw)
    if is_exception:
        segs, index_map = [], []
    shape = _shape(segs)
    n = len(segs)
    for k, (letter, cl) in enumerate(segs):
        i = index_map[k]
        if letter == TATWEEL or not is_arabic_letter(letter):
            continue
        if cl:
            code = _cluster_status(segs, k, shape)
        else:
            _, code = _bare_status(segs, k, shape, tables)
            if code is not None and not complete and code is not ViolationCode.INVALID_ENDING_PATTERN:
                code = None
        if code is not None:
            add(code, i)

    for k in range(n - 1):
        a, b = segs[k][1], segs[k + 1][1]
        if not (_sukun(a) and not a.shadda):
            continue
        if at_context_end and k + 1 == n - 1:
            continue
        if _sukun(b) and not b.shadda:
            add(ViolationCode.DOUBLE_SUKUN, index_map[k + 1])
        elif b.shadda:
            add(ViolationCode.SUKUN_BEFORE_SHADDA, index_map[k + 1])

    if at_context_start and _wasla_initial(dw) and segs:
        first = segs[0][1]
        if first.vowel is None or not first.vowel.is_short_vowel:
            add(ViolationCode.WASLA_MISSING_INITIAL_VOWEL, index_map[0])

    violations = tuple(Violation(c, i) for c, i in found)
    return WellFormedVerdict(text, violations)


def check_context(
    window: ContextWindow | Sequence[str],
    *,
    complete: bool = True,
    exceptions: frozenset[str] | None = None,
    tables: ScriptTables | None = None,
) -> list[WellFormedVerdict]:
    """Validate every word of a context window, including the two
    cross-word rules on Alif Wasla."""
    words = window.words if isinstance(window, ContextWindow) else tuple(window)
    tables = tables or default_tables()
    arabic = [i for i, w in enumerate(words) if has_arabic_letter(w)]
    first = arabic[0] if arabic else -1
    final = arabic[-1] if arabic else -1
    verdicts: list[WellFormedVerdict] = []
    for pos, w in enumerate(words):
        v = check_word(
            w,
            at_context_start=pos == first,
            at_context_end=pos == final,
            complete=complete,
            exceptions=exceptions,
            tables=tables,
        )
        if v.applicable:
            nxt = next((j for j in arabic if j > pos), None)
            if nxt is not None and _wasla_initial(segment(words[nxt])):
                dw = segment(w)
                segs, index_map = _grammar_segments(dw)
                if segs:
                    last_cl = segs[-1][1]
                    missing = not ends_with_vowel(segs, tables)
                    if not complete:
                        missing = _sukun(last_cl)
                    if missing:
                        code = Violation(ViolationCode.CONTEXT_FINAL_SUKUN_BEFORE_WASLA, index_map[-1])
                        if code not in v.violations:
                            v = WellFormedVerdict(v.word, v.violations + (code,))
        verdicts.append(v)
    return verdicts


def bare_letter_licensed(word: str | DiacWord, index: int, tables: ScriptTables | None = None) -> bool:
    """Whether the bare letter at ``index`` may stay bare under maximal diacritization."""
    dw = word if isinstance(word, DiacWord) else segment(word)
    segs = canonical_segments(dw)
    _, code = _bare_status(segs, index, _shape(segs), tables or default_tables())
    return code is None


def is_maximally_diacritized(
    word: str | DiacWord,
    at_context_start: bool = False,
    at_context_end: bool = False,
    **kwargs,
) -> bool:
    dw = word if isinstance(word, DiacWord) else segment(word)
    if not dw.segments or not has_arabic_letter(dw.serialize()):
        return False
    verdict = check_word(dw, at_context_start, at_context_end, complete=True, **kwargs)
    if not verdict.ok:
        return False
    if normalize(dw.serialize()) in (kwargs.get("exceptions") or default_exceptions()):
        return True
    return all(cl or bare_letter_licensed(dw, i, kwargs.get("tables")) for i, (_, cl) in enumerate(dw.segments))
