"""Corpus-level diacritic usage statistics.

Counting happens in an integer ``StatsAccumulator`` that merges
associatively, so a corpus can be scanned in shards; every ratio is derived
once in ``finalize``.
"""

from __future__ import annotations

import statistics
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Sequence

from .errors import TashkilError
from .script import (
    ALIF,
    ALIF_MAQSURA,
    DIACRITICS,
    Diacritic,
    diacritic_profile,
    has_diacritic,
    segment,
)
from .tokens import context_windows, tokenize
from .wellformed import check_context, is_maximally_diacritized


class NotComputable(TashkilError, ValueError):
    """Correlation is undefined (a distribution has zero variance)."""


@dataclass(frozen=True)
class StatsAccumulator:
    lines: int = 0
    lines_with_diac: int = 0
    words: int = 0
    diac_words: int = 0
    maximal_words: int = 0
    wellformed_diac_words: int = 0
    mark_counts: tuple[int, ...] = (0,) * 9
    tanwiyn_before_alif: int = 0
    tanwiyn_after_alif: int = 0
    shadda_first: int = 0
    vowel_first: int = 0

    def __add__(self, other: "StatsAccumulator") -> "StatsAccumulator":
        return merge(self, other)


def merge(a: StatsAccumulator, b: StatsAccumulator) -> StatsAccumulator:
    values = {}
    for f in fields(StatsAccumulator):
        x, y = getattr(a, f.name), getattr(b, f.name)
        values[f.name] = tuple(p + q for p, q in zip(x, y)) if isinstance(x, tuple) else x + y
    return StatsAccumulator(**values)


@dataclass(frozen=True)
class CorpusStats:
    line_count: int
    word_count: int
    pct_lines_with_diac: float
    pct_words_with_diac: float
    diacs_per_diac_word: float
    pct_maximal_words: float
    diac_distribution: dict[str, float]
    pct_wellformed_of_diac_words: float
    tanwiyn_alif_order: dict[str, float]
    shadda_vowel_order: dict[str, float]
    diacritic_count: int
    tanwiyn_alif_sites: int
    shadda_vowel_sites: int
    empty: bool

    def to_dict(self) -> dict:
        return asdict(self)


def _pct(part: int, whole: int) -> float:
    return 100.0 * part / whole if whole else 0.0


def _order_sites(word: str) -> tuple[int, int, int, int]:
    """(tanwiyn before alif, after alif, shadda first, vowel first) in raw order."""
    dw = segment(word)
    before = after = s_first = v_first = 0
    for _, cl in dw.segments:
        if not cl.shadda:
            continue
        vi = [k for k, d in enumerate(cl.raw) if d.is_short_vowel or d.is_tanwiyn]
        if vi:
            if cl.raw.index(Diacritic.SHADDA) < vi[0]:
                s_first += 1
            else:
                v_first += 1
    segs = dw.segments
    if len(segs) >= 2 and segs[-1][0] in (ALIF, ALIF_MAQSURA):
        if Diacritic.FATHATAN in segs[-1][1]:
            after += 1
        elif Diacritic.FATHATAN in segs[-2][1]:
            before += 1
    return before, after, s_first, v_first


def accumulate_line(line: str) -> StatsAccumulator:
    tokens = tokenize(line)
    words = maximal = diac_words = wellformed = 0
    marks = [0] * 9
    tb = ta = sf = vf = 0
    for window in context_windows(tokens):
        texts = [tokens[i].text for i in window]
        strict = check_context(texts, complete=True)
        lenient = check_context(texts, complete=False)
        last = len(texts) - 1
        for k, w in enumerate(texts):
            words += 1
            if not has_diacritic(w):
                continue
            diac_words += 1
            if strict[k].ok and is_maximally_diacritized(w, k == 0, k == last):
                maximal += 1
            if lenient[k].ok:
                wellformed += 1
            prof = diacritic_profile(w)
            for j, d in enumerate(DIACRITICS):
                marks[j] += prof[d]
            b, a, s, v = _order_sites(w)
            tb, ta, sf, vf = tb + b, ta + a, sf + s, vf + v
    return StatsAccumulator(
        lines=1,
        lines_with_diac=1 if diac_words else 0,
        words=words,
        diac_words=diac_words,
        maximal_words=maximal,
        wellformed_diac_words=wellformed,
        mark_counts=tuple(marks),
        tanwiyn_before_alif=tb,
        tanwiyn_after_alif=ta,
        shadda_first=sf,
        vowel_first=vf,
    )


def accumulate(lines: Iterable[str]) -> StatsAccumulator:
    acc = StatsAccumulator()
    for line in lines:
        acc = merge(acc, accumulate_line(line.rstrip("\r\n")))
    return acc


def finalize(acc: StatsAccumulator) -> CorpusStats:
    total = sum(acc.mark_counts)
    dist = {d.label: (c / total if total else 0.0) for d, c in zip(DIACRITICS, acc.mark_counts)}
    tsites = acc.tanwiyn_before_alif + acc.tanwiyn_after_alif
    ssites = acc.shadda_first + acc.vowel_first
    return CorpusStats(
        line_count=acc.lines,
        word_count=acc.words,
        pct_lines_with_diac=_pct(acc.lines_with_diac, acc.lines),
        pct_words_with_diac=_pct(acc.diac_words, acc.words),
        diacs_per_diac_word=total / acc.diac_words if acc.diac_words else 0.0,
        pct_maximal_words=_pct(acc.maximal_words, acc.words),
        diac_distribution=dist,
        pct_wellformed_of_diac_words=_pct(acc.wellformed_diac_words, acc.diac_words),
        tanwiyn_alif_order={
            "before": _pct(acc.tanwiyn_before_alif, tsites),
            "after": _pct(acc.tanwiyn_after_alif, tsites),
        },
        shadda_vowel_order={
            "shadda_first": _pct(acc.shadda_first, ssites),
            "vowel_first": _pct(acc.vowel_first, ssites),
        },
        diacritic_count=total,
        tanwiyn_alif_sites=tsites,
        shadda_vowel_sites=ssites,
        empty=total == 0,
    )


def analyze_corpus(lines: Iterable[str]) -> CorpusStats:
    return finalize(accumulate(lines))


def distribution_vector(dist: dict[str, float] | Sequence[float]) -> list[float]:
    if isinstance(dist, dict):
        return [float(dist[d.label]) for d in DIACRITICS]
    vec = [float(x) for x in dist]
    if len(vec) != 9:
        raise ValueError(f"expected 9 relative frequencies, got {len(vec)}")
    return vec


def correlate(a: dict[str, float] | Sequence[float], b: dict[str, float] | Sequence[float]) -> float:
    """Pearson correlation of two nine-mark distributions."""
    x, y = distribution_vector(a), distribution_vector(b)
    try:
        return statistics.correlation(x, y)
    except statistics.StatisticsError as exc:
        raise NotComputable(str(exc)) from None
