"""Candidate ranking: a feature-match baseline and an edit-distance re-ranker.

Edits transform the input word into the candidate. An insertion adds a
character the input lacks, a deletion removes one the input has. So an
undiacritized input costs only insertions, and a fully diacritized input
that equals a candidate costs nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .db import Analysis
from .errors import EmptyCandidates
from .script import ALIF_WASLA, externalize, normalize, strip_flags

DEFAULT_COUNTED_FEATURES = ("pos", "asp", "cas", "gen", "mod", "num", "per", "stt", "vox")

PREDICTION_SOURCES = ("null", "gold", "external")


@dataclass(frozen=True)
class FeaturePrediction:
    features: Mapping[str, str] = field(default_factory=dict)
    source: str = "null"

    def __post_init__(self):
        if self.source not in PREDICTION_SOURCES:
            raise ValueError(f"unknown prediction source {self.source!r}")
        if self.source == "null" and self.features:
            raise ValueError("a null prediction carries no features")

    @classmethod
    def null(cls) -> "FeaturePrediction":
        return cls({}, "null")


NULL_PREDICTION = FeaturePrediction.null()


@dataclass(frozen=True)
class EditProfile:
    insertions: int = 0
    substitutions: int = 0
    deletions: int = 0

    @property
    def total(self) -> int:
        return self.insertions + self.substitutions + self.deletions

    @property
    def sd(self) -> int:
        return self.substitutions + self.deletions

    def __iter__(self):
        return iter((self.insertions, self.substitutions, self.deletions))


def _distance_table(a: Sequence[str], b: Sequence[str]) -> list[list[int]]:
    n, m = len(a), len(b)
    d = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        d[i][0] = i
    for j in range(m + 1):
        d[0][j] = j
    for i in range(1, n + 1):
        row, up = d[i], d[i - 1]
        ai = a[i - 1]
        for j in range(1, m + 1):
            row[j] = min(up[j - 1] + (ai != b[j - 1]), up[j] + 1, row[j - 1] + 1)
    return d


def align(a: Sequence[str], b: Sequence[str]) -> EditProfile:
    """Levenshtein counts for turning ``a`` into ``b``.

    The backtrace runs from the end and, among moves consistent with a
    minimal alignment, prefers match, then substitution, then deletion,
    then insertion.
    """
    d = _distance_table(a, b)
    i, j = len(a), len(b)
    ins = sub = dele = 0
    while i or j:
        here = d[i][j]
        if i and j and a[i - 1] == b[j - 1] and d[i - 1][j - 1] == here:
            i, j = i - 1, j - 1
        elif i and j and d[i - 1][j - 1] + 1 == here:
            sub += 1
            i, j = i - 1, j - 1
        elif i and d[i - 1][j] + 1 == here:
            dele += 1
            i -= 1
        else:
            ins += 1
            j -= 1
    return EditProfile(ins, sub, dele)


def edit_profile(input_word: str, candidate: str) -> EditProfile:
    """Edit counts between a normalized input and a normalized candidate.

    The candidate has its flags stripped and an internal Wasla written as
    a plain Alif (vowel kept).
    """
    cand = externalize(strip_flags(candidate))
    return align(normalize(input_word), normalize(cand))


def candidate_profile(input_word: str, diac_internal: str) -> EditProfile:
    """Best profile over the ways the candidate can surface.

    A Wasla-initial candidate appears with its vowel at the start of a
    context and without it elsewhere; the input may have been written
    either way.
    """
    base = strip_flags(diac_internal)
    forms = [externalize(base)]
    if base.startswith(ALIF_WASLA):
        forms.append(externalize(base, keep_vowel=False))
    inp = normalize(input_word)
    profiles = [align(inp, normalize(f)) for f in forms]
    return min(profiles, key=lambda p: (p.sd, p.total, p.substitutions, p.insertions))


def match_count(a: Analysis, prediction: FeaturePrediction | None, counted: Iterable[str] = DEFAULT_COUNTED_FEATURES) -> int:
    if prediction is None or not prediction.features:
        return 0
    fm = a.feature_map
    pf = prediction.features
    return sum(1 for f in counted if f in pf and f in fm and pf[f] == fm[f])


def _tiebreak(a: Analysis) -> tuple:
    return (a.diac_internal, a.lemma, a.pos, a.features, a.lemma_logprob, a.pos_lemma_logprob)


def base_key(a: Analysis, prediction=None, counted=DEFAULT_COUNTED_FEATURES) -> tuple:
    m = match_count(a, prediction, counted)
    return (-m, -a.pos_lemma_logprob, -a.lemma_logprob) + _tiebreak(a)


def extended_key(a: Analysis, prediction, input_word: str, counted=DEFAULT_COUNTED_FEATURES) -> tuple:
    p = candidate_profile(input_word, a.diac_internal)
    m = match_count(a, prediction, counted)
    exact = 0 if p.total == 0 else 1
    return (
        exact,
        p.sd,
        -m,
        p.substitutions,
        p.deletions,
        -a.pos_lemma_logprob,
        -a.lemma_logprob,
        p.insertions,
    ) + _tiebreak(a)


def rank_base(analyses: Sequence[Analysis], prediction: FeaturePrediction | None = None, counted=DEFAULT_COUNTED_FEATURES) -> list[Analysis]:
    """Most matched features first, then higher probabilities, then text."""
    if not analyses:
        raise EmptyCandidates()
    return sorted(analyses, key=lambda a: base_key(a, prediction, counted))


def rank_extended(
    analyses: Sequence[Analysis],
    prediction: FeaturePrediction | None,
    input_word: str,
    counted=DEFAULT_COUNTED_FEATURES,
) -> list[Analysis]:
    """Re-rank by agreement with the diacritics already present in the input.

    An exact match always comes first. Otherwise fewer substitutions plus
    deletions wins, then the baseline criteria, with substitutions costing
    more than deletions and insertions only breaking ties.
    """
    if not analyses:
        raise EmptyCandidates()
    return sorted(analyses, key=lambda a: extended_key(a, prediction, input_word, counted))
