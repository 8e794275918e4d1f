"""End-to-end diacritization of lines and the word-accuracy scorer."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Protocol, Sequence

from .context import ContextMode, RuleSet, apply_context_edits, default_rules
from .db import Analysis, AnalysisDb, lookup, lookup_key
from .errors import AlignmentError, EmptyCandidates, LoadError
from .ranker import (
    DEFAULT_COUNTED_FEATURES,
    NULL_PREDICTION,
    FeaturePrediction,
    candidate_profile,
    rank_base,
    rank_extended,
)
from .script import from_hsb, normalize
from .tokens import Token, TokenKind, context_windows, detokenize, tokenize

RANKINGS = ("base", "extended", "oracle")


class Predictor(Protocol):
    def predict(self, line_no: int, words: Sequence[str]) -> list[FeaturePrediction]: ...


class NullPredictor:
    def predict(self, line_no, words):
        return [NULL_PREDICTION] * len(words)


class GoldPredictor:
    """Feature maps read from a token-per-line file, one block per sentence."""

    def __init__(self, sentences: Sequence[Sequence[tuple[str, dict]]]):
        self.sentences = [list(s) for s in sentences]

    def predict(self, line_no, words):
        if line_no >= len(self.sentences):
            raise AlignmentError(line_no, "no gold features for line")
        sent = self.sentences[line_no]
        if len(sent) != len(words):
            raise AlignmentError(min(len(sent), len(words)), f"line {line_no}: gold has {len(sent)} words, input {len(words)}")
        out = []
        for k, ((gw, feats), w) in enumerate(zip(sent, words)):
            if lookup_key(gw) != lookup_key(w):
                raise AlignmentError(k, f"line {line_no}: gold word {gw!r} does not match {w!r}")
            out.append(FeaturePrediction(dict(feats), "gold"))
        return out


def load_gold(path: str, hsb: bool = False) -> GoldPredictor:
    sentences: list[list[tuple[str, dict]]] = []
    cur: list[tuple[str, dict]] = []
    with open(path, encoding="utf-8") as f:
        for no, raw in enumerate(f, 1):
            line = raw.rstrip("\r\n")
            if not line.strip():
                sentences.append(cur)
                cur = []
                continue
            word, _, feats = line.partition("\t")
            fm = {}
            for part in filter(None, feats.split(";")):
                if "=" not in part:
                    raise LoadError(path, no, f"feature {part!r} is not name=value")
                k, v = part.split("=", 1)
                fm[k] = v
            cur.append((from_hsb(word) if hsb else word, fm))
    if cur:
        sentences.append(cur)
    return GoldPredictor(sentences)


def make_predictor(spec: str | None, hsb: bool = False) -> Predictor:
    if spec in (None, "", "null"):
        return NullPredictor()
    if spec.startswith("gold:"):
        return load_gold(spec[5:], hsb=hsb)
    raise ValueError(f"unknown predictor {spec!r}; use null or gold:FILE")


def oracle_select(analyses: Sequence[Analysis], gold: str | Sequence[str]) -> Analysis:
    """The analysis nearest to the gold form (any alternative), ties by text."""
    if not analyses:
        raise EmptyCandidates()
    golds = [gold] if isinstance(gold, str) else list(gold)
    return min(
        analyses,
        key=lambda a: (min(candidate_profile(g, a.diac_internal).total for g in golds), a.diac_internal),
    )


@dataclass
class LineResult:
    text: str
    words: int = 0
    no_analysis: int = 0


@dataclass
class Pipeline:
    db: AnalysisDb
    predictor: Predictor = field(default_factory=NullPredictor)
    mode: ContextMode = ContextMode.FULL
    ranking: str = "extended"
    rules: RuleSet | None = None
    counted: tuple[str, ...] = DEFAULT_COUNTED_FEATURES

    def __post_init__(self):
        self.mode = ContextMode(self.mode)
        if self.ranking not in RANKINGS:
            raise ValueError(f"unknown ranking {self.ranking!r}")
        self.rules = self.rules or default_rules()

    def choose(self, word: str, analyses, prediction, gold=None) -> Analysis:
        if self.ranking == "oracle":
            if gold is None:
                raise ValueError("oracle ranking needs the gold word")
            return oracle_select(analyses, gold)
        if self.ranking == "base":
            return rank_base(analyses, prediction, self.counted)[0]
        return rank_extended(analyses, prediction, word, self.counted)[0]

    def run(self, line: str, line_no: int = 0, gold: Sequence[str | Sequence[str]] | None = None) -> LineResult:
        tokens = tokenize(line, line_no)
        word_idx = [i for i, t in enumerate(tokens) if t.kind is TokenKind.ARABIC_WORD]
        if not word_idx:
            return LineResult(line)
        words = [tokens[i].text for i in word_idx]
        if gold is not None and len(gold) != len(words):
            raise AlignmentError(min(len(gold), len(words)), f"line {line_no}: reference word count differs")
        predictions = self.predictor.predict(line_no, words)

        internal: dict[int, str] = {}
        analysed: set[int] = set()
        missing = 0
        for k, (i, w) in enumerate(zip(word_idx, words)):
            analyses = lookup(self.db, w)
            if not analyses:
                missing += 1
                internal[i] = w
                continue
            g = gold[k] if gold is not None else None
            internal[i] = self.choose(w, analyses, predictions[k], g).diac_internal
            analysed.add(i)

        out = {i: tokens[i].text for i in word_idx}
        for window in context_windows(tokens):
            surfaces = apply_context_edits([internal[i] for i in window], self.mode, self.rules)
            for i, s in zip(window, surfaces):
                # Words without an analysis still act as context but stay verbatim.
                if i in analysed:
                    out[i] = s
        rebuilt = [Token(out.get(i, t.text), t.kind, t.line, t.column, t.space_before) for i, t in enumerate(tokens)]
        trailing = line[tokens[-1].end :]
        return LineResult(detokenize(rebuilt, trailing), len(words), missing)


def diacritize(
    line: str,
    db: AnalysisDb,
    predictor: Predictor | None = None,
    mode: ContextMode | str = ContextMode.FULL,
    ranking: str = "extended",
    rules: RuleSet | None = None,
    line_no: int = 0,
) -> str:
    return Pipeline(db, predictor or NullPredictor(), ContextMode(mode), ranking, rules).run(line, line_no).text


# -- evaluation --------------------------------------------------------------


@dataclass(frozen=True)
class EvalReport:
    total: int
    correct: int
    per_genre: dict = field(default_factory=dict)

    @property
    def accuracy(self) -> float:
        return 100.0 * self.correct / self.total if self.total else 0.0

    def to_dict(self) -> dict:
        d = {"total": self.total, "correct": self.correct, "accuracy": self.accuracy}
        if self.per_genre:
            d["per_genre"] = {
                g: {"total": t, "correct": c, "accuracy": 100.0 * c / t if t else 0.0}
                for g, (t, c) in sorted(self.per_genre.items())
            }
        return d


def parse_ref_line(line: str) -> tuple[str, str | None]:
    """``sentence``, ``sentence<TAB>genre`` or ``id<TAB>sentence<TAB>genre``."""
    cols = line.rstrip("\r\n").split("\t")
    if len(cols) == 1:
        return cols[0], None
    if len(cols) == 2:
        return cols[0], cols[1] or None
    return cols[1], cols[2] or None


def scored_words(sentence: str) -> list[str]:
    return [t.text for t in tokenize(sentence) if t.kind is TokenKind.ARABIC_WORD]


def reference_words(sentence: str) -> list[list[str]]:
    return [w.split("|") for w in scored_words(sentence)]


def _same(h: str, r: str, raw: bool) -> bool:
    return h == r if raw else normalize(h) == normalize(r)


def evaluate(hyp_lines: Iterable[str], ref_lines: Iterable[str], raw: bool = False) -> EvalReport:
    """Strict word accuracy over Arabic words; any reference alternative counts."""
    hyp_lines, ref_lines = list(hyp_lines), list(ref_lines)
    if len(hyp_lines) != len(ref_lines):
        raise AlignmentError(min(len(hyp_lines), len(ref_lines)), "line count mismatch")
    total = correct = 0
    genres: dict[str, list[int]] = {}
    offset = 0
    for hl, rl in zip(hyp_lines, ref_lines):
        sentence, genre = parse_ref_line(rl)
        hyp = scored_words(parse_ref_line(hl)[0])
        ref = reference_words(sentence)
        if len(hyp) != len(ref):
            first = next(
                (k for k, (h, r) in enumerate(zip(hyp, ref)) if lookup_key(h) != lookup_key(r[0])),
                min(len(hyp), len(ref)),
            )
            raise AlignmentError(offset + first, "token count mismatch")
        for h, alts in zip(hyp, ref):
            ok = any(_same(h, r, raw) for r in alts)
            total += 1
            correct += ok
            if genre is not None:
                g = genres.setdefault(genre, [0, 0])
                g[0] += 1
                g[1] += ok
        offset += len(ref)
    return EvalReport(total, correct, {g: tuple(v) for g, v in genres.items()})
