"""Morphological analysis store keyed by dediacritized surface form.

The on-disk format is a UTF-8 TSV with one analysis per row::

    key  diac_internal  lemma  pos  feat1=v1;feat2=v2  lemma_logprob  pos_lemma_logprob

``diac_internal`` is a maximal diacritization in which a word-initial Alif
Wasla is written U+0671 and allomorph flags ride at the end (``%n``).
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, TextIO

from .errors import LoadError, RepairError, ValidationError
from .script import (
    ALIF,
    ALIF_WASLA,
    ALIFS,
    LAM,
    WAW,
    Diacritic,
    DiacWord,
    canonical_segments,
    default_tables,
    dediacritize,
    externalize,
    from_hsb,
    has_diacritic,
    normalize,
    segment,
    split_flags,
    to_hsb,
)
from .wellformed import ViolationCode, _bare_status, _shape, _tanwiyn, check_word

COLUMNS = ("key", "diac_internal", "lemma", "pos", "features", "lemma_logprob", "pos_lemma_logprob")


@dataclass(frozen=True)
class Analysis:
    diac_internal: str
    lemma: str
    pos: str
    features: tuple[tuple[str, str], ...] = ()
    lemma_logprob: float = 0.0
    pos_lemma_logprob: float = 0.0

    @property
    def base(self) -> str:
        return split_flags(self.diac_internal)[0]

    @property
    def flags(self) -> tuple[str, ...]:
        return split_flags(self.diac_internal)[1]

    @property
    def key(self) -> str:
        return dediacritize(externalize(self.base))

    def surface(self, context_start: bool = True) -> str:
        return externalize(self.base, keep_vowel=context_start)

    @property
    def feature_map(self) -> dict[str, str]:
        fm = dict(self.features)
        fm.setdefault("pos", self.pos)
        return fm


@dataclass(frozen=True)
class AnalysisDb:
    entries: Mapping[str, tuple[Analysis, ...]] = field(default_factory=lambda: MappingProxyType({}))
    version: str = ""
    source: str = ""

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, key: object) -> bool:
        return key in self.entries

    @property
    def analysis_count(self) -> int:
        return sum(len(v) for v in self.entries.values())

    def lookup(self, word: str) -> list[Analysis]:
        return lookup(self, word)


def lookup_key(word: str) -> str:
    return dediacritize(normalize(word)).replace(ALIF_WASLA, ALIF)


def lookup(db: AnalysisDb, word: str) -> list[Analysis]:
    """Stored analyses for ``word``; an empty list means no analysis."""
    return list(db.entries.get(lookup_key(word), ()))


def validate_analysis(a: Analysis, key: str | None = None) -> None:
    try:
        base, _flags = split_flags(a.diac_internal)
    except ValueError as exc:
        raise ValidationError(a.diac_internal, str(exc)) from None
    if key is not None:
        if has_diacritic(key):
            raise ValidationError(a.diac_internal, f"key {key!r} carries diacritics")
        if a.key != key:
            raise ValidationError(a.diac_internal, f"dediacritizes to {a.key!r}, not {key!r}")
    verdict = check_word(a.surface(context_start=True), at_context_start=True)
    if not verdict.ok:
        raise ValidationError(a.diac_internal, "not well-formed: " + ", ".join(map(str, verdict.violations)))


def _parse_features(text: str) -> tuple[tuple[str, str], ...]:
    if text in ("", "_"):
        return ()
    out = []
    for part in text.split(";"):
        if "=" not in part:
            raise ValueError(f"feature {part!r} is not name=value")
        name, value = part.split("=", 1)
        out.append((name, value))
    return tuple(out)


def _read_lines(source: str | os.PathLike | TextIO | Iterable[str]) -> tuple[str, Iterable[str]]:
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as f:
            return os.fspath(source), f.read().splitlines()
    if isinstance(source, io.TextIOBase):
        return getattr(source, "name", "<stream>"), source.read().splitlines()
    return "<lines>", list(source)


def load_db(source, hsb: bool = False) -> AnalysisDb:
    """Parse and validate a TSV analysis file.

    ``hsb=True`` reads the key, diacritization and lemma columns as HSB
    transliteration.
    """
    name, lines = _read_lines(source)
    conv = from_hsb if hsb else (lambda s: s)
    entries: dict[str, list[Analysis]] = {}
    seen: set[tuple] = set()
    meta = {"version": "", "source": ""}
    for no, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            for k in meta:
                if body.startswith(k + ":"):
                    meta[k] = body[len(k) + 1 :].strip()
            continue
        cols = line.split("\t")
        if len(cols) != len(COLUMNS):
            raise LoadError(name, no, f"expected {len(COLUMNS)} columns, got {len(cols)}")
        try:
            key, diac, lemma = conv(cols[0]), conv(cols[1]), conv(cols[2])
            a = Analysis(
                diac_internal=diac,
                lemma=lemma,
                pos=cols[3],
                features=_parse_features(cols[4]),
                lemma_logprob=float(cols[5]),
                pos_lemma_logprob=float(cols[6]),
            )
        except ValueError as exc:
            raise LoadError(name, no, str(exc)) from None
        validate_analysis(a, key)
        ident = (key, a)
        if ident in seen:
            continue
        seen.add(ident)
        entries.setdefault(key, []).append(a)
    frozen = MappingProxyType({k: tuple(v) for k, v in entries.items()})
    return AnalysisDb(frozen, meta["version"], meta["source"])


def dump_db(db: AnalysisDb, hsb: bool = False) -> str:
    conv = to_hsb if hsb else (lambda s: s)
    out = []
    if db.version:
        out.append(f"# version: {db.version}")
    if db.source:
        out.append(f"# source: {db.source}")
    for key, analyses in db.entries.items():
        for a in analyses:
            feats = ";".join(f"{k}={v}" for k, v in a.features) or "_"
            out.append(
                "\t".join(
                    [
                        conv(key),
                        conv(a.diac_internal),
                        conv(a.lemma),
                        a.pos,
                        feats,
                        repr(a.lemma_logprob),
                        repr(a.pos_lemma_logprob),
                    ]
                )
            )
    return "".join(line + "\n" for line in out)


def build_db(rows: Iterable[tuple[str, Analysis]], version: str = "", source: str = "") -> AnalysisDb:
    entries: dict[str, list[Analysis]] = {}
    for key, a in rows:
        validate_analysis(a, key)
        if a not in entries.get(key, []):
            entries.setdefault(key, []).append(a)
    return AnalysisDb(MappingProxyType({k: tuple(v) for k, v in entries.items()}), version, source)


# -- ATB -> maximal repair ---------------------------------------------------


def _is_article(segs) -> bool:
    if len(segs) < 3 or segs[0][0] not in ALIFS or segs[1][0] != LAM:
        return False
    lam_cl = segs[1][1]
    if not lam_cl:
        return True
    return lam_cl.raw == (Diacritic.SUKUN,) and segs[2][0] not in default_tables().sun


def maximalize_analysis(atb_diac: str, omit_final_sukun: bool = False) -> str:
    """Complete an ATB-style diacritization into the internal maximal form.

    Adds the Fatha before a long-vowel Alif, puts a final Fathatan before its
    Alif, adds Sukuns where a letter must carry a cluster, and marks the
    definite article's Alif as Wasla with its vowel. Flags are preserved.
    """
    base, flags = split_flags(atb_diac)
    segs = canonical_segments(segment(base))

    if _is_article(segs):
        cl = segs[0][1]
        if not (cl.vowel is not None and cl.vowel.is_short_vowel):
            cl = cl.with_added(Diacritic.FATHA)
        segs[0] = (ALIF_WASLA, cl)

    shape = _shape(segs)
    n = len(segs)
    for i in range(1, n):
        letter, cl = segs[i]
        if letter != ALIF or cl or i in shape.wasla_slots:
            continue
        prev_letter, pcl = segs[i - 1]
        if prev_letter in ALIFS or pcl.vowels or _tanwiyn(pcl):
            continue
        if i == n - 1 and prev_letter == WAW:
            continue
        segs[i - 1] = (prev_letter, pcl.with_added(Diacritic.FATHA))

    tables = default_tables()
    for i in range(n):
        letter, cl = segs[i]
        if cl or letter in ALIFS:
            continue
        if omit_final_sukun and i == n - 1:
            continue
        _, code = _bare_status(segs, i, _shape(segs), tables)
        if code in (
            ViolationCode.MISSING_CLUSTER_ON_LETTER,
            ViolationCode.INVALID_START_PATTERN,
            ViolationCode.BARE_LETTER_NOT_ALLOWED,
        ):
            segs[i] = (letter, cl.with_added(Diacritic.SUKUN))

    result = DiacWord(None, tuple(segs)).serialize()
    verdict = check_word(externalize(result), at_context_start=True, at_context_end=omit_final_sukun)
    problems = [
        v
        for v in verdict.violations
        if not (omit_final_sukun and v.code is ViolationCode.MISSING_CLUSTER_ON_LETTER and v.index == n - 1)
    ]
    if problems:
        raise RepairError(atb_diac, problems)
    return result + "".join("%" + f for f in flags)
