"""Arabic script primitives.

Codepoint classification, segmentation of a word into letter + diacritic
cluster units, canonical cluster ordering, dediacritization and the HSB
transliteration used for fixtures and debugging.

Everything here is a pure function over ``str`` values.
"""

from __future__ import annotations

import enum
import json
import re
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping

from .errors import MappingError


class Diacritic(enum.Enum):
    """The nine MSA diacritics, declared in Unicode order."""

    FATHATAN = "ً"
    DAMMATAN = "ٌ"
    KASRATAN = "ٍ"
    FATHA = "َ"
    DAMMA = "ُ"
    KASRA = "ِ"
    SHADDA = "ّ"
    SUKUN = "ْ"
    DAGGER_ALIF = "ٰ"

    @property
    def is_tanwiyn(self) -> bool:
        return self in _TANWIYN

    @property
    def is_short_vowel(self) -> bool:
        return self in _SHORT_VOWELS

    @property
    def is_vowel_class(self) -> bool:
        """Short vowels, tanwiyns and sukun share one slot in a cluster."""
        return self in _VOWEL_CLASS

    @property
    def label(self) -> str:
        return _LABELS[self]


_TANWIYN = frozenset({Diacritic.FATHATAN, Diacritic.DAMMATAN, Diacritic.KASRATAN})
_SHORT_VOWELS = frozenset({Diacritic.FATHA, Diacritic.DAMMA, Diacritic.KASRA})
_VOWEL_CLASS = _TANWIYN | _SHORT_VOWELS | {Diacritic.SUKUN}
_LABELS = {
    Diacritic.FATHATAN: "Fathatan",
    Diacritic.DAMMATAN: "Dammatan",
    Diacritic.KASRATAN: "Kasratan",
    Diacritic.FATHA: "Fatha",
    Diacritic.DAMMA: "Damma",
    Diacritic.KASRA: "Kasra",
    Diacritic.SHADDA: "Shadda",
    Diacritic.SUKUN: "Sukun",
    Diacritic.DAGGER_ALIF: "DaggerAlif",
}

DIACRITICS: tuple[Diacritic, ...] = tuple(Diacritic)
DIACRITIC_CHARS = frozenset(d.value for d in Diacritic)
_BY_CHAR = {d.value: d for d in Diacritic}

# Letters the rest of the package refers to by role.
HAMZA = "ء"
ALIF_MADDA = "آ"
ALIF_HAMZA_ABOVE = "أ"
ALIF = "ا"
TA_MARBUTA = "ة"
TATWEEL = "ـ"
LAM = "ل"
WAW = "و"
ALIF_MAQSURA = "ى"
YA = "ي"
ALIF_WASLA = "ٱ"
BA = "ب"
KAF = "ك"
FA = "ف"

ALIFS = frozenset({ALIF, ALIF_WASLA})

_ARABIC_PUNCT = {"،": ",", "؛": ";", "؟": "?"}


class LetterKind(enum.Enum):
    SUN = "sun"
    MOON = "moon"
    WEAK = "weak"
    OTHER = "other"


class CharKind(enum.Enum):
    ARABIC_LETTER = "ArabicLetter"
    ARABIC_DIACRITIC = "ArabicDiacritic"
    DIGIT = "Digit"
    PUNCTUATION = "Punctuation"
    WHITESPACE = "Whitespace"
    OTHER = "Other"


@dataclass(frozen=True)
class CharClass:
    kind: CharKind
    letter: LetterKind | None = None
    diacritic: Diacritic | None = None

    def __str__(self) -> str:
        if self.letter is not None:
            return f"{self.kind.value}({self.letter.value})"
        if self.diacritic is not None:
            return f"{self.kind.value}({self.diacritic.label})"
        return self.kind.value


@dataclass(frozen=True)
class ScriptTables:
    """Sun/moon/weak letter partition, as Arabic codepoints."""

    sun: frozenset[str]
    moon: frozenset[str]
    weak: frozenset[str]

    @classmethod
    def from_hsb_lists(cls, data: Mapping[str, Iterable[str]]) -> "ScriptTables":
        table = hsb_table()
        reverse = {v: k for k, v in table.items()}

        def conv(symbols: Iterable[str]) -> frozenset[str]:
            out = set()
            for s in symbols:
                if s not in reverse:
                    raise MappingError(s)
                out.add(reverse[s])
            return frozenset(out)

        tables = cls(conv(data["sun"]), conv(data["moon"]), conv(data["weak"]))
        if tables.sun & tables.moon or tables.weak & (tables.sun | tables.moon):
            raise ValueError("letter classes overlap")
        return tables

    @classmethod
    def load(cls, path: str | None = None) -> "ScriptTables":
        if path is None:
            text = resources.files("tashkil.data").joinpath("letters.json").read_text("utf-8")
        else:
            with open(path, encoding="utf-8") as f:
                text = f.read()
        return cls.from_hsb_lists(json.loads(text))


@lru_cache(maxsize=None)
def hsb_table() -> dict[str, str]:
    """Arabic codepoint -> HSB symbol, read from the shipped data file."""
    text = resources.files("tashkil.data").joinpath("hsb.tsv").read_text("utf-8")
    table: dict[str, str] = {}
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        code, symbol, _name = line.split("\t")
        table[chr(int(code[2:], 16))] = symbol
    return table


@lru_cache(maxsize=None)
def _hsb_reverse() -> dict[str, str]:
    rev = {v: k for k, v in hsb_table().items()}
    # Common alternative spellings of ayn seen in hand-written HSB.
    rev.setdefault("E", "ع")
    rev.setdefault("ʿ", "ع")
    return rev


@lru_cache(maxsize=None)
def default_tables() -> ScriptTables:
    return ScriptTables.load()


def _is_arabic_letter(c: str) -> bool:
    cp = ord(c)
    if c in DIACRITIC_CHARS:
        return False
    if 0x0621 <= cp <= 0x064A or c == TATWEEL:
        return True
    if 0x0671 <= cp <= 0x06D3 or cp == 0x06D5 or 0x06EE <= cp <= 0x06EF or 0x06FA <= cp <= 0x06FF:
        return True
    return 0x0750 <= cp <= 0x077F or 0x08A0 <= cp <= 0x08C9


def is_arabic_letter(c: str) -> bool:
    return _is_arabic_letter(c)


def classify_char(c: str, tables: ScriptTables | None = None) -> CharClass:
    tables = tables or default_tables()
    if c in _BY_CHAR:
        return CharClass(CharKind.ARABIC_DIACRITIC, diacritic=_BY_CHAR[c])
    if _is_arabic_letter(c):
        if c in tables.sun:
            kind = LetterKind.SUN
        elif c in tables.moon:
            kind = LetterKind.MOON
        elif c in tables.weak:
            kind = LetterKind.WEAK
        else:
            kind = LetterKind.OTHER
        return CharClass(CharKind.ARABIC_LETTER, letter=kind)
    if c.isspace():
        return CharClass(CharKind.WHITESPACE)
    cat = unicodedata.category(c)
    if cat == "Nd":
        return CharClass(CharKind.DIGIT)
    if cat.startswith("P") or c in _ARABIC_PUNCT or c in "٪٫٬۔":
        return CharClass(CharKind.PUNCTUATION)
    return CharClass(CharKind.OTHER)


def as_diacritic(c: str) -> Diacritic | None:
    return _BY_CHAR.get(c)


_RANK = {Diacritic.SHADDA: 0, Diacritic.DAGGER_ALIF: 2}


def _rank(d: Diacritic) -> int:
    return _RANK.get(d, 1)


@dataclass(frozen=True)
class DiacCluster:
    """The run of diacritics following one letter, in the order read."""

    raw: tuple[Diacritic, ...] = ()

    def __bool__(self) -> bool:
        return bool(self.raw)

    def __str__(self) -> str:
        return "".join(d.value for d in self.raw)

    def __contains__(self, d: object) -> bool:
        return d in self.raw

    @property
    def shadda(self) -> bool:
        return Diacritic.SHADDA in self.raw

    @property
    def dagger(self) -> bool:
        return Diacritic.DAGGER_ALIF in self.raw

    @property
    def vowels(self) -> tuple[Diacritic, ...]:
        return tuple(d for d in self.raw if d.is_vowel_class)

    @property
    def vowel(self) -> Diacritic | None:
        """The single vowel-class mark, or None when absent or ambiguous."""
        v = self.vowels
        return v[0] if len(v) == 1 else None

    @property
    def compatible(self) -> bool:
        if self.raw.count(Diacritic.SHADDA) > 1 or self.raw.count(Diacritic.DAGGER_ALIF) > 1:
            return False
        vowels = self.vowels
        if len(vowels) > 1:
            return False
        if self.dagger and vowels and vowels[0] is not Diacritic.FATHA:
            return False
        return True

    @property
    def canonical_order(self) -> bool:
        return list(self.raw) == sorted(self.raw, key=_rank)

    def canonical(self) -> "DiacCluster":
        """Shadda, vowel slot, dagger alif; exact duplicates collapsed."""
        seen: list[Diacritic] = []
        for d in self.raw:
            if d not in seen:
                seen.append(d)
        return DiacCluster(tuple(sorted(seen, key=_rank)))

    def with_added(self, d: Diacritic) -> "DiacCluster":
        return DiacCluster(self.raw + (d,)).canonical()

    def without(self, d: Diacritic) -> "DiacCluster":
        return DiacCluster(tuple(x for x in self.raw if x is not d))


EMPTY = DiacCluster()


@dataclass(frozen=True)
class DiacWord:
    initial_orphan: DiacCluster | None
    segments: tuple[tuple[str, DiacCluster], ...]

    def __str__(self) -> str:
        return self.serialize()

    def __len__(self) -> int:
        return len(self.segments)

    def serialize(self) -> str:
        head = str(self.initial_orphan) if self.initial_orphan else ""
        return head + "".join(letter + str(cl) for letter, cl in self.segments)

    @property
    def letters(self) -> str:
        return "".join(letter for letter, _ in self.segments)


def segment(word: str) -> DiacWord:
    """Split a word into letters, each carrying the diacritics that follow it.

    Nothing is rejected: diacritics before the first letter land in
    ``initial_orphan``.
    """
    orphan: list[Diacritic] = []
    letters: list[str] = []
    clusters: list[list[Diacritic]] = []
    for c in word:
        d = _BY_CHAR.get(c)
        if d is None:
            letters.append(c)
            clusters.append([])
        elif letters:
            clusters[-1].append(d)
        else:
            orphan.append(d)
    segs = tuple((l, DiacCluster(tuple(cl))) for l, cl in zip(letters, clusters))
    return DiacWord(DiacCluster(tuple(orphan)) if orphan else None, segs)


def fix_tanwiyn_alif(segments: list[tuple[str, DiacCluster]]) -> list[tuple[str, DiacCluster]]:
    """Move a word-final Fathatan from a final Alif/Alif-Maqsura to the letter before it."""
    if len(segments) < 2:
        return segments
    last, cl = segments[-1]
    if last in (ALIF, ALIF_MAQSURA) and Diacritic.FATHATAN in cl:
        prev, pcl = segments[-2]
        segments = list(segments)
        segments[-2] = (prev, pcl.with_added(Diacritic.FATHATAN))
        segments[-1] = (last, cl.without(Diacritic.FATHATAN))
    return segments


def canonical_segments(dw: DiacWord) -> list[tuple[str, DiacCluster]]:
    return fix_tanwiyn_alif([(l, cl.canonical()) for l, cl in dw.segments])


def normalize(word: str) -> str:
    dw = segment(word)
    orphan = dw.initial_orphan.canonical() if dw.initial_orphan else None
    return DiacWord(orphan, tuple(canonical_segments(dw))).serialize()


def dediacritize(word: str) -> str:
    return "".join(c for c in word if c not in DIACRITIC_CHARS)


def diacritic_profile(word: str) -> dict[Diacritic, int]:
    counts = dict.fromkeys(DIACRITICS, 0)
    for c in word:
        d = _BY_CHAR.get(c)
        if d is not None:
            counts[d] += 1
    return counts


def has_diacritic(word: str) -> bool:
    return any(c in DIACRITIC_CHARS for c in word)


def has_arabic_letter(text: str) -> bool:
    return any(_is_arabic_letter(c) for c in text)


# -- internal analysis forms ------------------------------------------------

_FLAG_RE = re.compile(r"%([A-Za-z])")


def split_flags(word: str) -> tuple[str, tuple[str, ...]]:
    """``"min.%n"`` (in Arabic script) -> (base, ("n",))."""
    idx = word.find("%")
    if idx < 0:
        return word, ()
    tail = word[idx:]
    flags = tuple(_FLAG_RE.findall(tail))
    if _FLAG_RE.sub("", tail):
        raise ValueError(f"malformed flag suffix in {word!r}")
    return word[:idx], flags


def strip_flags(word: str) -> str:
    return split_flags(word)[0]


def externalize(word: str, keep_vowel: bool = True) -> str:
    """Write an internal Alif Wasla as a plain Alif.

    With ``keep_vowel=False`` the Wasla's short vowel is dropped as well,
    which is how the word appears in the middle of a context.
    """
    if not word.startswith(ALIF_WASLA):
        return word
    rest = word[1:]
    if not keep_vowel and rest and _BY_CHAR.get(rest[0]) in _SHORT_VOWELS:
        rest = rest[1:]
    return ALIF + rest


# -- HSB ------------------------------------------------------------------

_HSB_PASSTHROUGH_CATS = ("P", "S", "Z", "N", "C")


def to_hsb(text: str) -> str:
    table = hsb_table()
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if c == "%" and i + 1 < len(text) and text[i + 1].isascii() and text[i + 1].isalpha():
            out.append(text[i : i + 2])
            i += 2
            continue
        if c in table:
            out.append(table[c])
        elif c in _ARABIC_PUNCT:
            out.append(_ARABIC_PUNCT[c])
        elif c.isspace() or unicodedata.category(c)[0] in _HSB_PASSTHROUGH_CATS:
            out.append(c)
        else:
            raise MappingError(c)
        i += 1
    return "".join(out)


def from_hsb(text: str) -> str:
    rev = _hsb_reverse()
    text = unicodedata.normalize("NFC", text)
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if c == "%" and i + 1 < len(text) and text[i + 1].isascii() and text[i + 1].isalpha():
            out.append(text[i : i + 2])
            i += 2
            continue
        if c in rev:
            out.append(rev[c])
        elif c.isspace() or unicodedata.category(c)[0] in _HSB_PASSTHROUGH_CATS:
            out.append(c)
        else:
            raise MappingError(c)
        i += 1
    return "".join(out)
