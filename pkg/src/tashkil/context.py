"""Inter-word rewrites applied after ranking.

A context window is joined into one string with single spaces and run
through an ordered list of regex rules: epenthetic vowels before a Wasla,
Wasla externalization, flag removal. The default rules live in
``data/context_rules.tsv``; a replacement file can be supplied.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

from .errors import RuleError, UnknownFlagError
from .script import split_flags


class ContextMode(enum.Enum):
    NONE = "none"
    SOLO = "solo"
    FULL = "full"


@dataclass(frozen=True)
class EditRule:
    id: str
    pattern: re.Pattern
    rewrite: str
    order: int


_ESCAPE = re.compile(r"\\u([0-9A-Fa-f]{4})")
_FLAG_IN_PATTERN = re.compile(r"%([A-Za-z])")


def _decode(text: str) -> str:
    return _ESCAPE.sub(lambda m: chr(int(m.group(1), 16)), text)


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[EditRule, ...]

    @property
    def known_flags(self) -> frozenset[str]:
        flags = set()
        for r in self.rules:
            flags.update(_FLAG_IN_PATTERN.findall(r.pattern.pattern))
        return frozenset(flags)

    def apply(self, text: str) -> str:
        for r in self.rules:
            text = r.pattern.sub(r.rewrite, text)
        return text


def parse_rules(lines: Iterable[str], name: str = "<rules>") -> RuleSet:
    rules = []
    for no, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise RuleError(f"{name}:{no}: expected id, pattern, rewrite")
        rid, pat, rew = cols
        try:
            compiled = re.compile(pat)
        except re.error as exc:
            raise RuleError(f"{name}:{no}: bad pattern for {rid}: {exc}") from None
        rules.append(EditRule(rid, compiled, _decode(rew), len(rules)))
    return RuleSet(tuple(rules))


def load_rules(path: str | None = None) -> RuleSet:
    if path is None:
        return default_rules()
    with open(path, encoding="utf-8") as f:
        return parse_rules(f, path)


@lru_cache(maxsize=None)
def default_rules() -> RuleSet:
    text = resources.files("tashkil.data").joinpath("context_rules.tsv").read_text(encoding="utf-8")
    return parse_rules(text.splitlines(), "context_rules.tsv")


def _check_flags(words: Sequence[str], known: frozenset[str]) -> None:
    for w in words:
        try:
            _, flags = split_flags(w)
        except ValueError:
            raise UnknownFlagError(w, w[w.find("%") + 1 :]) from None
        for f in flags:
            if f not in known:
                raise UnknownFlagError(w, f)


def _run(rules: RuleSet, words: Sequence[str]) -> list[str]:
    out = rules.apply(" ".join(words)).split(" ")
    if len(out) != len(words):
        raise RuleError("a rule changed the number of words in the window")
    return out


def apply_context_edits(
    words: Sequence[str],
    mode: ContextMode | str = ContextMode.FULL,
    rules: RuleSet | None = None,
) -> list[str]:
    """Turn one context window of internal forms into surface forms."""
    mode = ContextMode(mode)
    rules = rules or default_rules()
    words = list(words)
    if not words:
        return []
    _check_flags(words, rules.known_flags)
    if mode is ContextMode.FULL:
        return _run(rules, words)
    if mode is ContextMode.SOLO:
        return [_run(rules, [w])[0] for w in words]
    # No modelling: every word surfaces as it would mid-context.
    return [_run(rules, ["", w])[1] for w in words]
