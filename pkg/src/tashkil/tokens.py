"""Whitespace tokenizer with punctuation splitting, and context windows."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .script import CharKind, classify_char, has_arabic_letter


class TokenKind(enum.Enum):
    ARABIC_WORD = "ArabicWord"
    PUNCTUATION = "Punctuation"
    NUMBER = "Number"
    OTHER = "Other"


@dataclass(frozen=True)
class Token:
    text: str
    kind: TokenKind
    line: int
    column: int
    space_before: str = ""

    @property
    def end(self) -> int:
        return self.column + len(self.text)


_CHUNK = re.compile(r"\S+")
_NUMBER = re.compile(r"^[\d٠-٩۰-۹]+(?:[.,٫٬][\d٠-٩۰-۹]+)*$")


def _is_punct(c: str) -> bool:
    return classify_char(c).kind is CharKind.PUNCTUATION


def _kind(text: str) -> TokenKind:
    if has_arabic_letter(text):
        return TokenKind.ARABIC_WORD
    if all(_is_punct(c) for c in text):
        return TokenKind.PUNCTUATION
    if _NUMBER.match(text):
        return TokenKind.NUMBER
    return TokenKind.OTHER


def tokenize(line: str, line_no: int = 0) -> list[Token]:
    """Split on whitespace, then peel punctuation off both ends of each chunk.

    Each peeled punctuation character becomes its own token. Offsets are
    kept, so ``detokenize`` rebuilds the line exactly.
    """
    tokens: list[Token] = []
    prev_end = 0
    for m in _CHUNK.finditer(line):
        chunk, start = m.group(), m.start()
        lo, hi = 0, len(chunk)
        while lo < hi and _is_punct(chunk[lo]):
            lo += 1
        while hi > lo and _is_punct(chunk[hi - 1]):
            hi -= 1
        pieces = [(i, chunk[i]) for i in range(lo)]
        if hi > lo:
            pieces.append((lo, chunk[lo:hi]))
        pieces.extend((i, chunk[i]) for i in range(hi, len(chunk)))
        for offset, text in pieces:
            col = start + offset
            tokens.append(Token(text, _kind(text), line_no, col, line[prev_end:col]))
            prev_end = col + len(text)
    return tokens


def detokenize(tokens: list[Token], trailing: str = "") -> str:
    return "".join(t.space_before + t.text for t in tokens) + trailing


def context_windows(tokens: list[Token]) -> list[list[int]]:
    """Indices of Arabic words grouped into windows split at punctuation.

    Numbers and other non-Arabic tokens neither delimit a window nor join it.
    """
    windows: list[list[int]] = [[]]
    for i, tok in enumerate(tokens):
        if tok.kind is TokenKind.PUNCTUATION:
            if windows[-1]:
                windows.append([])
        elif tok.kind is TokenKind.ARABIC_WORD:
            windows[-1].append(i)
    return [w for w in windows if w]
