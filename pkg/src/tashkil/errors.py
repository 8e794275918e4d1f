"""Exception types raised across the package."""

from __future__ import annotations


class TashkilError(Exception):
    """Base class for data errors (CLI exit code 2)."""


class MappingError(TashkilError, ValueError):
    def __init__(self, symbol: str):
        self.symbol = symbol
        super().__init__(f"no transliteration for {symbol!r} (U+{ord(symbol[0]):04X})")


class LoadError(TashkilError):
    def __init__(self, path: str, line_no: int, message: str):
        self.path = path
        self.line_no = line_no
        super().__init__(f"{path}:{line_no}: {message}")


class ValidationError(TashkilError):
    def __init__(self, entry: str, message: str):
        self.entry = entry
        super().__init__(f"invalid analysis {entry!r}: {message}")


class RepairError(TashkilError):
    """A diacritization could not be completed into a well-formed word."""

    def __init__(self, word: str, violations):
        self.word = word
        self.violations = list(violations)
        codes = ", ".join(v.code.value for v in self.violations)
        super().__init__(f"cannot repair {word!r}: {codes}")


class EmptyCandidates(TashkilError, ValueError):
    pass


class UnknownFlagError(TashkilError):
    def __init__(self, word: str, flag: str):
        self.word = word
        self.flag = flag
        super().__init__(f"unknown allomorph flag %{flag} on {word!r}")


class AlignmentError(TashkilError):
    def __init__(self, index, message: str = "token count mismatch"):
        self.index = index
        super().__init__(f"{message} at {index}")


class RuleError(TashkilError):
    pass
