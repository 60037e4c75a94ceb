"""Exception types shared across the package."""

from __future__ import annotations


class KanapadError(Exception):
    """Base class for every error raised by this package."""


class ParseError(KanapadError):
    """A data file line could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(KanapadError):
    """Parsed data violates a structural invariant."""


class UnknownKanaError(KanapadError):
    """A character is not part of the syllabary."""

    def __init__(self, kana: str, position: int | None = None):
        at = "" if position is None else f" at position {position}"
        super().__init__(f"unknown kana {kana!r}{at}")
        self.kana = kana
        self.position = position


class DiacriticNotApplicableError(KanapadError):
    """The requested mark does not apply to this (known) syllable."""


class TransliterationError(KanapadError):
    """Romaji text has no kana parse."""

    def __init__(self, text: str, offset: int):
        super().__init__(f"no kana parse at offset {offset} in {text!r}")
        self.offset = offset


class ConflictError(KanapadError):
    """A kana is assigned to more than one key."""


class CoverageError(KanapadError):
    """Some syllabary characters are unreachable from the key cycles."""

    def __init__(self, missing: list[str]):
        super().__init__("kana not covered by any key: " + " ".join(missing))
        self.missing = missing


class NoMatchError(KanapadError):
    """Select was pressed while no candidate matches the pending keys."""


class StateError(KanapadError):
    """An event is not legal in the current session state."""


class LayoutMismatchError(KanapadError):
    """The index was compiled against a different key layout."""


class IndexFormatError(KanapadError):
    """A serialized index cannot be decoded."""


class BadMagicError(IndexFormatError):
    """The byte stream is not an index file."""


class BadVersionError(IndexFormatError):
    """The index file uses an unsupported format version."""


class TruncatedIndexError(IndexFormatError):
    """The index file ends mid-record."""
