"""Twelve-key keypad model: per-key kana cycles, reading-to-digit encoding,
and multi-tap press expansion.

A layout assigns every syllable to exactly one digit key, either directly
(the key's tap cycle lists it) or through its base form (voiced and small
variants live on their base's key).  Word disambiguation uses one digit per
kana; the multi-tap baseline taps through the cycle and then through the
modifier key's diacritic ring.
"""

from __future__ import annotations

import hashlib
from functools import lru_cache

from .errors import ConflictError, CoverageError, ParseError, UnknownKanaError
from .syllabary import Syllabary, default_syllabary

#: Character keys in grid reading order (1..9, then 0).
DIGIT_KEYS = "1234567890"

#: The physical 3x4 grid, top row first.
KEY_GRID = ("123", "456", "789", "*0#")

SYMBOL_KEY = "#"

_DEFAULT_MODIFIER = "*"
_DEFAULT_SYMBOLS = "、。?!・ "


class KeypadLayout:
    """A validated key assignment bound to a syllabary."""

    def __init__(
        self,
        cycles: dict[str, str],
        symbols: str,
        modifier_key: str,
        syllabary: Syllabary,
    ):
        self.syllabary = syllabary
        self.cycles = {key: cycles.get(key, "") for key in DIGIT_KEYS}
        self.symbols = symbols
        self.modifier_key = modifier_key
        self._key_of = self._assign_keys()
        self.source = self._canonical_text()
        self.content_hash = hashlib.sha256(self.source.encode("utf-8")).hexdigest()[:16]

    def _assign_keys(self) -> dict[str, str]:
        direct: dict[str, str] = {}
        for key in DIGIT_KEYS:
            for ch in self.cycles[key]:
                if ch in direct:
                    if direct[ch] == key:
                        raise ConflictError(f"{ch!r} listed twice on key {key}")
                    raise ConflictError(
                        f"{ch!r} assigned to keys {direct[ch]} and {key}"
                    )
                direct[ch] = key
        key_of: dict[str, str] = {}
        missing: set[str] = set()
        for rec in self.syllabary:
            for glyph in rec.character:
                own = direct.get(glyph)
                base = self.syllabary.base_of(glyph)
                inherited = direct.get(base)
                if own is not None and inherited is not None and own != inherited:
                    raise ConflictError(
                        f"{glyph!r} is on key {own} but its base {base!r} is on key "
                        f"{inherited}"
                    )
                key = own or inherited
                if key is None:
                    missing.add(glyph)
                else:
                    key_of[glyph] = key
        if missing:
            raise CoverageError(sorted(missing))
        return key_of

    def _canonical_text(self) -> str:
        lines = [f"{key}\t{self.cycles[key]}" for key in DIGIT_KEYS]
        lines.append(f"symbols\t{self.symbols}")
        lines.append(f"modifier\t{self.modifier_key}")
        return "\n".join(lines) + "\n"

    # -- encoding ----------------------------------------------------------

    def key_of(self, kana: str) -> str:
        """The digit key carrying a glyph (via its base form for variants)."""
        key = self._key_of.get(kana)
        if key is None:
            raise UnknownKanaError(kana)
        return key

    def encode_reading(self, reading: str) -> str:
        """One digit per kana glyph; voiced/small forms encode as their base."""
        digits = []
        for pos, glyph in enumerate(reading):
            key = self._key_of.get(glyph)
            if key is None:
                raise UnknownKanaError(glyph, position=pos)
            digits.append(key)
        return "".join(digits)

    # -- multi-tap -----------------------------------------------------------

    def modifier_ring(self, kana: str) -> list[str]:
        """The forms the modifier key cycles through, base form first."""
        base = self.syllabary.base_of(kana)
        return [base, *self.syllabary.derived_forms(base)]

    def multitap_expand(self, kana: str) -> list[str]:
        """The exact multi-tap press list producing a syllable.

        Tap the base's key to its cycle position, then press the modifier
        once per step to the wanted form.  Two-glyph syllables are the two
        expansions back to back (the key change finalizes the first glyph).
        """
        rec = self.syllabary.get(kana)
        if len(rec.character) == 2:
            first, second = rec.character
            return self.multitap_expand(first) + self.multitap_expand(second)
        base = rec.base
        key = self.key_of(base)
        position = self.cycles[key].index(base) + 1
        presses = [key] * position
        ring = self.modifier_ring(base)
        presses += [self.modifier_key] * ring.index(kana)
        return presses

    def multitap_cost(self, reading: str) -> int:
        """Multi-tap presses for a reading, excluding any ADVANCE presses."""
        return sum(len(self.multitap_expand(glyph)) for glyph in reading)


def load_layout(text: str, syllabary: Syllabary | None = None) -> KeypadLayout:
    """Parse layout text (see data/layout_default.tsv for the format)."""
    syllabary = syllabary or default_syllabary()
    cycles: dict[str, str] = {}
    symbols: str | None = None
    modifier: str | None = None
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line or line.startswith("#"):
            continue
        name, sep, value = line.partition("\t")
        if not sep:
            raise ParseError(f"expected <key><TAB><cycle>, got {line!r}", line=lineno)
        if name == "symbols":
            if symbols is not None:
                raise ParseError("duplicate symbols line", line=lineno)
            symbols = value
        elif name == "modifier":
            if modifier is not None:
                raise ParseError("duplicate modifier line", line=lineno)
            if len(value) != 1:
                raise ParseError(f"modifier must be one key, got {value!r}", line=lineno)
            modifier = value
        elif name in DIGIT_KEYS:
            if name in cycles:
                raise ParseError(f"duplicate line for key {name}", line=lineno)
            cycles[name] = value
        else:
            raise ParseError(f"unknown key {name!r}", line=lineno)
    return KeypadLayout(
        cycles,
        symbols if symbols is not None else _DEFAULT_SYMBOLS,
        modifier if modifier is not None else _DEFAULT_MODIFIER,
        syllabary,
    )


@lru_cache(maxsize=1)
def default_layout() -> KeypadLayout:
    """The packaged 12-key layout bound to the packaged syllabary."""
    from importlib import resources

    text = (resources.files(__package__) / "data" / "layout_default.tsv").read_text(
        encoding="utf-8"
    )
    return load_layout(text, default_syllabary())
