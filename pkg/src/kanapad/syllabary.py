"""Hiragana syllabary model: the 108-syllable inventory, diacritic links,
matrix positions, and romaji transliteration in both directions.

The inventory ships as a tab-separated data file, one syllable per line, and
is validated on load: 108 syllables in total, 71 of them unmarked, 37 derived
from an unmarked base by a voicing mark.  Palatalized syllables (kya, pyo,
and friends) are rows of their own spelled with two glyphs; engine-facing
modules work glyph by glyph and rely on the base links recorded here.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import (
    DiacriticNotApplicableError,
    ParseError,
    TransliterationError,
    UnknownKanaError,
    ValidationError,
)

EXPECTED_TOTAL = 108
EXPECTED_UNMARKED = 71
EXPECTED_MARKED = 37

#: The two syllables that are not a plain (consonant +) vowel.
SHAPE_EXCEPTIONS = ("ん", "っ")

SMALL_YOON = "ゃゅょ"

_CV_SHAPE = re.compile(r"^[bcdfghjkmnprstwxyz]{0,2}[aiueo]$")

# Consonants that double to spell a leading っ ("kitte" -> きって).
# 'n' is excluded ("nn" is ん) and 'x' only introduces small forms.
_GEMINABLE = frozenset("bcdfghjkmprstwyz")

_MAX_ROMAJI = 3


class DiacriticClass(enum.Enum):
    """How a syllable relates to its unmarked base form."""

    BASE = "base"
    DAKUTEN = "dakuten"
    HANDAKUTEN = "handakuten"
    SMALL = "small"


#: Modifier cycling order for derived forms (the base itself comes first).
DERIVED_ORDER = (
    DiacriticClass.DAKUTEN,
    DiacriticClass.HANDAKUTEN,
    DiacriticClass.SMALL,
)

_CLASS_BY_NAME = {c.value: c for c in DiacriticClass}


@dataclass(frozen=True)
class KanaRecord:
    """One syllabary row: a syllable, its romaji, and its derivation."""

    character: str
    romaji: str
    row: int
    col: int
    base: str
    diacritic: DiacriticClass
    is_exception: bool = False  # ん / っ, the two non-CV syllables


class Syllabary:
    """The validated syllable inventory with lookup and transliteration."""

    def __init__(self, records: list[KanaRecord]):
        self._records: dict[str, KanaRecord] = {}
        for rec in records:
            if rec.character in self._records:
                raise ValidationError(f"duplicate syllable {rec.character!r}")
            self._records[rec.character] = rec
        self._validate()
        # base character -> {class: derived character}, base itself included
        self._derived: dict[str, dict[DiacriticClass, str]] = {}
        for rec in self._records.values():
            self._derived.setdefault(rec.base, {})[rec.diacritic] = rec.character
        self._parse_map = {rec.romaji: rec.character for rec in self._records.values()}
        self._parse_map.setdefault("nn", "ん")

    def _validate(self) -> None:
        recs = self._records.values()
        total = len(self._records)
        if total != EXPECTED_TOTAL:
            raise ValidationError(f"expected {EXPECTED_TOTAL} syllables, found {total}")
        marked = sum(
            1
            for r in recs
            if r.diacritic in (DiacriticClass.DAKUTEN, DiacriticClass.HANDAKUTEN)
        )
        unmarked = total - marked
        if unmarked != EXPECTED_UNMARKED:
            raise ValidationError(
                f"expected {EXPECTED_UNMARKED} unmarked syllables, found {unmarked}"
            )
        if marked != EXPECTED_MARKED:
            raise ValidationError(
                f"expected {EXPECTED_MARKED} marked syllables, found {marked}"
            )
        seen_romaji: dict[str, str] = {}
        cells: dict[tuple[int, int], str] = {}
        for rec in recs:
            if rec.romaji in seen_romaji:
                raise ValidationError(
                    f"romaji {rec.romaji!r} used by both "
                    f"{seen_romaji[rec.romaji]!r} and {rec.character!r}"
                )
            seen_romaji[rec.romaji] = rec.character
            if not rec.is_exception and not _CV_SHAPE.match(rec.romaji):
                raise ValidationError(
                    f"{rec.character!r}: romaji {rec.romaji!r} is not consonant+vowel"
                )
            base = self._records.get(rec.base)
            if base is None:
                raise ValidationError(
                    f"{rec.character!r}: base {rec.base!r} is not in the table"
                )
            if base.diacritic is not DiacriticClass.BASE:
                raise ValidationError(
                    f"{rec.character!r}: base {rec.base!r} is itself derived"
                )
            if (rec.diacritic is DiacriticClass.BASE) != (rec.base == rec.character):
                raise ValidationError(
                    f"{rec.character!r}: class {rec.diacritic.value} disagrees "
                    f"with base link {rec.base!r}"
                )
            if rec.diacritic is DiacriticClass.BASE:
                cell = (rec.row, rec.col)
                if cell in cells:
                    raise ValidationError(
                        f"matrix cell {cell} held by both "
                        f"{cells[cell]!r} and {rec.character!r}"
                    )
                cells[cell] = rec.character
        for exc in SHAPE_EXCEPTIONS:
            if exc not in self._records:
                raise ValidationError(f"missing syllable {exc!r}")

    # -- lookup ----------------------------------------------------------

    def __len__(self) -> int:
        return len(self._records)

    def __contains__(self, kana: str) -> bool:
        return kana in self._records

    def __iter__(self):
        return iter(self._records.values())

    @property
    def counts(self) -> tuple[int, int, int]:
        """(total, unmarked, marked) syllable counts."""
        total = len(self._records)
        marked = sum(
            1
            for r in self._records.values()
            if r.diacritic in (DiacriticClass.DAKUTEN, DiacriticClass.HANDAKUTEN)
        )
        return total, total - marked, marked

    def get(self, kana: str) -> KanaRecord:
        rec = self._records.get(kana)
        if rec is None:
            raise UnknownKanaError(kana)
        return rec

    def base_of(self, kana: str) -> str:
        """Strip any diacritic: が -> か, ぴ -> ひ, あ -> あ."""
        return self.get(kana).base

    def apply_diacritic(self, kana: str, mark: DiacriticClass) -> str:
        """Attach a mark to a base syllable: (か, dakuten) -> が."""
        rec = self.get(kana)
        derived = self._derived.get(rec.character, {}).get(mark)
        if derived is None:
            raise DiacriticNotApplicableError(
                f"{mark.value} does not apply to {kana!r}"
            )
        return derived

    def derived_forms(self, kana: str) -> list[str]:
        """Derived characters of a base syllable, in modifier-cycle order."""
        forms = self._derived.get(kana, {})
        return [forms[cls] for cls in DERIVED_ORDER if cls in forms]

    # -- transliteration -------------------------------------------------

    def romaji_to_kana(self, text: str) -> str:
        """Parse lowercase romaji into hiragana, greedy longest match first.

        "nn" spells ん, a doubled consonant spells a leading っ, and the
        palatalized forms ("kya") map to their two-glyph syllables.  The
        first position with no parse raises with its offset.
        """
        out: list[str] = []
        i, n = 0, len(text)
        while i < n:
            for width in range(_MAX_ROMAJI, 0, -1):
                kana = self._parse_map.get(text[i : i + width])
                if kana is not None:
                    out.append(kana)
                    i += width
                    break
            else:
                c = text[i]
                if i + 1 < n and c == text[i + 1] and c in _GEMINABLE:
                    out.append("っ")
                    i += 1
                else:
                    raise TransliterationError(text, i)
        return "".join(out)

    def kana_to_romaji(self, reading: str) -> str:
        """Spell a kana reading in romaji so that romaji_to_kana inverts it.

        ん is always written "nn" and っ doubles the next consonant where
        that is unambiguous, falling back to "xtu".
        """
        units = self._reading_units(reading)
        out: list[str] = []
        for idx, unit in enumerate(units):
            if unit == "ん":
                out.append("nn")
            elif unit == "っ":
                nxt = units[idx + 1] if idx + 1 < len(units) else None
                doubled = None
                if nxt is not None and nxt not in ("ん", "っ"):
                    first = self.get(nxt).romaji[0]
                    if first in _GEMINABLE:
                        doubled = first
                out.append(doubled if doubled is not None else "xtu")
            else:
                out.append(self.get(unit).romaji)
        return "".join(out)

    def _reading_units(self, reading: str) -> list[str]:
        """Split a glyph string into syllable units, merging palatalized pairs."""
        units: list[str] = []
        i = 0
        while i < len(reading):
            pair = reading[i : i + 2]
            if len(pair) == 2 and pair[1] in SMALL_YOON and pair in self._records:
                units.append(pair)
                i += 2
                continue
            ch = reading[i]
            if ch not in self._records:
                raise UnknownKanaError(ch, position=i)
            units.append(ch)
            i += 1
        return units


def to_katakana(text: str) -> str:
    """Map hiragana glyphs to katakana, leaving everything else alone."""
    return "".join(
        chr(ord(c) + 0x60) if 0x3041 <= ord(c) <= 0x3096 else c for c in text
    )


def load_syllabary(text: str) -> Syllabary:
    """Parse syllabary data text (see data/syllabary.tsv for the format)."""
    records: list[KanaRecord] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 6:
            raise ParseError(f"expected 6 fields, got {len(fields)}", line=lineno)
        character, romaji, row, col, base, cls = fields
        if not character or len(character) > 2:
            raise ParseError(f"bad character field {character!r}", line=lineno)
        if not (1 <= len(romaji) <= _MAX_ROMAJI) or not romaji.isascii():
            raise ParseError(f"bad romaji field {romaji!r}", line=lineno)
        if cls not in _CLASS_BY_NAME:
            raise ParseError(f"unknown class {cls!r}", line=lineno)
        try:
            row_i, col_i = int(row), int(col)
        except ValueError:
            raise ParseError(f"bad matrix position {row!r},{col!r}", line=lineno)
        if row_i < 0 or col_i < 0:
            raise ParseError(f"negative matrix position", line=lineno)
        records.append(
            KanaRecord(
                character=character,
                romaji=romaji,
                row=row_i,
                col=col_i,
                base=base,
                diacritic=_CLASS_BY_NAME[cls],
                is_exception=character in SHAPE_EXCEPTIONS,
            )
        )
    return Syllabary(records)


@lru_cache(maxsize=1)
def default_syllabary() -> Syllabary:
    """The packaged 108-syllable table."""
    text = (resources.files(__package__) / "data" / "syllabary.tsv").read_text(
        encoding="utf-8"
    )
    return load_syllabary(text)
