"""Frequency-ranked word list and the digit-sequence trie built from it.

A lexicon entry pairs a kana reading with a usage frequency and optional
written forms (kanji spellings with their own weights).  The trie indexes
entries by their digit encoding under a given key layout: one node per
key sequence, entries stored at the node their full encoding reaches,
pre-sorted by frequency.  The trie serializes to a versioned binary stream
that embeds the layout it was compiled against.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from .errors import (
    BadMagicError,
    BadVersionError,
    ParseError,
    TruncatedIndexError,
    ValidationError,
)
from .layout import KeypadLayout, load_layout
from .syllabary import Syllabary, default_syllabary

MAGIC = b"KTRI"
FORMAT_VERSION = 1

_U8 = struct.Struct("<B")
_U16 = struct.Struct("<H")
_U32 = struct.Struct("<I")
_U64 = struct.Struct("<Q")


@dataclass(frozen=True)
class WrittenForm:
    """One way to write a reading, with a selection weight."""

    surface: str
    weight: int


@dataclass(frozen=True)
class LexiconEntry:
    """A reading, how often it occurs, and its written forms (heaviest first)."""

    reading: str
    frequency: int
    forms: tuple[WrittenForm, ...] = ()


def _entry_order(entry: LexiconEntry) -> tuple[int, str]:
    return (-entry.frequency, entry.reading)


class Lexicon:
    """Entries unique by reading, in deterministic (sorted) order."""

    def __init__(self, entries: list[LexiconEntry]):
        self._by_reading: dict[str, LexiconEntry] = {}
        for entry in sorted(entries, key=_entry_order):
            if entry.reading in self._by_reading:
                raise ValidationError(f"duplicate reading {entry.reading!r}")
            self._by_reading[entry.reading] = entry

    def __len__(self) -> int:
        return len(self._by_reading)

    def __iter__(self):
        return iter(self._by_reading.values())

    def __contains__(self, reading: str) -> bool:
        return reading in self._by_reading

    def get(self, reading: str) -> LexiconEntry | None:
        return self._by_reading.get(reading)


def parse_lexicon(text: str, syllabary: Syllabary | None = None) -> Lexicon:
    """Parse dictionary text: reading, frequency, optional form:weight list.

    Duplicate readings merge by summing frequencies and pooling forms.
    Readings must consist entirely of syllabary kana.
    """
    syllabary = syllabary or default_syllabary()
    merged: dict[str, tuple[int, list[WrittenForm]]] = {}
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) not in (2, 3):
            raise ParseError(f"expected 2 or 3 fields, got {len(fields)}", line=lineno)
        reading, freq_text = fields[0], fields[1]
        if not reading:
            raise ParseError("empty reading", line=lineno)
        for glyph in reading:
            if glyph not in syllabary:
                raise ParseError(
                    f"reading {reading!r} contains non-kana {glyph!r}", line=lineno
                )
        try:
            frequency = int(freq_text)
        except ValueError:
            raise ParseError(f"bad frequency {freq_text!r}", line=lineno)
        if frequency < 0:
            raise ParseError(f"negative frequency {frequency}", line=lineno)
        forms: list[WrittenForm] = []
        if len(fields) == 3 and fields[2]:
            for item in fields[2].split(","):
                surface, sep, weight_text = item.rpartition(":")
                if not sep or not surface:
                    raise ParseError(f"bad form {item!r}", line=lineno)
                try:
                    weight = int(weight_text)
                except ValueError:
                    raise ParseError(f"bad form weight {item!r}", line=lineno)
                if weight < 0:
                    raise ParseError(f"negative form weight {item!r}", line=lineno)
                forms.append(WrittenForm(surface, weight))
        if reading in merged:
            old_freq, old_forms = merged[reading]
            merged[reading] = (old_freq + frequency, old_forms + forms)
        else:
            merged[reading] = (frequency, forms)
    entries = [
        LexiconEntry(
            reading,
            frequency,
            tuple(sorted(forms, key=lambda f: (-f.weight, f.surface))),
        )
        for reading, (frequency, forms) in merged.items()
    ]
    return Lexicon(entries)


class _Node:
    __slots__ = ("children", "entries")

    def __init__(self):
        self.children: dict[str, _Node] = {}
        self.entries: list[LexiconEntry] = []


class KeyTrie:
    """Digit-sequence index over a lexicon, bound to the layout it used."""

    def __init__(self, root: _Node, layout: KeypadLayout, entry_count: int):
        self._root = root
        self.layout = layout
        self.entry_count = entry_count

    def _walk(self, sequence: str) -> _Node | None:
        node = self._root
        for key in sequence:
            node = node.children.get(key)
            if node is None:
                return None
        return node

    def exact_matches(self, sequence: str) -> list[LexiconEntry]:
        """Entries whose full encoding equals the sequence, best first."""
        node = self._walk(sequence)
        return list(node.entries) if node else []

    def prefix_predictions(self, sequence: str, limit: int) -> list[LexiconEntry]:
        """Entries whose encoding strictly extends the sequence, best first.

        Exact matches of the sequence itself are never included.
        """
        if limit < 1:
            raise ValueError(f"prediction limit must be positive, got {limit}")
        node = self._walk(sequence)
        if node is None:
            return []
        found: list[LexiconEntry] = []
        stack = list(node.children.values())
        while stack:
            child = stack.pop()
            found.extend(child.entries)
            stack.extend(child.children.values())
        found.sort(key=_entry_order)
        return found[:limit]

    def populated_sequences(self):
        """Yield (sequence, entries) for every node holding entries."""
        stack = [("", self._root)]
        while stack:
            sequence, node = stack.pop()
            if node.entries:
                yield sequence, list(node.entries)
            for key, child in node.children.items():
                stack.append((sequence + key, child))

    # -- serialization ---------------------------------------------------

    def serialize(self) -> bytes:
        """Little-endian binary stream: magic, version, layout, node tree."""
        out = bytearray()
        out += MAGIC
        out += _U8.pack(FORMAT_VERSION)
        layout_bytes = self.layout.source.encode("utf-8")
        out += _U32.pack(len(layout_bytes))
        out += layout_bytes
        self._write_node(out, self._root)
        return bytes(out)

    def _write_node(self, out: bytearray, node: _Node) -> None:
        out += _U16.pack(len(node.entries))
        for entry in node.entries:
            _write_str(out, entry.reading)
            out += _U64.pack(entry.frequency)
            out += _U16.pack(len(entry.forms))
            for form in entry.forms:
                _write_str(out, form.surface)
                out += _U64.pack(form.weight)
        children = sorted(node.children.items())
        out += _U8.pack(len(children))
        for key, child in children:
            out += _U8.pack(ord(key))
            self._write_node(out, child)


def _write_str(out: bytearray, text: str) -> None:
    data = text.encode("utf-8")
    out += _U16.pack(len(data))
    out += data


def build_index(lexicon: Lexicon, layout: KeypadLayout) -> KeyTrie:
    """Index every entry at the node its encoded reading reaches."""
    root = _Node()
    for entry in lexicon:
        node = root
        for key in layout.encode_reading(entry.reading):
            node = node.children.setdefault(key, _Node())
        node.entries.append(entry)
    count = 0
    stack = [root]
    while stack:
        node = stack.pop()
        node.entries.sort(key=_entry_order)
        count += len(node.entries)
        stack.extend(node.children.values())
    return KeyTrie(root, layout, count)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, size: int) -> bytes:
        if self.pos + size > len(self.data):
            raise TruncatedIndexError(
                f"needed {size} bytes at offset {self.pos}, "
                f"only {len(self.data) - self.pos} left"
            )
        chunk = self.data[self.pos : self.pos + size]
        self.pos += size
        return chunk

    def u8(self) -> int:
        return _U8.unpack(self.take(1))[0]

    def u16(self) -> int:
        return _U16.unpack(self.take(2))[0]

    def u32(self) -> int:
        return _U32.unpack(self.take(4))[0]

    def u64(self) -> int:
        return _U64.unpack(self.take(8))[0]

    def string(self) -> str:
        return self.take(self.u16()).decode("utf-8")


def deserialize_index(data: bytes, syllabary: Syllabary | None = None) -> KeyTrie:
    """Decode a serialized index, rebuilding its embedded layout."""
    reader = _Reader(data)
    magic = reader.take(4)
    if magic != MAGIC:
        raise BadMagicError(f"not an index file (magic {magic!r})")
    version = reader.u8()
    if version != FORMAT_VERSION:
        raise BadVersionError(f"unsupported index version {version}")
    layout_text = reader.take(reader.u32()).decode("utf-8")
    layout = load_layout(layout_text, syllabary or default_syllabary())
    count = 0

    def read_node() -> _Node:
        nonlocal count
        node = _Node()
        for _ in range(reader.u16()):
            reading = reader.string()
            frequency = reader.u64()
            forms = tuple(
                WrittenForm(reader.string(), reader.u64())
                for _ in range(reader.u16())
            )
            node.entries.append(LexiconEntry(reading, frequency, forms))
            count += 1
        for _ in range(reader.u8()):
            key = chr(reader.u8())
            node.children[key] = read_node()
        return node

    root = read_node()
    if reader.pos != len(data):
        raise TruncatedIndexError(
            f"{len(data) - reader.pos} trailing bytes after the node tree"
        )
    return KeyTrie(root, layout, count)
