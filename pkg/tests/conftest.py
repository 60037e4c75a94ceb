from __future__ import annotations

import random
from pathlib import Path

import pytest

from kanapad.layout import KeypadLayout, default_layout
from kanapad.lexicon import Lexicon, LexiconEntry, WrittenForm, build_index
from kanapad.syllabary import default_syllabary

DATA_DIR = Path(__file__).parent / "data"
GOLDEN_DIR = Path(__file__).parent / "goldens"

FIXTURE_DICT_PATH = DATA_DIR / "fixture.dict"


@pytest.fixture(scope="session")
def syllabary():
    return default_syllabary()


@pytest.fixture(scope="session")
def layout():
    return default_layout()


@pytest.fixture(scope="session")
def fixture_lexicon(syllabary):
    from kanapad.lexicon import parse_lexicon

    return parse_lexicon(FIXTURE_DICT_PATH.read_text(encoding="utf-8"), syllabary)


@pytest.fixture(scope="session")
def fixture_trie(fixture_lexicon, layout):
    return build_index(fixture_lexicon, layout)


# -- oracles -------------------------------------------------------------
# Brute-force reference implementations, independent of the trie: plain
# scans over the lexicon with the ordering rule applied directly.


def entry_sort_key(entry: LexiconEntry):
    return (-entry.frequency, entry.reading)


def brute_exact(lexicon: Lexicon, layout: KeypadLayout, sequence: str):
    hits = [e for e in lexicon if layout.encode_reading(e.reading) == sequence]
    return sorted(hits, key=entry_sort_key)


def brute_prefix(lexicon: Lexicon, layout: KeypadLayout, sequence: str, limit=None):
    hits = []
    for entry in lexicon:
        encoded = layout.encode_reading(entry.reading)
        if len(encoded) > len(sequence) and encoded.startswith(sequence):
            hits.append(entry)
    hits.sort(key=entry_sort_key)
    return hits if limit is None else hits[:limit]


# -- random data ------------------------------------------------------------


def single_glyphs(syllabary) -> list[str]:
    return [r.character for r in syllabary if len(r.character) == 1]


def random_lexicon(
    rng: random.Random,
    syllabary,
    max_entries: int = 200,
    max_reading_len: int = 6,
    min_reading_len: int = 1,
) -> Lexicon:
    glyphs = single_glyphs(syllabary)
    readings = set()
    size = rng.randint(1, max_entries)
    while len(readings) < size:
        length = rng.randint(min_reading_len, max_reading_len)
        readings.add("".join(rng.choice(glyphs) for _ in range(length)))
    entries = []
    for reading in readings:
        forms = ()
        if rng.random() < 0.3:
            forms = tuple(
                sorted(
                    (
                        WrittenForm(f"form{i}", rng.randint(0, 5000))
                        for i in range(rng.randint(1, 3))
                    ),
                    key=lambda f: (-f.weight, f.surface),
                )
            )
        entries.append(LexiconEntry(reading, rng.randint(0, 9999), forms))
    return Lexicon(entries)
