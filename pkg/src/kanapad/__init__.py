"""Word-level disambiguation for 12-key Japanese kana input.

Each digit key carries a row of kana; a word is typed with one keystroke
per kana and the whole sequence is resolved against a frequency-ranked
lexicon.  The package also ships the multi-tap baseline, efficiency
metrics, a binary index format, a CLI, and an HTTP session service.
"""

from .engine import Mode, Session, Snapshot, Stage, new_session
from .layout import KeypadLayout, default_layout, load_layout
from .lexicon import (
    KeyTrie,
    Lexicon,
    LexiconEntry,
    WrittenForm,
    build_index,
    deserialize_index,
    parse_lexicon,
)
from .metrics import (
    ambiguity_stats,
    compare_methods,
    eval_disambiguation,
    eval_multitap,
    parse_corpus,
)
from .syllabary import (
    DiacriticClass,
    KanaRecord,
    Syllabary,
    default_syllabary,
    load_syllabary,
    to_katakana,
)

__version__ = "0.1.0"

__all__ = [
    "DiacriticClass",
    "KanaRecord",
    "KeyTrie",
    "KeypadLayout",
    "Lexicon",
    "LexiconEntry",
    "Mode",
    "Session",
    "Snapshot",
    "Stage",
    "Syllabary",
    "WrittenForm",
    "ambiguity_stats",
    "build_index",
    "compare_methods",
    "default_layout",
    "default_syllabary",
    "deserialize_index",
    "eval_disambiguation",
    "eval_multitap",
    "load_layout",
    "load_syllabary",
    "new_session",
    "parse_corpus",
    "parse_lexicon",
    "to_katakana",
]
