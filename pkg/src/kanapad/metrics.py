"""Text-entry efficiency measurements.

Keystrokes per character (KSPC) is kept as an exact fraction: total key
presses over total kana produced.  Disambiguation charges one digit per
kana, the select presses needed to reach the word's rank (none for rank 1),
and one commit.  Multi-tap charges the tap/modifier expansion plus one
ADVANCE per kana.  Reports render as fixed-order key: value lines plus a
tab-separated histogram block so output is stable byte for byte.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .layout import KeypadLayout
from .lexicon import KeyTrie
from .syllabary import Syllabary, default_syllabary


@dataclass(frozen=True)
class CorpusRecord:
    """One evaluation word and how many times it is typed."""

    reading: str
    count: int


def parse_corpus(text: str, syllabary: Syllabary | None = None) -> list[CorpusRecord]:
    """Parse corpus text: reading, count (tab-separated)."""
    syllabary = syllabary or default_syllabary()
    records: list[CorpusRecord] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise ParseError(f"expected 2 fields, got {len(fields)}", line=lineno)
        reading, count_text = fields
        for glyph in reading:
            if glyph not in syllabary:
                raise ParseError(
                    f"reading {reading!r} contains non-kana {glyph!r}", line=lineno
                )
        try:
            count = int(count_text)
        except ValueError:
            raise ParseError(f"bad count {count_text!r}", line=lineno)
        if count < 1:
            raise ParseError(f"count must be positive, got {count}", line=lineno)
        records.append(CorpusRecord(reading, count))
    return records


@dataclass(frozen=True)
class EvalReport:
    """Press totals for one entry method over a corpus."""

    method: str
    total_presses: int
    total_kana: int
    kspc: Fraction | None
    rank_histogram: dict[int, int]
    no_match_words: tuple[str, ...]

    @property
    def no_match_count(self) -> int:
        return len(self.no_match_words)

    def render(self) -> str:
        lines = [
            f"method: {self.method}",
            f"presses: {self.total_presses}",
            f"kana: {self.total_kana}",
            f"kspc: {_fraction_text(self.kspc)}",
            f"kspc_decimal: {_decimal_text(self.kspc)}",
            f"no_match: {self.no_match_count}",
            "no_match_words: "
            + (" ".join(self.no_match_words) if self.no_match_words else "-"),
            "rank_histogram:",
        ]
        for rank in sorted(self.rank_histogram):
            lines.append(f"{rank}\t{self.rank_histogram[rank]}")
        return "\n".join(lines) + "\n"


def _fraction_text(value: Fraction | None) -> str:
    if value is None:
        return "-"
    return f"{value.numerator}/{value.denominator}"


def _decimal_text(value: Fraction | None) -> str:
    return "-" if value is None else f"{float(value):.4f}"


def disambiguation_presses(rank: int, kana_length: int) -> int:
    """Presses to type one word landing at `rank` among its exact matches."""
    selects = 0 if rank == 1 else rank
    return kana_length + selects + 1


def eval_disambiguation(
    trie: KeyTrie, layout: KeypadLayout, corpus: list[CorpusRecord]
) -> EvalReport:
    """Charge digits + selects + commit per word; absent words are excluded."""
    presses = 0
    kana = 0
    histogram: Counter[int] = Counter()
    no_match: list[str] = []
    for record in corpus:
        sequence = layout.encode_reading(record.reading)
        matches = trie.exact_matches(sequence)
        rank = next(
            (i + 1 for i, e in enumerate(matches) if e.reading == record.reading),
            None,
        )
        if rank is None:
            no_match.append(record.reading)
            continue
        presses += disambiguation_presses(rank, len(record.reading)) * record.count
        kana += len(record.reading) * record.count
        histogram[rank] += record.count
    return EvalReport(
        method="disambiguation",
        total_presses=presses,
        total_kana=kana,
        kspc=Fraction(presses, kana) if kana else None,
        rank_histogram=dict(histogram),
        no_match_words=tuple(sorted(set(no_match))),
    )


def eval_multitap(layout: KeypadLayout, corpus: list[CorpusRecord]) -> EvalReport:
    """Charge the tap expansion plus one ADVANCE per kana."""
    presses = 0
    kana = 0
    for record in corpus:
        per_word = layout.multitap_cost(record.reading) + len(record.reading)
        presses += per_word * record.count
        kana += len(record.reading) * record.count
    return EvalReport(
        method="multitap",
        total_presses=presses,
        total_kana=kana,
        kspc=Fraction(presses, kana) if kana else None,
        rank_histogram={},
        no_match_words=(),
    )


@dataclass(frozen=True)
class AmbiguityReport:
    """Collision statistics over the trie's populated nodes."""

    max_class_size: int
    mean_class_size: Fraction | None
    ambiguous_fraction: Fraction | None
    class_count: int

    def render(self) -> str:
        mean = _fraction_text(self.mean_class_size)
        fraction = _fraction_text(self.ambiguous_fraction)
        return (
            f"classes: {self.class_count}\n"
            f"max_class_size: {self.max_class_size}\n"
            f"mean_class_size: {mean}\n"
            f"ambiguous_fraction: {fraction}\n"
        )


def ambiguity_stats(trie: KeyTrie) -> AmbiguityReport:
    """Size of each key-sequence collision class, summarized."""
    sizes = [len(entries) for _, entries in trie.populated_sequences()]
    total_entries = sum(sizes)
    ambiguous = sum(size for size in sizes if size >= 2)
    return AmbiguityReport(
        max_class_size=max(sizes, default=0),
        mean_class_size=Fraction(total_entries, len(sizes)) if sizes else None,
        ambiguous_fraction=Fraction(ambiguous, total_entries)
        if total_entries
        else None,
        class_count=len(sizes),
    )


@dataclass(frozen=True)
class ComparisonReport:
    """Both entry methods over one corpus, plus a romaji letter count.

    The romaji column is reference-only: full-keyboard letter presses,
    not a keypad method.
    """

    disambiguation: EvalReport
    multitap: EvalReport
    romaji_letters: int
    romaji_kana: int

    @property
    def romaji_kspc(self) -> Fraction | None:
        if not self.romaji_kana:
            return None
        return Fraction(self.romaji_letters, self.romaji_kana)

    def render(self) -> str:
        return (
            "== disambiguation ==\n"
            + self.disambiguation.render()
            + "== multitap ==\n"
            + self.multitap.render()
            + "== romaji_reference ==\n"
            + f"letters: {self.romaji_letters}\n"
            + f"kana: {self.romaji_kana}\n"
            + f"kspc: {_fraction_text(self.romaji_kspc)}\n"
            + f"kspc_decimal: {_decimal_text(self.romaji_kspc)}\n"
        )


def compare_methods(
    trie: KeyTrie, layout: KeypadLayout, corpus: list[CorpusRecord]
) -> ComparisonReport:
    """Evaluate both methods on the same corpus."""
    syllabary = layout.syllabary
    letters = 0
    kana = 0
    for record in corpus:
        letters += len(syllabary.kana_to_romaji(record.reading)) * record.count
        kana += len(record.reading) * record.count
    return ComparisonReport(
        disambiguation=eval_disambiguation(trie, layout, corpus),
        multitap=eval_multitap(layout, corpus),
        romaji_letters=letters,
        romaji_kana=kana,
    )
