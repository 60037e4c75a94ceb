"""Keystroke-level input sessions.

A session runs in one of two modes.  Disambiguation mode takes one digit per
kana and resolves the whole pending sequence against the trie: exact matches
first, then longer-word predictions, each list best-first.  The select key
starts and advances candidate cycling, the convert key cycles a selected
candidate's written forms, and commit emits text.  Multi-tap mode is the
letter-by-letter baseline: repeated taps walk the key's cycle, the modifier
key walks the diacritic ring, and ADVANCE (or a key change) finalizes the
kana.  Every transition is a pure function of the prior state and the event,
so replaying an event tape is deterministic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import LayoutMismatchError, NoMatchError, ParseError, StateError
from .layout import DIGIT_KEYS, SYMBOL_KEY, KeypadLayout
from .lexicon import KeyTrie, LexiconEntry

PREDICTION_LIMIT = 10


class Mode(enum.Enum):
    DISAMBIGUATION = "disambiguation"
    MULTITAP = "multitap"


class Stage(enum.Enum):
    ENTERING = "entering"
    CYCLING_READING = "cycling_reading"
    CYCLING_FORM = "cycling_form"


class Source(enum.Enum):
    EXACT = "exact"
    PREDICTION = "prediction"


@dataclass(frozen=True)
class Candidate:
    reading: str
    source: Source
    frequency: int
    entry: LexiconEntry = field(repr=False)


@dataclass(frozen=True)
class Snapshot:
    """What a limited display shows: text, pending echo, a candidate window."""

    committed: str
    pending: str
    candidates: tuple[Candidate, ...]
    cursor: int | None


class Session:
    """One input session; all methods mutate in place and return emissions."""

    def __init__(
        self,
        trie: KeyTrie,
        layout: KeypadLayout,
        mode: Mode = Mode.DISAMBIGUATION,
        prediction_limit: int = PREDICTION_LIMIT,
    ):
        if trie.layout.content_hash != layout.content_hash:
            raise LayoutMismatchError(
                f"index compiled for layout {trie.layout.content_hash}, "
                f"session given {layout.content_hash}"
            )
        self.trie = trie
        self.layout = layout
        self.mode = mode
        self.prediction_limit = prediction_limit
        self.committed = ""
        self.pending = ""
        self.candidates: list[Candidate] = []
        self.cursor: int | None = None
        self.stage = Stage.ENTERING
        self.form_cursor: int | None = None
        self._tap: tuple[str, int, int] | None = None  # key, taps, modifier presses

    # -- shared ------------------------------------------------------------

    def state_key(self) -> tuple:
        """Full value identity of the session state (for equality checks)."""
        return (
            self.mode,
            self.committed,
            self.pending,
            tuple(self.candidates),
            self.cursor,
            self.stage,
            self.form_cursor,
            self._tap,
        )

    def press_mode(self) -> None:
        """Toggle modes, dropping any uncommitted pending input."""
        self.mode = (
            Mode.MULTITAP if self.mode is Mode.DISAMBIGUATION else Mode.DISAMBIGUATION
        )
        self.pending = ""
        self.candidates = []
        self.cursor = None
        self.stage = Stage.ENTERING
        self.form_cursor = None
        self._tap = None

    def press_backspace(self) -> None:
        """Undo one step; on empty input, delete the last committed glyph."""
        if self.mode is Mode.MULTITAP:
            if self._tap is not None:
                self._tap = None
            elif self.committed:
                self.committed = self.committed[:-1]
            return
        if self.stage is not Stage.ENTERING:
            self.stage = Stage.ENTERING
            self.cursor = None
            self.form_cursor = None
        elif self.pending:
            self.pending = self.pending[:-1]
            self._recompute()
        elif self.committed:
            self.committed = self.committed[:-1]

    # -- disambiguation ------------------------------------------------------

    def _require(self, mode: Mode, what: str) -> None:
        if self.mode is not mode:
            raise StateError(f"{what} is not available in {self.mode.value} mode")

    def _recompute(self) -> None:
        if not self.pending:
            self.candidates = []
            return
        exact = self.trie.exact_matches(self.pending)
        predicted = self.trie.prefix_predictions(self.pending, self.prediction_limit)
        self.candidates = [
            Candidate(e.reading, Source.EXACT, e.frequency, e) for e in exact
        ] + [Candidate(e.reading, Source.PREDICTION, e.frequency, e) for e in predicted]

    def press_digit(self, key: str) -> str:
        """Append one digit; a digit while cycling first commits the choice."""
        self._require(Mode.DISAMBIGUATION, "digit entry")
        if len(key) != 1 or key not in DIGIT_KEYS:
            raise StateError(f"not a digit key: {key!r}")
        emitted = ""
        if self.stage is not Stage.ENTERING:
            emitted = self.press_commit()
        self.pending += key
        self._recompute()
        return emitted

    def press_select(self) -> None:
        """Start candidate cycling, or step the cursor (wrapping)."""
        self._require(Mode.DISAMBIGUATION, "select")
        if not self.pending:
            raise StateError("select with no pending input")
        if not self.candidates:
            raise NoMatchError(f"no candidate matches keys {self.pending}")
        if self.stage is Stage.ENTERING:
            self.stage = Stage.CYCLING_READING
            self.cursor = 0
        else:
            assert self.cursor is not None
            self.cursor = (self.cursor + 1) % len(self.candidates)
            self.stage = Stage.CYCLING_READING
            self.form_cursor = None

    def _selected(self) -> Candidate:
        assert self.cursor is not None
        return self.candidates[self.cursor]

    def form_ring(self) -> list[str]:
        """Commit choices for the selected candidate: plain reading + forms."""
        candidate = self._selected()
        return [candidate.reading, *(f.surface for f in candidate.entry.forms)]

    def press_convert(self) -> None:
        """Cycle the selected candidate's written forms, wrapping to plain."""
        self._require(Mode.DISAMBIGUATION, "convert")
        if self.stage is Stage.CYCLING_READING:
            self.stage = Stage.CYCLING_FORM
            self.form_cursor = 1 if self._selected().entry.forms else 0
        elif self.stage is Stage.CYCLING_FORM:
            assert self.form_cursor is not None
            self.form_cursor = (self.form_cursor + 1) % len(self.form_ring())
        else:
            raise StateError("convert before selecting a candidate")

    def press_commit(self) -> str:
        """Emit the current choice (the top candidate while still entering)."""
        if self.mode is Mode.MULTITAP:
            return self.press_advance()
        if self.stage is Stage.ENTERING:
            if not self.pending or not self.candidates:
                return ""
            emitted = self.candidates[0].reading
        elif self.stage is Stage.CYCLING_READING:
            emitted = self._selected().reading
        else:
            assert self.form_cursor is not None
            emitted = self.form_ring()[self.form_cursor]
        self.committed += emitted
        self.pending = ""
        self.candidates = []
        self.cursor = None
        self.stage = Stage.ENTERING
        self.form_cursor = None
        return emitted

    # -- multi-tap -----------------------------------------------------------

    def multitap_press(self, key: str) -> None:
        """Tap a character key or the modifier in multi-tap mode."""
        self._require(Mode.MULTITAP, "multi-tap entry")
        if key == self.layout.modifier_key:
            if self._tap is None:
                return
            if len(self._current_ring()) > 1:
                tap_key, taps, mods = self._tap
                self._tap = (tap_key, taps, mods + 1)
            return
        if len(key) != 1 or (key not in DIGIT_KEYS and key != SYMBOL_KEY):
            raise StateError(f"not a character key: {key!r}")
        if not self._cycle_of(key):
            return
        if self._tap is None:
            self._tap = (key, 1, 0)
            return
        tap_key, taps, mods = self._tap
        if tap_key == key and mods == 0:
            self._tap = (key, taps + 1, 0)
        else:
            self.committed += self._tap_kana()
            self._tap = (key, 1, 0)

    def press_advance(self) -> str:
        """Finalize the kana being tapped."""
        self._require(Mode.MULTITAP, "advance")
        if self._tap is None:
            return ""
        kana = self._tap_kana()
        self.committed += kana
        self._tap = None
        return kana

    def _cycle_of(self, key: str) -> str:
        return self.layout.symbols if key == SYMBOL_KEY else self.layout.cycles[key]

    def _cycle_element(self) -> str:
        assert self._tap is not None
        key, taps, _ = self._tap
        cycle = self._cycle_of(key)
        return cycle[(taps - 1) % len(cycle)]

    def _current_ring(self) -> list[str]:
        element = self._cycle_element()
        if element not in self.layout.syllabary:
            return [element]
        return self.layout.modifier_ring(element)

    def _tap_kana(self) -> str:
        assert self._tap is not None
        _, _, mods = self._tap
        element = self._cycle_element()
        ring = self._current_ring()
        return ring[(ring.index(element) + mods) % len(ring)]

    # -- display -------------------------------------------------------------

    @property
    def pending_display(self) -> str:
        """What the entry area echoes: digits, or the kana being tapped."""
        if self.mode is Mode.MULTITAP:
            return self._tap_kana() if self._tap is not None else ""
        return self.pending

    def snapshot(self, window: int) -> Snapshot:
        """A display-sized view: at most `window` candidates around the cursor."""
        if window < 1:
            raise ValueError(f"window must be positive, got {window}")
        if self.cursor is None:
            visible = tuple(self.candidates[:window])
            cursor = None
        else:
            start = min(
                max(self.cursor - (window - 1) // 2, 0),
                max(len(self.candidates) - window, 0),
            )
            visible = tuple(self.candidates[start : start + window])
            cursor = self.cursor - start
        return Snapshot(self.committed, self.pending_display, visible, cursor)

    # -- events ----------------------------------------------------------------

    def apply(self, event: tuple[str, ...]) -> str:
        """Apply one event tuple; returns any text emitted by it."""
        kind = event[0]
        if kind == "digit":
            key = event[1]
            if self.mode is Mode.MULTITAP:
                self.multitap_press(key)
                return ""
            return self.press_digit(key)
        if kind == "select":
            self.press_select()
            return ""
        if kind == "convert":
            self.press_convert()
            return ""
        if kind == "commit":
            return self.press_commit()
        if kind == "backspace":
            self.press_backspace()
            return ""
        if kind == "advance":
            return self.press_advance()
        if kind == "mode":
            self.press_mode()
            return ""
        raise StateError(f"unknown event {kind!r}")


def new_session(
    trie: KeyTrie, layout: KeypadLayout, mode: Mode = Mode.DISAMBIGUATION
) -> Session:
    """Open a session, checking the index was compiled for this layout."""
    return Session(trie, layout, mode)


# -- event tapes ---------------------------------------------------------------

_NAMED_EVENTS = {
    "SEL": ("select",),
    "CNV": ("convert",),
    "COM": ("commit",),
    "BSP": ("backspace",),
    "ADV": ("advance",),
    "MODE": ("mode",),
}

_KEY_LABELS = DIGIT_KEYS + "*" + SYMBOL_KEY


def parse_tape(text: str) -> list[tuple[str, ...]]:
    """Parse an event tape: one event per line (D <key>, SEL, CNV, COM,
    BSP, ADV, MODE); blank lines and # comments are skipped."""
    events: list[tuple[str, ...]] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if (
            tokens[0] == "D"
            and len(tokens) == 2
            and len(tokens[1]) == 1
            and tokens[1] in _KEY_LABELS
        ):
            events.append(("digit", tokens[1]))
        elif (
            len(tokens) == 1
            and len(tokens[0]) == 2
            and tokens[0][0] == "D"
            and tokens[0][1] in _KEY_LABELS
        ):
            events.append(("digit", tokens[0][1]))
        elif len(tokens) == 1 and tokens[0] in _NAMED_EVENTS:
            events.append(_NAMED_EVENTS[tokens[0]])
        else:
            raise ParseError(f"bad event {line!r}", line=lineno)
    return events


def event_label(event: tuple[str, ...]) -> str:
    """Canonical tape spelling of an event."""
    if event[0] == "digit":
        return f"D {event[1]}"
    for label, named in _NAMED_EVENTS.items():
        if named == event:
            return label
    raise StateError(f"unknown event {event!r}")


def state_digest(session: Session) -> str:
    """One-line summary used by tape replay output."""
    if session.mode is Mode.MULTITAP:
        stage = "multitap"
    else:
        stage = session.stage.value
    pending = session.pending_display or "-"
    cursor = "-" if session.cursor is None else str(session.cursor)
    return f"stage={stage}\tpending={pending}\tcursor={cursor}"


def run_tape(session: Session, events: list[tuple[str, ...]]) -> str:
    """Replay events, returning one digest line per event plus the final text."""
    lines = []
    for event in events:
        session.apply(event)
        lines.append(f"{event_label(event)}\t{state_digest(session)}")
    lines.append(f"final\t{session.committed}")
    return "\n".join(lines) + "\n"
