from __future__ import annotations

import random

import pytest

from kanapad.engine import (
    Mode,
    Session,
    Source,
    Stage,
    event_label,
    new_session,
    parse_tape,
    run_tape,
)
from kanapad.errors import (
    LayoutMismatchError,
    NoMatchError,
    ParseError,
    StateError,
)
from kanapad.layout import load_layout
from kanapad.lexicon import build_index, parse_lexicon

from conftest import random_lexicon
from test_layout import MINIMAL_LINES


def press_digits(session: Session, keys: str) -> None:
    for key in keys:
        session.press_digit(key)


@pytest.fixture
def session(fixture_trie, layout) -> Session:
    return new_session(fixture_trie, layout)


# -- candidate resolution ----------------------------------------------------


def test_digits_resolve_exacts_then_predictions(session):
    press_digits(session, "13")
    assert session.pending == "13"
    assert [(c.reading, c.source) for c in session.candidates] == [
        ("あさ", Source.EXACT),
        ("いし", Source.EXACT),
        ("あさひ", Source.PREDICTION),
    ]


def test_commit_without_select_takes_top_candidate(session):
    press_digits(session, "13")
    assert session.press_commit() == "あさ"
    assert session.committed == "あさ"
    assert session.pending == ""
    assert session.stage is Stage.ENTERING


def test_select_cycles_to_second_candidate(session):
    press_digits(session, "13")
    session.press_select()
    assert session.cursor == 0
    session.press_select()
    assert session.cursor == 1
    assert session.press_commit() == "いし"


def test_select_wraps_past_the_last_candidate(session):
    press_digits(session, "13")
    for _ in range(3):
        session.press_select()
    assert session.cursor == 2
    session.press_select()
    assert session.cursor == 0


def test_select_requires_pending_input(session):
    with pytest.raises(StateError):
        session.press_select()


def test_select_with_no_candidates_leaves_state_unchanged(session):
    press_digits(session, "99")
    before = session.state_key()
    with pytest.raises(NoMatchError):
        session.press_select()
    assert session.state_key() == before


def test_commit_with_no_candidates_is_a_no_op(session):
    press_digits(session, "99")
    assert session.press_commit() == ""
    assert session.pending == "99"
    assert session.committed == ""


def test_commit_with_nothing_pending_is_a_no_op(session):
    assert session.press_commit() == ""


def test_digit_while_cycling_commits_first(session):
    press_digits(session, "13")
    session.press_select()
    session.press_select()
    emitted = session.press_digit("2")
    assert emitted == "いし"
    assert session.committed == "いし"
    assert session.pending == "2"
    assert session.stage is Stage.ENTERING


def test_digit_validates_the_key(session):
    with pytest.raises(StateError):
        session.press_digit("*")


# -- written forms -------------------------------------------------------------


def test_convert_enters_the_form_ring(session):
    press_digits(session, "13")
    session.press_select()
    session.press_select()
    assert session.form_ring() == ["いし", "石", "医師", "意思"]
    session.press_convert()
    assert session.stage is Stage.CYCLING_FORM
    assert session.form_cursor == 1
    assert session.press_commit() == "石"


def test_convert_wraps_back_to_the_plain_reading(session):
    press_digits(session, "13")
    session.press_select()
    session.press_select()
    for _ in range(4):
        session.press_convert()
    assert session.form_cursor == 0
    assert session.press_commit() == "いし"


def test_select_while_cycling_forms_moves_to_the_next_reading(session):
    press_digits(session, "13")
    session.press_select()
    session.press_convert()
    session.press_select()
    assert session.stage is Stage.CYCLING_READING
    assert session.cursor == 1
    assert session.form_cursor is None


def test_convert_before_selecting_is_an_error(session):
    press_digits(session, "13")
    with pytest.raises(StateError):
        session.press_convert()


def test_convert_with_no_forms_stays_on_the_reading(layout, syllabary):
    lexicon = parse_lexicon("あさ\t10\n", syllabary)
    session = new_session(build_index(lexicon, layout), layout)
    press_digits(session, "13")
    session.press_select()
    session.press_convert()
    assert session.form_cursor == 0
    assert session.press_commit() == "あさ"


def test_digit_while_cycling_forms_commits_the_form(session):
    press_digits(session, "13")
    session.press_select()
    session.press_select()
    session.press_convert()
    assert session.press_digit("1") == "石"
    assert session.committed == "石"


# -- backspace -----------------------------------------------------------------


def test_backspace_pops_one_digit_and_recomputes(session):
    press_digits(session, "12")
    assert [c.reading for c in session.candidates] == ["あか"]
    session.press_backspace()
    assert session.pending == "1"
    assert [c.reading for c in session.candidates] == ["あさ", "あか", "いし", "あさひ"]
    session.press_digit("3")
    session.press_select()
    assert session.press_commit() == "あさ"


def test_backspace_leaves_cycling_but_keeps_the_digits(session):
    press_digits(session, "13")
    session.press_select()
    session.press_backspace()
    assert session.stage is Stage.ENTERING
    assert session.pending == "13"
    assert session.cursor is None


def test_backspace_deletes_committed_text_when_idle(session):
    press_digits(session, "13")
    session.press_commit()
    session.press_backspace()
    assert session.committed == "あ"
    session.press_backspace()
    assert session.committed == ""
    session.press_backspace()
    assert session.state_key() == new_session(session.trie, session.layout).state_key()


def test_backspace_undoes_a_digit_exactly(session):
    press_digits(session, "1")
    before = session.state_key()
    session.press_digit("3")
    session.press_backspace()
    assert session.state_key() == before


# -- mode switching --------------------------------------------------------------


def test_mode_toggle_drops_uncommitted_state(session):
    press_digits(session, "13")
    session.press_commit()
    press_digits(session, "2")
    session.press_mode()
    assert session.mode is Mode.MULTITAP
    assert session.committed == "あさ"
    assert session.pending == ""
    assert session.candidates == []
    session.press_mode()
    assert session.mode is Mode.DISAMBIGUATION


def test_disambiguation_keys_are_rejected_in_multitap(session):
    session.press_mode()
    with pytest.raises(StateError):
        session.press_digit("1")
    with pytest.raises(StateError):
        session.press_select()


def test_multitap_keys_are_rejected_in_disambiguation(session):
    with pytest.raises(StateError):
        session.multitap_press("1")
    with pytest.raises(StateError):
        session.press_advance()


# -- multi-tap -------------------------------------------------------------------


def multitap(session: Session, presses: str) -> None:
    for key in presses:
        session.multitap_press(key)


def test_multitap_walks_the_key_cycle(session):
    session.press_mode()
    multitap(session, "11")
    assert session.pending_display == "い"
    assert session.press_advance() == "い"
    assert session.committed == "い"


def test_multitap_cycle_wraps(session):
    session.press_mode()
    multitap(session, "111111")
    assert session.pending_display == "あ"


def test_modifier_walks_the_diacritic_ring(session):
    session.press_mode()
    multitap(session, "66**")
    assert session.pending_display == "ぴ"
    multitap(session, "888*")
    assert session.committed == "ぴ"
    assert session.pending_display == "ょ"
    session.press_advance()
    assert session.committed == "ぴょ"


def test_key_change_finalizes_the_previous_kana(session):
    session.press_mode()
    multitap(session, "12")
    assert session.committed == "あ"
    assert session.pending_display == "か"


def test_plain_press_after_modifier_finalizes(session):
    session.press_mode()
    multitap(session, "6*6")
    assert session.committed == "ば"
    assert session.pending_display == "は"


def test_modifier_with_no_buffer_is_a_no_op(session):
    session.press_mode()
    before = session.state_key()
    session.multitap_press("*")
    assert session.state_key() == before


def test_modifier_on_a_ring_of_one_is_a_no_op(session):
    session.press_mode()
    multitap(session, "000")  # ん has no derived forms
    before = session.state_key()
    session.multitap_press("*")
    assert session.state_key() == before
    assert session.press_advance() == "ん"


def test_symbol_key_cycles_symbols(session):
    session.press_mode()
    multitap(session, "##")
    assert session.pending_display == "。"
    session.multitap_press("*")
    assert session.pending_display == "。"
    assert session.press_advance() == "。"


def test_empty_cycle_key_is_inert(fixture_lexicon, syllabary):
    lines = [line for line in MINIMAL_LINES if not line.startswith("9")]
    lines[7] = "8\tやゆよらりるれろ"
    layout = load_layout("\n".join(lines) + "\n", syllabary)
    session = new_session(build_index(fixture_lexicon, layout), layout, Mode.MULTITAP)
    before = session.state_key()
    session.multitap_press("9")
    assert session.state_key() == before


def test_advance_with_no_buffer_emits_nothing(session):
    session.press_mode()
    assert session.press_advance() == ""


def test_commit_in_multitap_acts_as_advance(session):
    session.press_mode()
    multitap(session, "44")
    assert session.press_commit() == "ち"


def test_backspace_clears_the_tap_buffer_first(session):
    session.press_mode()
    multitap(session, "11")
    session.press_advance()
    multitap(session, "22")
    session.press_backspace()
    assert session.pending_display == ""
    assert session.committed == "い"
    session.press_backspace()
    assert session.committed == ""


def test_every_kana_can_be_tapped_out(layout, fixture_trie, syllabary):
    for record in syllabary:
        session = new_session(fixture_trie, layout, Mode.MULTITAP)
        for key in layout.multitap_expand(record.character):
            session.multitap_press(key)
        session.press_advance()
        assert session.committed == record.character, record.character


# -- snapshots ---------------------------------------------------------------


def test_snapshot_before_selecting_shows_the_head(session):
    press_digits(session, "13")
    shot = session.snapshot(2)
    assert [c.reading for c in shot.candidates] == ["あさ", "いし"]
    assert shot.cursor is None
    assert shot.pending == "13"


def test_snapshot_window_follows_the_cursor(session):
    press_digits(session, "13")
    for _ in range(3):
        session.press_select()
    shot = session.snapshot(2)
    assert [c.reading for c in shot.candidates] == ["いし", "あさひ"]
    assert shot.cursor == 1
    assert shot.candidates[shot.cursor].reading == "あさひ"


def test_snapshot_window_wider_than_the_list(session):
    press_digits(session, "13")
    session.press_select()
    shot = session.snapshot(10)
    assert len(shot.candidates) == 3
    assert shot.cursor == 0


def test_snapshot_window_must_be_positive(session):
    with pytest.raises(ValueError):
        session.snapshot(0)


def test_prediction_limit_bounds_the_candidate_list(fixture_trie, layout, syllabary):
    rng = random.Random(31)
    lexicon = random_lexicon(rng, syllabary, max_entries=200, max_reading_len=4)
    trie = build_index(lexicon, layout)
    session = Session(trie, layout, prediction_limit=3)
    session.press_digit("1")
    predicted = [c for c in session.candidates if c.source is Source.PREDICTION]
    assert len(predicted) <= 3


# -- construction ------------------------------------------------------------


def test_layout_mismatch_is_rejected(fixture_trie, syllabary):
    other = load_layout("\n".join(MINIMAL_LINES) + "\n", syllabary)
    with pytest.raises(LayoutMismatchError):
        new_session(fixture_trie, other)


# -- event tapes ----------------------------------------------------------------


def test_parse_tape_accepts_both_digit_spellings():
    events = parse_tape("D 1\nD3\n\n# comment\nSEL\nCOM\n")
    assert events == [("digit", "1"), ("digit", "3"), ("select",), ("commit",)]


def test_parse_tape_accepts_multitap_labels():
    events = parse_tape("MODE\nD *\nD#\nADV\n")
    assert events == [("mode",), ("digit", "*"), ("digit", "#"), ("advance",)]


@pytest.mark.parametrize("line", ["D", "D 12", "DX", "PRESS 1", "sel"])
def test_parse_tape_rejects_bad_lines(line):
    with pytest.raises(ParseError, match="line 2"):
        parse_tape("D 1\n" + line + "\n")


def test_event_labels_are_canonical():
    tape = "D1\nSEL\nCNV\nCOM\nBSP\nADV\nMODE\n"
    labels = [event_label(e) for e in parse_tape(tape)]
    assert labels == ["D 1", "SEL", "CNV", "COM", "BSP", "ADV", "MODE"]


def test_run_tape_output_shape(session):
    out = run_tape(session, parse_tape("D1\nD3\nSEL\nSEL\nCOM\n"))
    assert out == (
        "D 1\tstage=entering\tpending=1\tcursor=-\n"
        "D 3\tstage=entering\tpending=13\tcursor=-\n"
        "SEL\tstage=cycling_reading\tpending=13\tcursor=0\n"
        "SEL\tstage=cycling_reading\tpending=13\tcursor=1\n"
        "COM\tstage=entering\tpending=-\tcursor=-\n"
        "final\tいし\n"
    )


def test_replay_is_deterministic(fixture_trie, layout):
    tape = parse_tape("D1\nD3\nSEL\nSEL\nCNV\nCNV\nCOM\nMODE\nD6\nD6\nD*\nADV\n")
    first = new_session(fixture_trie, layout)
    second = new_session(fixture_trie, layout)
    assert run_tape(first, tape) == run_tape(second, tape)
    assert first.state_key() == second.state_key()


def test_apply_rejects_unknown_events(session):
    with pytest.raises(StateError):
        session.apply(("paste", "x"))
