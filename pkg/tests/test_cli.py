from __future__ import annotations

import pytest

from kanapad.cli import main

from conftest import DATA_DIR, FIXTURE_DICT_PATH, GOLDEN_DIR

TAPES = [
    ("select_second", "いし"),
    ("commit_top", "あさ"),
    ("convert_form", "石"),
    ("backspace_fix", "あさ"),
    ("multitap_pyo", "ぴょ"),
]


@pytest.fixture(scope="module")
def index_path(tmp_path_factory):
    out = tmp_path_factory.mktemp("index") / "fixture.ktri"
    code = main(["compile", "--dict", str(FIXTURE_DICT_PATH), "--out", str(out)])
    assert code == 0
    return out


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compile_reports_sizes(tmp_path, capsys):
    out = tmp_path / "fixture.ktri"
    code, stdout, stderr = run_cli(
        capsys, "compile", "--dict", str(FIXTURE_DICT_PATH), "--out", str(out)
    )
    assert code == 0
    assert stderr == ""
    lines = stdout.splitlines()
    assert lines[0] == "entries: 5"
    assert lines[1] == f"index_bytes: {out.stat().st_size}"


def test_compile_accepts_a_layout_file(tmp_path, capsys, layout):
    layout_path = tmp_path / "layout.tsv"
    layout_path.write_text(layout.source, encoding="utf-8")
    out = tmp_path / "fixture.ktri"
    code, stdout, _ = run_cli(
        capsys,
        "compile",
        "--dict",
        str(FIXTURE_DICT_PATH),
        "--layout",
        str(layout_path),
        "--out",
        str(out),
    )
    assert code == 0
    assert "entries: 5" in stdout


def test_compile_missing_dictionary(tmp_path, capsys):
    code, stdout, stderr = run_cli(
        capsys,
        "compile",
        "--dict",
        str(tmp_path / "absent.dict"),
        "--out",
        str(tmp_path / "out.ktri"),
    )
    assert code == 2
    assert stdout == ""
    assert stderr.startswith("error: ")
    assert "No such file" in stderr


def test_compile_reports_dictionary_line_numbers(tmp_path, capsys):
    bad = tmp_path / "bad.dict"
    bad.write_text("あさ\t10\nいし\t5\nかさ\tzero\n", encoding="utf-8")
    code, _, stderr = run_cli(
        capsys, "compile", "--dict", str(bad), "--out", str(tmp_path / "o.ktri")
    )
    assert code == 2
    assert "line 3" in stderr


@pytest.mark.parametrize("name,final", TAPES)
def test_simulate_matches_goldens(index_path, capsys, name, final):
    code, stdout, stderr = run_cli(
        capsys,
        "simulate",
        "--index",
        str(index_path),
        "--tape",
        str(DATA_DIR / f"{name}.tape"),
    )
    assert code == 0
    assert stderr == ""
    golden = (GOLDEN_DIR / f"{name}.out").read_text(encoding="utf-8")
    assert stdout == golden
    assert stdout.endswith(f"final\t{final}\n")


@pytest.mark.parametrize("name,final", TAPES)
def test_simulate_is_repeatable(index_path, capsys, name, final):
    args = (
        "simulate",
        "--index",
        str(index_path),
        "--tape",
        str(DATA_DIR / f"{name}.tape"),
    )
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second


def test_simulate_rejects_a_bad_tape(index_path, tmp_path, capsys):
    tape = tmp_path / "bad.tape"
    tape.write_text("JUMP 3\n", encoding="utf-8")
    code, _, stderr = run_cli(
        capsys, "simulate", "--index", str(index_path), "--tape", str(tape)
    )
    assert code == 2
    assert "line 1" in stderr


def test_simulate_rejects_a_corrupt_index(tmp_path, capsys):
    broken = tmp_path / "broken.ktri"
    broken.write_bytes(b"not an index")
    code, _, stderr = run_cli(
        capsys,
        "simulate",
        "--index",
        str(broken),
        "--tape",
        str(DATA_DIR / "commit_top.tape"),
    )
    assert code == 2
    assert stderr.startswith("error: ")


def test_eval_matches_golden(index_path, capsys):
    code, stdout, _ = run_cli(
        capsys,
        "eval",
        "--index",
        str(index_path),
        "--corpus",
        str(DATA_DIR / "eval_corpus.tsv"),
    )
    assert code == 0
    assert stdout == (GOLDEN_DIR / "eval_corpus.out").read_text(encoding="utf-8")


def test_serve_rejects_a_bad_bind(index_path, capsys):
    code, _, stderr = run_cli(
        capsys, "serve", "--index", str(index_path), "--bind", "nonsense"
    )
    assert code == 2
    assert "HOST:PORT" in stderr
