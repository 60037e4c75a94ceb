"""Command-line entry points: compile, simulate, eval, serve."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .engine import Mode, new_session, parse_tape, run_tape
from .errors import KanapadError
from .layout import default_layout, load_layout
from .lexicon import build_index, deserialize_index, parse_lexicon
from .metrics import compare_methods, parse_corpus
from .service import DEFAULT_TTL_SECONDS, create_app
from .syllabary import default_syllabary


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kanapad",
        description="12-key kana input: compile an index, replay tapes, "
        "measure methods, or serve sessions over HTTP.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compile_p = sub.add_parser("compile", help="build a binary index from a dictionary")
    compile_p.add_argument("--dict", dest="dict_path", required=True, type=Path)
    compile_p.add_argument(
        "--layout", dest="layout_path", type=Path, default=None,
        help="layout file (default: the packaged 12-key layout)",
    )
    compile_p.add_argument("--out", dest="out_path", required=True, type=Path)
    compile_p.set_defaults(func=cmd_compile)

    simulate_p = sub.add_parser("simulate", help="replay an event tape against an index")
    simulate_p.add_argument("--index", dest="index_path", required=True, type=Path)
    simulate_p.add_argument("--tape", dest="tape_path", required=True, type=Path)
    simulate_p.set_defaults(func=cmd_simulate)

    eval_p = sub.add_parser("eval", help="compare entry methods over a corpus")
    eval_p.add_argument("--index", dest="index_path", required=True, type=Path)
    eval_p.add_argument("--corpus", dest="corpus_path", required=True, type=Path)
    eval_p.set_defaults(func=cmd_eval)

    serve_p = sub.add_parser("serve", help="serve input sessions over HTTP")
    serve_p.add_argument("--index", dest="index_path", required=True, type=Path)
    serve_p.add_argument("--bind", dest="bind", default="127.0.0.1:8040")
    serve_p.add_argument(
        "--ttl", dest="ttl", type=float, default=DEFAULT_TTL_SECONDS,
        help="idle seconds before a session expires",
    )
    serve_p.set_defaults(func=cmd_serve)
    return parser


def cmd_compile(args: argparse.Namespace) -> int:
    syllabary = default_syllabary()
    if args.layout_path is not None:
        layout = load_layout(args.layout_path.read_text(encoding="utf-8"), syllabary)
    else:
        layout = default_layout()
    lexicon = parse_lexicon(args.dict_path.read_text(encoding="utf-8"), syllabary)
    trie = build_index(lexicon, layout)
    data = trie.serialize()
    args.out_path.write_bytes(data)
    print(f"entries: {len(lexicon)}")
    print(f"index_bytes: {len(data)}")
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    trie = deserialize_index(args.index_path.read_bytes())
    events = parse_tape(args.tape_path.read_text(encoding="utf-8"))
    session = new_session(trie, trie.layout, Mode.DISAMBIGUATION)
    sys.stdout.write(run_tape(session, events))
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    trie = deserialize_index(args.index_path.read_bytes())
    corpus = parse_corpus(
        args.corpus_path.read_text(encoding="utf-8"), trie.layout.syllabary
    )
    sys.stdout.write(compare_methods(trie, trie.layout, corpus).render())
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    host, _, port_text = args.bind.rpartition(":")
    if not host or not port_text.isdigit():
        print(f"error: --bind wants HOST:PORT, got {args.bind!r}", file=sys.stderr)
        return 2
    trie = deserialize_index(args.index_path.read_bytes())
    app = create_app(trie, trie.layout, ttl=args.ttl)
    uvicorn.run(app, host=host, port=int(port_text), log_level="info")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KanapadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
