"""Command line entry points: edit, render, check, apply."""

from __future__ import annotations

import argparse
import signal
import sys
import threading
import webbrowser

from .errors import FigeditError
from .geometry import SNAP_DEFAULT_THRESHOLD_PX
from .patcher import block_interior, read_script, scan
from .render import render
from .service import DEFAULT_PORT, serve
from .session import edit, open_session, save
from .tracker import parse_block


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="figedit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_edit = sub.add_parser("edit", help="serve the interactive editor for a script")
    p_edit.add_argument("script")
    p_edit.add_argument("--port", type=int, default=DEFAULT_PORT)
    p_edit.add_argument("--no-browser", action="store_true")
    p_edit.add_argument("--snap-px", type=float, default=SNAP_DEFAULT_THRESHOLD_PX)

    p_render = sub.add_parser("render", help="run a script and write its SVG")
    p_render.add_argument("script")
    p_render.add_argument("-o", "--output", required=True, help="output path, - for stdout")

    p_check = sub.add_parser("check", help="parse and scan a script without running it")
    p_check.add_argument("script")

    p_apply = sub.add_parser("apply", help="apply statements from a file, then save")
    p_apply.add_argument("script")
    p_apply.add_argument("changes", help="file with one statement per line")

    return parser


def _cmd_edit(args) -> int:
    session = open_session(args.script)

    # the server captures SIGTERM for graceful shutdown, then re-raises it
    # through whatever handler was installed before it started; ours releases
    # the script lock and lets the default disposition report the signal
    def _on_term(signum, frame):
        session.close()
        signal.signal(signum, signal.SIG_DFL)
        signal.raise_signal(signum)

    try:
        previous = signal.signal(signal.SIGTERM, _on_term)
    except ValueError:  # not in the main thread; rely on stale-lock reclaim
        previous = None
    try:
        for warning in session.warnings:
            print(f"warning: {warning}", file=sys.stderr)
        url = f"http://127.0.0.1:{args.port}/"
        print(f"serving {args.script} at {url}", file=sys.stderr)
        if not args.no_browser:
            threading.Timer(0.8, webbrowser.open, [url]).start()
        serve(session, port=args.port, snap_px=args.snap_px)
    except KeyboardInterrupt:
        pass
    finally:
        session.close()
        if previous is not None:
            signal.signal(signal.SIGTERM, previous)
    return 0


def _cmd_render(args) -> int:
    session = open_session(args.script, lock=False)
    try:
        for warning in session.warnings:
            print(f"warning: {warning}", file=sys.stderr)
        svg = render(session.live_doc).svg_text
    finally:
        session.close()
    if args.output == "-":
        sys.stdout.write(svg)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(svg)
    return 0


def _cmd_check(args) -> int:
    text = read_script(args.script)
    script = scan(text)
    status = 0
    for number, line in enumerate(script.lines, start=1):
        if line.kind == "statement" and line.error is not None:
            print(f"{args.script}:{number}: {line.error.message}", file=sys.stderr)
            status = 1
    if status == 0:
        interior, first_line = block_interior(script)
        parse_block(interior, first_line)
    for warning in script.warnings:
        print(f"{args.script}: warning: {warning}", file=sys.stderr)
    return status


def _cmd_apply(args) -> int:
    with open(args.changes, encoding="utf-8") as fh:
        raw_lines = fh.read().split("\n")
    statements = [
        (number, line.strip())
        for number, line in enumerate(raw_lines, start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    with open_session(args.script) as session:
        for number, statement in statements:
            try:
                edit(session, statement)
            except FigeditError as exc:
                print(f"{args.changes}:{number}: {exc}", file=sys.stderr)
                return 1
        _, written = save(session)
    print(f"{args.script}: {'written' if written else 'already up to date'}")
    return 0


_COMMANDS = {
    "edit": _cmd_edit,
    "render": _cmd_render,
    "check": _cmd_check,
    "apply": _cmd_apply,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except FigeditError as exc:
        print(f"figedit: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"figedit: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
