"""Splices the generated block into a user script, byte-exactly and idempotently.

The script keeps its own bytes: every line outside the block region is
preserved verbatim, including its original line ending.  The block replaces
the previous block in place, or is inserted immediately before the first
`show()` marker line.  Writes are atomic (temp file + rename) with a one-time
`.bak` backup and an advisory `.lock` against concurrent sessions.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import BlockAfterMarker, MultipleBlocks, NoMarker, ScriptLocked, UnpairedSentinel
from .script import ScriptLine, parse_line


@dataclass
class PatchedScript:
    lines: list[ScriptLine]
    endings: list[str]  # per-line terminator: "\n", "\r\n", or "" for last line
    marker_line: int  # index of the FIRST marker line
    block_span: tuple[int, int] | None  # inclusive (start, end) sentinel indices
    warnings: list[str]

    @property
    def dominant_ending(self) -> str:
        counts = {"\n": 0, "\r\n": 0}
        for e in self.endings:
            if e in counts:
                counts[e] += 1
        return "\r\n" if counts["\r\n"] > counts["\n"] else "\n"


def split_lines(text: str) -> tuple[list[str], list[str]]:
    """Split on LF only, keeping CR with the terminator; endings returned separately.

    Splitting never looks inside a line, so string literals containing exotic
    Unicode separators are untouched.  A file not ending in a newline yields a
    final empty ending.
    """
    contents: list[str] = []
    endings: list[str] = []
    start = 0
    while True:
        idx = text.find("\n", start)
        if idx == -1:
            break
        raw = text[start:idx]
        if raw.endswith("\r"):
            contents.append(raw[:-1])
            endings.append("\r\n")
        else:
            contents.append(raw)
            endings.append("\n")
        start = idx + 1
    if start < len(text) or not text:
        contents.append(text[start:])
        endings.append("")
    return contents, endings


def scan(script_text: str) -> PatchedScript:
    """Classify every line and locate the marker and the generated block."""
    contents, endings = split_lines(script_text)
    lines = [parse_line(c) for c in contents]

    marker_line = None
    markers = [i for i, l in enumerate(lines) if l.kind == "marker"]
    if not markers:
        raise NoMarker("script has no show() line")
    marker_line = markers[0]
    warnings = []
    if len(markers) > 1:
        warnings.append(f"multiple show() lines; using the first (line {marker_line + 1})")

    starts = [i for i, l in enumerate(lines) if l.kind == "sentinel_start"]
    ends = [i for i, l in enumerate(lines) if l.kind == "sentinel_end"]
    if len(starts) > 1:
        raise MultipleBlocks("more than one generated block start sentinel")
    block_span = None
    if starts or ends:
        if not starts or not ends or len(ends) > 1 or ends[0] < starts[0]:
            raise UnpairedSentinel("generated block sentinels are not properly paired")
        block_span = (starts[0], ends[0])
        if block_span[1] >= marker_line:
            raise BlockAfterMarker("generated block must end before the show() line")

    return PatchedScript(lines, endings, marker_line, block_span, warnings)


def splice(script: PatchedScript, block: list[str]) -> str:
    """Script text with the block in place; all other bytes preserved."""
    ending = script.dominant_ending
    contents = [l.text for l in script.lines]
    endings = list(script.endings)
    block_endings = [ending] * len(block)
    if script.block_span is not None:
        # the block always ends before the marker, so it is never the last line
        # and its lines can all carry the dominant ending
        start, end = script.block_span
        new_contents = contents[:start] + block + contents[end + 1 :]
        new_endings = endings[:start] + block_endings + endings[end + 1 :]
    else:
        at = script.marker_line
        new_contents = contents[:at] + block + contents[at:]
        new_endings = endings[:at] + block_endings + endings[at:]
    return "".join(c + e for c, e in zip(new_contents, new_endings))


def block_interior(script: PatchedScript) -> tuple[list[str], int]:
    """Interior statement lines of the existing block and the 1-based line
    number of the first interior line; ([], 0) when there is no block."""
    if script.block_span is None:
        return [], 0
    start, end = script.block_span
    return [l.text for l in script.lines[start + 1 : end]], start + 2


# ---------------------------------------------------------------------------
# file I/O
# ---------------------------------------------------------------------------


def read_script(path: str) -> str:
    with open(path, encoding="utf-8", newline="") as fh:
        return fh.read()


def write_script_atomic(path: str, text: str) -> None:
    """Write via temp file + rename so a crash never truncates the script."""
    directory = os.path.dirname(os.path.abspath(path))
    tmp_path = os.path.join(directory, f".{os.path.basename(path)}.tmp.{os.getpid()}")
    with open(tmp_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp_path, path)


def backup_once(path: str, created: set[str]) -> str | None:
    """Copy path → path.bak the first time a session saves; remembers in `created`."""
    if path in created:
        return None
    bak = path + ".bak"
    with open(path, "rb") as src, open(bak, "wb") as dst:
        dst.write(src.read())
    created.add(path)
    return bak


class ScriptLock:
    """Advisory lock file beside the script; stale locks from dead PIDs are reclaimed."""

    def __init__(self, script_path: str):
        self.lock_path = script_path + ".lock"
        self.acquired = False

    def acquire(self) -> None:
        if self._live_owner() is not None:
            raise ScriptLocked(f"script is being edited by process {self._live_owner()} ({self.lock_path})")
        self._remove_stale()
        fd = os.open(self.lock_path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        try:
            os.write(fd, str(os.getpid()).encode("ascii"))
        finally:
            os.close(fd)
        self.acquired = True

    def release(self) -> None:
        if self.acquired:
            try:
                os.unlink(self.lock_path)
            except FileNotFoundError:
                pass
            self.acquired = False

    def _owner_pid(self) -> int | None:
        try:
            with open(self.lock_path, encoding="ascii") as fh:
                return int(fh.read().strip())
        except (FileNotFoundError, ValueError):
            return None

    def _live_owner(self) -> int | None:
        pid = self._owner_pid()
        if pid is None:
            return None
        if pid == os.getpid():
            return pid
        try:
            os.kill(pid, 0)
        except ProcessLookupError:
            return None
        except PermissionError:
            return pid
        return pid

    def _remove_stale(self) -> None:
        if os.path.exists(self.lock_path) and self._live_owner() is None:
            try:
                os.unlink(self.lock_path)
            except FileNotFoundError:
                pass

    def __enter__(self) -> "ScriptLock":
        self.acquire()
        return self

    def __exit__(self, *exc) -> None:
        self.release()
