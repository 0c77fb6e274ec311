"""Ties the pipeline together: runs a script into a document, tracks edits,
previews drags with snapping, and saves the generated block back into the
file.

A session owns an advisory lock on its script for its whole lifetime, and the
first modifying save leaves a one-time `.bak` next to the original.
"""

from __future__ import annotations

import copy
import os
from dataclasses import dataclass, field
from typing import Callable

from .errors import FigeditError, InvariantViolation
from .geometry import HANDLES, SNAP_DEFAULT_THRESHOLD_PX, Guide, ViewTransform, drag, snap
from .ingest import extract_series, load_csv
from .model import FigureDoc, Rect, apply_change, resolve_path
from .paths import ObjectPath
from .patcher import (
    PatchedScript,
    ScriptLock,
    backup_once,
    block_interior,
    read_script,
    scan,
    splice,
    write_script_atomic,
)
from .render import render
from .script import Statement, parse_path, parse_statement, statement_text
from .tracker import Tracker, make_record, parse_block, strip_sentinels

Loader = Callable[[str, str, str], list[tuple[float, float]]]


@dataclass
class Session:
    script_path: str
    base_doc: FigureDoc
    live_doc: FigureDoc
    tracker: Tracker
    dirty: bool = False
    warnings: list[str] = field(default_factory=list)
    loader: Loader | None = None
    _lock: ScriptLock | None = None
    _backups: set[str] = field(default_factory=set)

    def close(self) -> None:
        if self._lock is not None:
            self._lock.release()
            self._lock = None

    def __enter__(self) -> "Session":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def _make_loader(script_path: str, warnings: list[str]) -> Loader:
    # relative data paths resolve against the script's directory, so scripts
    # stay relocatable together with their data
    base = os.path.dirname(os.path.abspath(script_path))

    def load(path: str, xcol: str, ycol: str) -> list[tuple[float, float]]:
        resolved = path if os.path.isabs(path) else os.path.join(base, path)
        table = load_csv(resolved)
        points, dropped = extract_series(table, xcol, ycol)
        if dropped:
            warnings.append(f"{path}: dropped {dropped} non-numeric or non-finite row(s)")
        return points

    return load


def _execute_base(script: PatchedScript, loader: Loader) -> FigureDoc:
    """Run every statement outside the generated block, in file order."""
    doc = FigureDoc()
    span = script.block_span
    for idx, line in enumerate(script.lines):
        if span is not None and span[0] <= idx <= span[1]:
            continue
        if line.kind != "statement":
            continue
        if line.error is not None:
            line.error.line = idx + 1
            raise line.error
        try:
            apply_change(doc, line.statement, loader)
        except FigeditError as exc:
            exc.line = idx + 1
            raise
    return doc


def _replay(base_doc: FigureDoc, tracker: Tracker, loader: Loader) -> FigureDoc:
    """Base doc plus the tracker's changes, applied in emit order."""
    doc = copy.deepcopy(base_doc)
    for text in strip_sentinels(tracker.emit_block()):
        apply_change(doc, parse_statement(text), loader)
    return doc


def open_session(script_path: str, *, lock: bool = True) -> Session:
    text = read_script(script_path)
    script = scan(text)
    warnings = list(script.warnings)
    loader = _make_loader(script_path, warnings)
    script_lock = ScriptLock(script_path) if lock else None
    if script_lock is not None:
        script_lock.acquire()
    try:
        base_doc = _execute_base(script, loader)
        interior, first_line = block_interior(script)
        tracker = Tracker()
        tracker.load(parse_block(interior, first_line))
        live_doc = _replay(base_doc, tracker, loader)
    except BaseException:
        if script_lock is not None:
            script_lock.release()
        raise
    return Session(
        script_path=script_path,
        base_doc=base_doc,
        live_doc=live_doc,
        tracker=tracker,
        warnings=warnings,
        loader=loader,
        _lock=script_lock,
    )


def edit(session: Session, statement: Statement | str) -> Session:
    """Apply one statement to the live document and track it.

    The session is untouched when application fails.
    """
    stmt = parse_statement(statement) if isinstance(statement, str) else statement
    candidate = copy.deepcopy(session.live_doc)
    _, created = apply_change(candidate, stmt, session.loader)
    record = make_record(stmt.path, stmt.method, stmt.args, target_path=created)
    session.tracker.record(record)
    session.live_doc = candidate
    session.dirty = True
    return session


def save(session: Session) -> tuple[str, bool]:
    """Splice the generated block into the file on disk.

    Returns (new text, written); written is false when the file already holds
    exactly this content, in which case nothing is touched.
    """
    current = read_script(session.script_path)
    script = scan(current)
    new_text = splice(script, session.tracker.emit_block())
    if new_text == current:
        session.dirty = False
        return new_text, False
    backup_once(session.script_path, session._backups)
    write_script_atomic(session.script_path, new_text)
    session.dirty = False
    return new_text, True


# ---------------------------------------------------------------------------
# drag previews
# ---------------------------------------------------------------------------


def _axes_frame_px(doc: FigureDoc, ax_index: int, vt: ViewTransform) -> tuple[float, float, float, float]:
    pos = doc.axes[ax_index].position
    left = pos.x * vt.width_px
    right = (pos.x + pos.w) * vt.width_px
    top = vt.height_px - (pos.y + pos.h) * vt.height_px
    bottom = vt.height_px - pos.y * vt.height_px
    return left, right, top, bottom


def drag_preview(
    session: Session,
    path: ObjectPath | str,
    dx_px: float,
    dy_px: float,
    mode: str = "move",
    handle: str | None = None,
    threshold_px: float = SNAP_DEFAULT_THRESHOLD_PX,
) -> tuple[str, tuple[Guide, ...]]:
    """Statement text that would commit this drag, plus active snap guides.

    Pure preview: the session is not modified. Axes move or resize and snap
    against the other axes; legends move and snap their box against all axes;
    texts move freely.
    """
    if mode not in ("move", "resize"):
        raise InvariantViolation(f"drag mode must be 'move' or 'resize', not {mode!r}")
    if mode == "resize" and handle not in HANDLES:
        raise InvariantViolation("resize needs a handle from: " + ", ".join(HANDLES))
    if isinstance(path, str):
        path = parse_path(path)
    doc = session.live_doc
    element = resolve_path(doc, path)
    vt = ViewTransform(doc.width_cm, doc.height_cm, doc.dpi)
    kind = path.kind

    if kind == "axes":
        moved = drag(element.position, dx_px, dy_px, mode, vt, handle=handle)
        own = path.segments[0].index
        peers = [ax.position for j, ax in enumerate(doc.axes) if j != own]
        result = snap(moved, peers, threshold_px, vt, mode=mode, handle=handle)
        r = result.rect
        return statement_text(path, "set_position", ((r.x, r.y, r.w, r.h),)), result.guides

    if mode != "move":
        raise InvariantViolation(f"{kind} elements only move; they have no resize handles")
    ax_index = path.segments[0].index
    left, right, top, bottom = _axes_frame_px(doc, ax_index, vt)
    if right <= left or bottom <= top:
        raise InvariantViolation("axes too small to position elements by fraction")

    if kind == "legend":
        out = render(doc)
        box = next(b for p, b in out.element_index if p == path)
        fig_rect = Rect(
            box.x0 / vt.width_px,
            (vt.height_px - box.y1) / vt.height_px,
            (box.x1 - box.x0) / vt.width_px,
            (box.y1 - box.y0) / vt.height_px,
        )
        moved = drag(fig_rect, dx_px, dy_px, "move", vt)
        result = snap(moved, [ax.position for ax in doc.axes], threshold_px, vt, mode="move")
        anchor_x = result.rect.x * vt.width_px
        anchor_y = vt.height_px - (result.rect.y + result.rect.h) * vt.height_px
        loc_x = (anchor_x - left) / (right - left)
        loc_y = (bottom - anchor_y) / (bottom - top)
        return statement_text(path, "set_loc_fraction", (loc_x, loc_y)), result.guides

    if kind == "text":
        nx = element.x + dx_px / (right - left)
        ny = element.y - dy_px / (bottom - top)
        return statement_text(path, "set_position", (nx, ny)), ()

    raise InvariantViolation(f"{kind} elements cannot be dragged")


__all__ = [
    "Session",
    "drag_preview",
    "edit",
    "open_session",
    "save",
]
