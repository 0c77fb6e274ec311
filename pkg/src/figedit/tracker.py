"""Change tracking and generated-block round-tripping.

Every edit is a four-part change: the command object (path the method is
called on), the command text (method + canonical args), the target object
(path the change is keyed by), and the target command (method name).  For
property methods command and target coincide; for creation methods the
target is the created child.  Re-recording a key overwrites in place, so a
block is emitted only once per key no matter how often an element is edited.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import DuplicateKeyInBlock, FigeditError, InvariantViolation, ScriptSyntaxError, UnknownMethod
from .methods import CREATION_METHODS, coerce_args, lookup
from .paths import ObjectPath
from .script import SENTINEL_END, SENTINEL_START, format_literal, parse_line, statement_text

Key = tuple[ObjectPath, str]


@dataclass
class ChangeRecord:
    command_path: ObjectPath
    target_path: ObjectPath
    target_command: str  # method name
    args: tuple
    seq: int = 0
    origin: str = "session"  # "loaded" | "session"

    @property
    def key(self) -> Key:
        return (self.target_path, self.target_command)

    @property
    def is_creation(self) -> bool:
        return self.target_command in CREATION_METHODS

    @property
    def command_text(self) -> str:
        return f"{self.target_command}(" + ", ".join(format_literal(a) for a in self.args) + ")"

    def statement_line(self) -> str:
        return statement_text(self.command_path, self.target_command, self.args)


def make_record(command_path: ObjectPath, method: str, args, target_path: ObjectPath | None = None) -> ChangeRecord:
    """Build a well-formed record with canonical args; target defaults to the command path."""
    coerced = coerce_args(lookup(command_path.kind, method), args)
    record = ChangeRecord(command_path, target_path if target_path is not None else command_path, method, coerced)
    _check_record(record)
    return record


def _check_record(record: ChangeRecord) -> None:
    if record.is_creation:
        if record.target_path.parent() != record.command_path:
            raise InvariantViolation("creation target must be a child of the command object")
    elif record.target_path != record.command_path:
        raise InvariantViolation("command and target must coincide for property methods")


class Tracker:
    """Holds at most one ChangeRecord per (target path, method) key."""

    def __init__(self) -> None:
        self.records: dict[Key, ChangeRecord] = {}
        self.creation_order: list[Key] = []
        self._next_seq = 0

    def __len__(self) -> int:
        return len(self.records)

    def record(self, record: ChangeRecord) -> ChangeRecord:
        """Insert or overwrite in place; returns the stored record."""
        _check_record(record)
        stored = replace(record, seq=self._next_seq, origin="session")
        self._next_seq += 1
        if record.key not in self.records and stored.is_creation:
            self.creation_order.append(record.key)
        self.records[record.key] = stored
        return stored

    def load(self, records: list[ChangeRecord]) -> None:
        """Seed a fresh tracker from a parsed block; records get origin=loaded."""
        if self.records:
            raise InvariantViolation("load requires an empty tracker")
        for record in records:
            _check_record(record)
            if record.key in self.records:
                raise DuplicateKeyInBlock(
                    f"block repeats {record.target_path.text()}.{record.target_command}"
                )
            stored = replace(record, seq=self._next_seq, origin="loaded")
            self._next_seq += 1
            if stored.is_creation:
                self.creation_order.append(record.key)
            self.records[record.key] = stored

    def emit_block(self) -> list[str]:
        """Generated block lines: sentinels around creations then sorted properties."""
        lines = [SENTINEL_START]
        lines.extend(self.records[key].statement_line() for key in self.creation_order)
        properties = [r for r in self.records.values() if not r.is_creation]
        properties.sort(key=lambda r: (r.target_path.text(), r.target_command))
        lines.extend(r.statement_line() for r in properties)
        lines.append(SENTINEL_END)
        return lines


def parse_block(lines: list[str], first_line_number: int = 1) -> list[ChangeRecord]:
    """Records for the interior lines of a generated block.

    Creation targets are re-derived by counting creations per parent in block
    order.  The derived indices ignore elements the surrounding script creates
    outside the block; that is sound because creation lines never print their
    target, and re-derived keys stay disjoint from live session keys.
    """
    records: list[ChangeRecord] = []
    counters: dict[tuple[ObjectPath, str], int] = {}
    seen: dict[tuple[str, str], int] = {}
    for offset, raw in enumerate(lines):
        line_no = first_line_number + offset
        parsed = parse_line(raw)
        if parsed.kind == "blank":
            continue
        if parsed.kind != "statement":
            raise ScriptSyntaxError(f"unexpected {parsed.kind} line inside generated block", line=line_no, column=1)
        if parsed.error is not None:
            raise ScriptSyntaxError(parsed.error.message, line=line_no, column=parsed.error.column)
        stmt = parsed.statement
        if stmt.path is None:
            raise UnknownMethod(f"unknown function {stmt.method!r}", line=line_no)
        try:
            spec = lookup(stmt.path.kind, stmt.method)
            args = coerce_args(spec, stmt.args)
        except FigeditError as exc:
            exc.line = line_no
            raise
        if spec.creates is not None:
            count = counters.get((stmt.path, spec.creates), 0)
            counters[(stmt.path, spec.creates)] = count + 1
            index = None if spec.creates == "legend" else count
            target = stmt.path.child(spec.creates, index)
        else:
            target = stmt.path
        key = (target.text(), stmt.method)
        if key in seen:
            raise DuplicateKeyInBlock(
                f"block repeats {target.text()}.{stmt.method} (first at line {seen[key]})",
                line=line_no,
            )
        seen[key] = line_no
        records.append(ChangeRecord(stmt.path, target, stmt.method, args, seq=len(records), origin="loaded"))
    return records


def strip_sentinels(block_lines: list[str]) -> list[str]:
    """Interior of a block emitted by emit_block."""
    if not block_lines or block_lines[0] != SENTINEL_START or block_lines[-1] != SENTINEL_END:
        raise InvariantViolation("not a sentinel-delimited block")
    return block_lines[1:-1]
