"""Exception hierarchy shared by all figedit modules."""

from __future__ import annotations


class FigeditError(Exception):
    """Base class; carries an optional 1-based source line for script errors."""

    def __init__(self, message: str, *, line: int | None = None):
        super().__init__(message)
        self.message = message
        self.line = line

    def __str__(self) -> str:
        if self.line is not None:
            return f"line {self.line}: {self.message}"
        return self.message


# --- path resolution ---

class ElementNotInDoc(FigeditError):
    """The element is not reachable from the document root."""


class NoSuchFigure(FigeditError):
    """Path names a figure index other than the document's."""


class PathOutOfRange(FigeditError):
    """A child index in the path is beyond the parent's list."""


class NoLegend(FigeditError):
    """Path addresses the legend of an axes that has none."""


# --- statement application ---

class UnknownMethod(FigeditError):
    """Method is not in the core grammar for the addressed element kind."""


class ArityMismatch(FigeditError):
    """Wrong number of arguments for the method."""


class TypeMismatch(FigeditError):
    """An argument has the wrong literal type or shape."""


class InvariantViolation(FigeditError):
    """The change would put the document into an invalid state."""


# --- script text ---

class ScriptSyntaxError(FigeditError):
    """Malformed statement; column is 1-based within the line."""

    def __init__(self, message: str, *, column: int | None = None, line: int | None = None):
        super().__init__(message, line=line)
        self.column = column

    def __str__(self) -> str:
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.column is not None:
            where.append(f"column {self.column}")
        if where:
            return f"{', '.join(where)}: {self.message}"
        return self.message


class DuplicateKeyInBlock(FigeditError):
    """Same (target, command) key appears twice inside one generated block."""


# --- patching ---

class PatchError(FigeditError):
    """Base for script scanning/splicing failures."""


class NoMarker(PatchError):
    """Script has no show() line."""


class UnpairedSentinel(PatchError):
    """A block sentinel without its partner."""


class MultipleBlocks(PatchError):
    """More than one generated block start sentinel."""


class BlockAfterMarker(PatchError):
    """Generated block does not end before the marker line."""


class ScriptLocked(PatchError):
    """Another live session holds the script's lock file."""


# --- geometry / render ---

class DegenerateRange(FigeditError):
    """Tick range with lo >= hi."""


# --- data ingestion ---

class IngestError(FigeditError):
    """Base for CSV loading failures."""


class EmptyFile(IngestError):
    """CSV has no header or no data rows."""


class RaggedRows(IngestError):
    """A CSV row's cell count differs from the header's."""

    def __init__(self, message: str, row: int):
        super().__init__(message)
        self.row = row


class NoSuchColumn(IngestError):
    """Requested column name is not in the table."""
