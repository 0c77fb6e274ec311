"""Run a declarative figure script, rearrange the result visually, and write
every edit back into the script as deterministic generated code."""

from .errors import FigeditError
from .model import FigureDoc, Rect, to_json
from .render import render
from .script import parse_path, parse_statement, statement_text
from .session import Session, drag_preview, edit, open_session, save

__version__ = "0.1.0"

__all__ = [
    "FigeditError",
    "FigureDoc",
    "Rect",
    "Session",
    "drag_preview",
    "edit",
    "open_session",
    "parse_path",
    "parse_statement",
    "render",
    "save",
    "statement_text",
    "to_json",
    "__version__",
]
