"""FigScript line grammar: classification, statement parsing, canonical emission.

One statement per line: a dotted object path followed by a method call with
literal arguments, e.g. ``figure(1).axes[0].set_position([0.2, 0.2, 0.6, 0.6])``.
Literals are reals, integers, double-quoted strings, ``true``/``false``, and
square-bracketed lists.  Emission is canonical: equal statements produce
byte-identical lines.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass, field

from .errors import ScriptSyntaxError
from .paths import AXES_CHILD_KINDS, ObjectPath, Segment

SENTINEL_START = "#% start: automatic generated code from the figure editor"
SENTINEL_END = "#% end: generated code"
MARKER = "show()"

# literal values: bool must be tested before int (bool subclasses int)
Literal = bool | int | float | str | tuple


@dataclass
class Statement:
    path: ObjectPath | None  # None for bare calls such as "foo()"
    method: str
    args: tuple
    raw_line: str = ""


@dataclass
class ScriptLine:
    kind: str  # statement | comment | blank | marker | sentinel_start | sentinel_end
    text: str
    statement: Statement | None = None
    error: ScriptSyntaxError | None = None


# ---------------------------------------------------------------------------
# tokenizer
# ---------------------------------------------------------------------------

_PUNCT = ".,()[]"
_NAME_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_NAME_CHARS = _NAME_START | set("0123456789")
_DIGITS = set("0123456789")


@dataclass
class _Token:
    kind: str  # "name" | "int" | "float" | "string" | "punct" | "end"
    value: object
    column: int  # 1-based start column


def _tokenize(line: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(line)
    while i < n:
        ch = line[i]
        col = i + 1
        if ch in " \t":
            i += 1
            continue
        if ch in _PUNCT or ch in "+-":
            tokens.append(_Token("punct", ch, col))
            i += 1
            continue
        if ch in _NAME_START:
            j = i + 1
            while j < n and line[j] in _NAME_CHARS:
                j += 1
            tokens.append(_Token("name", line[i:j], col))
            i = j
            continue
        if ch in _DIGITS or ch == ".":
            i = _scan_number(line, i, tokens)
            continue
        if ch == '"':
            i = _scan_string(line, i, tokens)
            continue
        raise ScriptSyntaxError(f"unexpected character {ch!r}", column=col)
    tokens.append(_Token("end", None, n + 1))
    return tokens


def _scan_number(line: str, i: int, tokens: list[_Token]) -> int:
    col = i + 1
    n = len(line)
    j = i
    while j < n and line[j] in _DIGITS:
        j += 1
    is_float = False
    if j < n and line[j] == ".":
        is_float = True
        j += 1
        while j < n and line[j] in _DIGITS:
            j += 1
    if j < n and line[j] in "eE":
        k = j + 1
        if k < n and line[k] in "+-":
            k += 1
        if k < n and line[k] in _DIGITS:
            is_float = True
            j = k
            while j < n and line[j] in _DIGITS:
                j += 1
    text = line[i:j]
    if text == ".":
        raise ScriptSyntaxError("malformed number", column=col)
    if is_float:
        value = float(text)
        if not math.isfinite(value):
            raise ScriptSyntaxError("number out of range", column=col)
        tokens.append(_Token("float", value, col))
    else:
        tokens.append(_Token("int", int(text), col))
    return j


def _scan_string(line: str, i: int, tokens: list[_Token]) -> int:
    col = i + 1
    n = len(line)
    j = i + 1
    out: list[str] = []
    while j < n:
        ch = line[j]
        if ch == "\\":
            if j + 1 >= n:
                raise ScriptSyntaxError("unterminated escape", column=j + 1)
            esc = line[j + 1]
            if esc not in ('"', "\\"):
                raise ScriptSyntaxError(f"unknown escape \\{esc}", column=j + 1)
            out.append(esc)
            j += 2
            continue
        if ch == '"':
            tokens.append(_Token("string", "".join(out), col))
            return j + 1
        out.append(ch)
        j += 1
    raise ScriptSyntaxError("unclosed string literal", column=col)


# ---------------------------------------------------------------------------
# statement parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[_Token], raw: str):
        self.tokens = tokens
        self.raw = raw
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_punct(self, ch: str) -> _Token:
        tok = self.next()
        if tok.kind != "punct" or tok.value != ch:
            raise ScriptSyntaxError(f"expected {ch!r}", column=tok.column)
        return tok

    def fail(self, message: str) -> ScriptSyntaxError:
        return ScriptSyntaxError(message, column=self.peek().column)

    # path := figure ( INT ) segment* ; stops right before ".method("
    def parse_statement(self) -> Statement:
        tok = self.next()
        if tok.kind != "name":
            raise ScriptSyntaxError("expected statement", column=tok.column)
        if tok.value == "figure" and self._peek_is_punct("("):
            path = self._parse_figure_root(tok)
            return self._parse_dotted_tail(path)
        # bare call, e.g. foo(1); kept grammatical, rejected later as UnknownMethod
        method = str(tok.value)
        args = self._parse_call_args()
        self._expect_end()
        return Statement(None, method, args, self.raw)

    def _peek_is_punct(self, ch: str) -> bool:
        tok = self.peek()
        return tok.kind == "punct" and tok.value == ch

    def _parse_figure_root(self, figure_tok: _Token) -> ObjectPath:
        self.expect_punct("(")
        tok = self.next()
        if tok.kind != "int" or tok.value <= 0:
            raise ScriptSyntaxError("figure index must be a positive integer", column=tok.column)
        self.expect_punct(")")
        return ObjectPath(int(tok.value))

    def _parse_dotted_tail(self, path: ObjectPath) -> Statement:
        while True:
            self.expect_punct(".")
            tok = self.next()
            if tok.kind != "name":
                raise ScriptSyntaxError("expected child segment or method name", column=tok.column)
            name = str(tok.value)
            if self._peek_is_punct("("):
                args = self._parse_call_args()
                self._expect_end()
                return Statement(path, name, args, self.raw)
            if self._peek_is_punct("["):
                if name not in ("axes", "texts", "lines"):
                    raise ScriptSyntaxError(f"unknown indexed segment {name!r}", column=tok.column)
                self._check_segment_shape(path, name, tok.column)
                self.expect_punct("[")
                idx = self.next()
                if idx.kind != "int" or idx.value < 0:
                    raise ScriptSyntaxError("child index must be a nonnegative integer", column=idx.column)
                self.expect_punct("]")
                path = path.child(name, int(idx.value))
                continue
            if name == "legend":
                self._check_segment_shape(path, "legend", tok.column)
                path = path.child("legend", None)
                continue
            raise ScriptSyntaxError(f"expected method call or child segment, got {name!r}", column=tok.column)

    def _check_segment_shape(self, path: ObjectPath, kind: str, column: int) -> None:
        depth = len(path.segments)
        if depth == 0:
            if kind != "axes":
                raise ScriptSyntaxError(f"{kind!r} is not a child of the figure", column=column)
        elif depth == 1:
            if kind not in AXES_CHILD_KINDS:
                raise ScriptSyntaxError(f"{kind!r} is not a child of an axes", column=column)
        else:
            raise ScriptSyntaxError(f"{path.segments[-1].kind!r} has no children", column=column)

    def _parse_call_args(self) -> tuple:
        self.expect_punct("(")
        if self._peek_is_punct(")"):
            self.next()
            return ()
        args = [self._parse_literal()]
        while self._peek_is_punct(","):
            self.next()
            args.append(self._parse_literal())
        tok = self.next()
        if tok.kind != "punct" or tok.value != ")":
            raise ScriptSyntaxError("expected ',' or ')'", column=tok.column)
        return tuple(args)

    def _parse_literal(self):
        tok = self.peek()
        if tok.kind == "punct" and tok.value in "+-":
            sign = -1.0 if tok.value == "-" else 1.0
            self.next()
            num = self.next()
            if num.kind == "int":
                return int(sign) * num.value if sign < 0 else num.value
            if num.kind == "float":
                return sign * num.value
            raise ScriptSyntaxError("expected number after sign", column=num.column)
        if tok.kind in ("int", "float", "string"):
            self.next()
            return tok.value
        if tok.kind == "name" and tok.value in ("true", "false"):
            self.next()
            return tok.value == "true"
        if tok.kind == "punct" and tok.value == "[":
            self.next()
            if self._peek_is_punct("]"):
                self.next()
                return ()
            items = [self._parse_literal()]
            while self._peek_is_punct(","):
                self.next()
                items.append(self._parse_literal())
            closing = self.next()
            if closing.kind != "punct" or closing.value != "]":
                raise ScriptSyntaxError("expected ',' or ']'", column=closing.column)
            return tuple(items)
        raise ScriptSyntaxError("expected literal", column=tok.column)

    def _expect_end(self) -> None:
        tok = self.peek()
        if tok.kind != "end":
            raise ScriptSyntaxError("trailing characters after statement", column=tok.column)


def parse_statement(line: str) -> Statement:
    """Parse one statement line; raises ScriptSyntaxError with a 1-based column."""
    if "\n" in line or "\r" in line:
        raise ScriptSyntaxError("statement must be a single line", column=1)
    return _Parser(_tokenize(line), line).parse_statement()


def parse_path(text: str) -> ObjectPath:
    """Parse canonical path text such as ``figure(1).axes[0].texts[2]``."""
    tokens = _tokenize(text)
    parser = _Parser(tokens, text)
    tok = parser.next()
    if tok.kind != "name" or tok.value != "figure":
        raise ScriptSyntaxError("path must start with figure(N)", column=tok.column)
    path = parser._parse_figure_root(tok)
    while parser.peek().kind != "end":
        parser.expect_punct(".")
        tok = parser.next()
        if tok.kind != "name":
            raise ScriptSyntaxError("expected child segment", column=tok.column)
        name = str(tok.value)
        if name == "legend":
            parser._check_segment_shape(path, "legend", tok.column)
            path = path.child("legend", None)
            continue
        if name not in ("axes", "texts", "lines"):
            raise ScriptSyntaxError(f"unknown segment {name!r}", column=tok.column)
        parser._check_segment_shape(path, name, tok.column)
        parser.expect_punct("[")
        idx = parser.next()
        if idx.kind != "int" or idx.value < 0:
            raise ScriptSyntaxError("child index must be a nonnegative integer", column=idx.column)
        parser.expect_punct("]")
        path = path.child(name, int(idx.value))
    return path


# ---------------------------------------------------------------------------
# line classification
# ---------------------------------------------------------------------------


def parse_line(line: str) -> ScriptLine:
    """Classify one line; never raises.

    Malformed statements come back as kind="statement" with the error payload
    attached, so every input line maps to exactly one kind.  A trailing CR is
    tolerated (CR/LF input); the original text is preserved on the ScriptLine.
    """
    body = line[:-1] if line.endswith("\r") else line
    stripped = body.lstrip()
    if stripped.startswith("#% start:"):
        return ScriptLine("sentinel_start", line)
    if stripped.startswith("#% end:"):
        return ScriptLine("sentinel_end", line)
    if body.strip() == MARKER:
        return ScriptLine("marker", line)
    if stripped.startswith("#"):
        return ScriptLine("comment", line)
    if stripped == "":
        return ScriptLine("blank", line)
    try:
        return ScriptLine("statement", line, statement=parse_statement(body))
    except ScriptSyntaxError as exc:
        return ScriptLine("statement", line, error=exc)


# ---------------------------------------------------------------------------
# canonical emission
# ---------------------------------------------------------------------------


def format_float(value: float) -> str:
    """Canonical real formatting: shortest decimal that round-trips the value.

    Plain form when that decimal needs at most 6 fractional digits and
    |value| is in [1e-4, 1e7); otherwise normalized exponent form.  Zero is
    always "0.0".
    """
    if not math.isfinite(value):
        raise ValueError("cannot emit non-finite real")
    if value == 0.0:
        return "0.0"
    mag = abs(value)
    shortest = repr(mag)
    if 1e-4 <= mag < 1e7 and "e" not in shortest and "E" not in shortest:
        frac = shortest.partition(".")[2]
        if len(frac) <= 6:
            return "-" + shortest if value < 0 else shortest
    dec = decimal.Decimal(shortest)
    _, digits, exponent = dec.as_tuple()
    digit_list = list(digits)
    while len(digit_list) > 1 and digit_list[-1] == 0:
        digit_list.pop()
        exponent += 1
    e10 = exponent + len(digit_list) - 1
    mantissa = str(digit_list[0])
    if len(digit_list) > 1:
        mantissa += "." + "".join(str(d) for d in digit_list[1:])
    out = f"{mantissa}e{e10}"
    return "-" + out if value < 0 else out


def format_literal(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, str):
        escaped = value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(value, (tuple, list)):
        return "[" + ", ".join(format_literal(v) for v in value) + "]"
    raise TypeError(f"not a literal: {value!r}")


def statement_text(path: ObjectPath | None, method: str, args) -> str:
    """Canonical statement line for a path + method + literal arguments."""
    call = f"{method}(" + ", ".join(format_literal(a) for a in args) + ")"
    if path is None:
        return call
    return f"{path.text()}.{call}"
