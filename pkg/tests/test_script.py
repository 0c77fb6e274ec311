"""Grammar tests: classification, statement parsing, canonical emission."""

import math

import pytest
from hypothesis import given

from figedit.errors import ScriptSyntaxError
from figedit.paths import axes_path, figure_path
from figedit.script import (
    MARKER,
    SENTINEL_END,
    SENTINEL_START,
    format_float,
    format_literal,
    parse_line,
    parse_statement,
    statement_text,
)

from conftest import finite_reals, literals, object_paths, script_text, whitelisted_calls

# ---------------------------------------------------------------------------
# line classification
# ---------------------------------------------------------------------------


def test_sentinel_lines_classify():
    assert parse_line(SENTINEL_START).kind == "sentinel_start"
    assert parse_line(SENTINEL_END).kind == "sentinel_end"
    assert parse_line("  #% start: anything").kind == "sentinel_start"
    assert parse_line("#% end:").kind == "sentinel_end"


def test_marker_classifies():
    assert parse_line("show()").kind == "marker"
    assert parse_line("  show()  ").kind == "marker"
    assert parse_line("show()\r").kind == "marker"


def test_comment_and_blank_classify():
    assert parse_line("# a note").kind == "comment"
    assert parse_line("   # indented").kind == "comment"
    assert parse_line("").kind == "blank"
    assert parse_line("   \t").kind == "blank"
    assert parse_line("\r").kind == "blank"


def test_statement_classifies_with_payload():
    line = parse_line("figure(1).axes[0].set_position([0.2, 0.2, 0.6, 0.6])")
    assert line.kind == "statement"
    assert line.error is None
    st = line.statement
    assert st.path == axes_path(0)
    assert st.method == "set_position"
    assert st.args == ((0.2, 0.2, 0.6, 0.6),)


def test_malformed_statement_carries_error_not_raise():
    line = parse_line('figure(1).axes[0].set_title("oops')
    assert line.kind == "statement"
    assert line.statement is None
    assert isinstance(line.error, ScriptSyntaxError)
    assert line.error.column is not None


@given(script_text)
def test_classification_is_total(text):
    line = parse_line(text)
    assert line.kind in ("statement", "comment", "blank", "marker", "sentinel_start", "sentinel_end")
    assert line.text == text


def test_marker_constant():
    assert MARKER == "show()"


# ---------------------------------------------------------------------------
# statement parsing
# ---------------------------------------------------------------------------


def test_parse_figure_method():
    st = parse_statement("figure(1).set_size_cm(16.0, 10.0)")
    assert st.path == figure_path()
    assert st.method == "set_size_cm"
    assert st.args == (16.0, 10.0)


def test_parse_tolerates_whitespace():
    st = parse_statement("  figure(1).set_dpi( 100.0 )")
    assert st.method == "set_dpi"
    assert st.args == (100.0,)


def test_parse_negative_and_signed_numbers():
    st = parse_statement("figure(1).axes[0].set_xlim(-1.5, +2)")
    assert st.args == (-1.5, 2)
    assert isinstance(st.args[1], int)


def test_parse_booleans_and_lists():
    st = parse_statement("figure(1).axes[0].grid(true)")
    assert st.args == (True,)
    st = parse_statement('figure(1).axes[0].set_xticklabels(["a", "b"])')
    assert st.args == (("a", "b"),)
    st = parse_statement("figure(1).axes[0].set_xticks([])")
    assert st.args == ((),)


def test_parse_string_escapes():
    st = parse_statement('figure(1).axes[0].set_title("say \\"hi\\"")')
    assert st.args == ('say "hi"',)
    st = parse_statement('figure(1).axes[0].set_title("back\\\\slash")')
    assert st.args == ("back\\slash",)


def test_parse_legend_segment_vs_legend_call():
    call = parse_statement("figure(1).axes[0].legend()")
    assert call.path == axes_path(0)
    assert call.method == "legend"
    assert call.args == ()
    seg = parse_statement("figure(1).axes[0].legend.set_visible(false)")
    assert seg.path.kind == "legend"
    assert seg.method == "set_visible"
    assert seg.args == (False,)


def test_parse_bare_call():
    st = parse_statement("legend()")
    assert st.path is None
    assert st.method == "legend"


def test_parse_exponent_numbers():
    st = parse_statement("figure(1).set_dpi(1.5e2)")
    assert st.args == (150.0,)
    st = parse_statement("figure(1).set_dpi(5e7)")
    assert st.args == (5e7,)
    assert isinstance(st.args[0], float)


@pytest.mark.parametrize(
    "bad",
    [
        'figure(1).axes[0].set_xlabel("time (s)"',  # missing close paren
        'figure(1).axes[0].set_title("unclosed',
        "figure(1).axes[0].set_dpi(1.0) extra",
        "figure(0).set_dpi(1.0)",
        "figure(1).axes[-1].set_xlim(0.0, 1.0)",
        "figure(1).widgets[0].set_xlim(0.0, 1.0)",
        "figure(1).texts[0].set_text(\"a\")",
        "figure(1).axes[0].texts[0].texts[0].set_text(\"a\")",
        "figure(1)",
        "figure(1).",
        "figure(1).axes[0].set_xlim(0.0,, 1.0)",
        "figure(1).axes[0].set_xlim(0.0 1.0)",
        'figure(1).axes[0].set_title("bad \\n escape")',
        "figure(1).axes[0].set_dpi(1e999)",
        "figure(1).axes[0] .. set_dpi(1.0)",
        "figure(1).axes[0].set_xticks([1.0, )",
    ],
)
def test_parse_rejects_malformed(bad):
    with pytest.raises(ScriptSyntaxError) as err:
        parse_statement(bad)
    assert err.value.column is not None
    assert err.value.column >= 1


def test_syntax_error_column_points_at_offender():
    line = "figure(1).set_dpi(1.0) extra"
    with pytest.raises(ScriptSyntaxError) as err:
        parse_statement(line)
    assert err.value.column == line.index("extra") + 1


# ---------------------------------------------------------------------------
# float formatting (frozen oracle table, computed by hand from the rule)
# ---------------------------------------------------------------------------

FLOAT_ORACLE = [
    (0.0, "0.0"),
    (-0.0, "0.0"),
    (0.2, "0.2"),
    (16.0, "16.0"),
    (-0.5, "-0.5"),
    (0.0001, "0.0001"),
    (0.123456, "0.123456"),
    (9999999.0, "9999999.0"),
    (0.30000000000000004, "3.0000000000000004e-1"),
    (0.1234567, "1.234567e-1"),
    (1 / 3, "3.333333333333333e-1"),
    (50000000.0, "5e7"),
    (10000000.0, "1e7"),
    (1.5e-07, "1.5e-7"),
    (9.9999e-05, "9.9999e-5"),
    (1e308, "1e308"),
    (5e-324, "5e-324"),
    (-1.5e-07, "-1.5e-7"),
]


@pytest.mark.parametrize("value,expected", FLOAT_ORACLE)
def test_float_formatting_oracle(value, expected):
    assert format_float(value) == expected


@given(finite_reals)
def test_float_format_round_trips_exactly(value):
    assert float(format_float(value)) == value or (value != value)


@given(finite_reals)
def test_float_format_respects_canonical_shape(value):
    out = format_float(value)
    mag = abs(value)
    if "e" in out:
        mantissa, _, _ = out.partition("e")
        mantissa = mantissa.lstrip("-")
        assert mantissa[0] != "0" or mantissa == "0.0"
        assert not mantissa.endswith("0") or "." not in mantissa
        if value != 0.0:
            assert not (1e-4 <= mag < 1e7) or len(repr(mag).partition(".")[2]) > 6
    else:
        assert "." in out
        assert value == 0.0 or (1e-4 <= mag < 1e7)
        assert len(out.partition(".")[2]) <= 6


def test_float_format_rejects_non_finite():
    with pytest.raises(ValueError):
        format_float(math.inf)
    with pytest.raises(ValueError):
        format_float(math.nan)


# ---------------------------------------------------------------------------
# canonical emission
# ---------------------------------------------------------------------------


def test_statement_text_examples():
    assert (
        statement_text(axes_path(0), "set_position", ((0.2, 0.2, 0.6, 0.6),))
        == "figure(1).axes[0].set_position([0.2, 0.2, 0.6, 0.6])"
    )
    assert statement_text(figure_path(), "set_size_cm", (16.0, 10.0)) == "figure(1).set_size_cm(16.0, 10.0)"
    assert statement_text(axes_path(0), "set_title", ('say "hi"',)) == 'figure(1).axes[0].set_title("say \\"hi\\"")'
    assert statement_text(axes_path(0), "legend", ()) == "figure(1).axes[0].legend()"


def test_format_literal_forms():
    assert format_literal(True) == "true"
    assert format_literal(False) == "false"
    assert format_literal(7) == "7"
    assert format_literal(()) == "[]"
    assert format_literal((1.0, "a")) == '[1.0, "a"]'
    assert format_literal("a\\b") == '"a\\\\b"'


def _same_literal(a, b) -> bool:
    if isinstance(a, bool) or isinstance(b, bool):
        return type(a) is type(b) and a == b
    if isinstance(a, tuple) and isinstance(b, tuple):
        return len(a) == len(b) and all(_same_literal(x, y) for x, y in zip(a, b))
    if isinstance(a, tuple) or isinstance(b, tuple):
        return False
    if isinstance(a, float) and isinstance(b, float):
        return a == b
    return type(a) is type(b) and a == b


@given(object_paths(), literals)
def test_emit_parse_single_literal_round_trip(path, literal):
    line = statement_text(path, "set_anything", (literal,))
    st_ = parse_statement(line)
    assert st_.path == path
    assert st_.method == "set_anything"
    assert len(st_.args) == 1
    assert _same_literal(st_.args[0], literal)


@given(whitelisted_calls())
def test_emit_parse_round_trip_for_whitelisted_calls(call):
    path, method, args = call
    line = statement_text(path, method, args)
    st_ = parse_statement(line)
    assert st_.path == path
    assert st_.method == method
    assert _same_literal(st_.args, args)


@given(whitelisted_calls())
def test_emission_is_deterministic(call):
    path, method, args = call
    assert statement_text(path, method, args) == statement_text(path, method, args)
