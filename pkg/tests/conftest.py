"""Shared strategies and helpers for the test suite."""

from __future__ import annotations

import hypothesis.strategies as st

from figedit.methods import REGISTRY
from figedit.paths import ObjectPath, axes_path, figure_path, legend_path, series_path, text_path

finite_reals = st.floats(allow_nan=False, allow_infinity=False)

# printable-ish text without newlines; quotes and backslashes included on purpose
script_text = st.text(
    alphabet=st.characters(blacklist_categories=("Cs",), blacklist_characters="\n\r"),
    max_size=24,
)


@st.composite
def object_paths(draw) -> ObjectPath:
    figure_index = draw(st.integers(min_value=1, max_value=3))
    depth = draw(st.integers(min_value=0, max_value=2))
    path = ObjectPath(figure_index)
    if depth >= 1:
        path = path.child("axes", draw(st.integers(min_value=0, max_value=5)))
    if depth == 2:
        kind = draw(st.sampled_from(["texts", "lines", "legend"]))
        index = None if kind == "legend" else draw(st.integers(min_value=0, max_value=5))
        path = path.child(kind, index)
    return path


_literal_scalars = st.one_of(
    st.booleans(),
    st.integers(min_value=-(10**9), max_value=10**9),
    finite_reals,
    script_text,
)

literals = st.recursive(
    _literal_scalars,
    lambda inner: st.lists(inner, max_size=4).map(tuple),
    max_leaves=6,
)


def _path_for_kind(draw, kind: str) -> ObjectPath:
    if kind == "figure":
        return figure_path()
    axes_index = draw(st.integers(min_value=0, max_value=3))
    if kind == "axes":
        return axes_path(axes_index)
    if kind == "text":
        return text_path(axes_index, draw(st.integers(min_value=0, max_value=3)))
    if kind == "lines":
        return series_path(axes_index, draw(st.integers(min_value=0, max_value=3)))
    return legend_path(axes_index)


def _arg_for_type(draw, typ: str):
    reasonable = st.floats(allow_nan=False, allow_infinity=False, min_value=-1e6, max_value=1e6)
    if typ == "real":
        return draw(reasonable)
    if typ == "string":
        return draw(script_text)
    if typ == "bool":
        return draw(st.booleans())
    if typ == "rect":
        return tuple(draw(st.lists(reasonable, min_size=4, max_size=4)))
    if typ == "real_list":
        return tuple(draw(st.lists(reasonable, max_size=5)))
    if typ == "string_list":
        return tuple(draw(st.lists(script_text, max_size=5)))
    raise AssertionError(typ)


@st.composite
def whitelisted_calls(draw):
    """A (command_path, method, raw_args) triple drawn from the registry.

    command_path matches the method's target kind for non-creation methods
    and the parent kind for creation methods.
    """
    spec = draw(st.sampled_from(sorted(REGISTRY.values(), key=lambda s: (s.target_kind, s.name))))
    path = _path_for_kind(draw, spec.target_kind)
    args = tuple(_arg_for_type(draw, p.type) for p in spec.params)
    return path, spec.name, args
