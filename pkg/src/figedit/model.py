"""Figure scene graph: element types, path resolution, change application.

A FigureDoc is mutated exclusively through apply_change with whitelisted
statements, so a document is always reproducible by replaying statement
lines against a fresh doc.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable

from .errors import (
    ElementNotInDoc,
    InvariantViolation,
    NoLegend,
    NoSuchFigure,
    PathOutOfRange,
    UnknownMethod,
)
from .methods import coerce_args, lookup
from .paths import ObjectPath, figure_path
from .script import Statement

# matplotlib-style 10-color cycle for successive series on one axes
COLOR_CYCLE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
)

DEFAULT_WIDTH_CM = 16.0
DEFAULT_HEIGHT_CM = 10.0
DEFAULT_DPI = 100.0
DEFAULT_FONTSIZE_PT = 10.0
DEFAULT_LEGEND_LOC = (0.70, 0.96)
DEFAULT_LINEWIDTH_PT = 1.5

_HEX_COLOR = re.compile(r"^#[0-9a-fA-F]{6}$")

# loader(path, xcol, ycol) -> finite (x, y) pairs; wired to ingest by the session
DataLoader = Callable[[str, str, str], list[tuple[float, float]]]


@dataclass
class Rect:
    x: float
    y: float
    w: float
    h: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x, self.y, self.w, self.h)


@dataclass
class TickSet:
    locations: tuple[float, ...]
    labels: tuple[str, ...] | None = None


@dataclass
class TextNode:
    x: float
    y: float
    content: str
    fontsize_pt: float = DEFAULT_FONTSIZE_PT
    color: str = "#000000"
    rotation_deg: float = 0.0
    weight: str = "normal"


@dataclass
class LegendNode:
    loc: tuple[float, float] = DEFAULT_LEGEND_LOC
    visible: bool = True


@dataclass
class SeriesNode:
    source: tuple[str, str, str]  # (file path, x column, y column)
    points: list[tuple[float, float]]
    color: str
    linewidth_pt: float = DEFAULT_LINEWIDTH_PT


@dataclass
class AxesNode:
    position: Rect
    xlim: tuple[float, float] = (0.0, 1.0)
    ylim: tuple[float, float] = (0.0, 1.0)
    xlabel: str = ""
    ylabel: str = ""
    title: str = ""
    # locations and labels are stored independently: generated blocks replay
    # property statements in lexicographic order, so labels may arrive first
    xtick_locations: tuple[float, ...] | None = None
    xtick_labels: tuple[str, ...] | None = None
    ytick_locations: tuple[float, ...] | None = None
    ytick_labels: tuple[str, ...] | None = None
    series: list[SeriesNode] = field(default_factory=list)
    texts: list[TextNode] = field(default_factory=list)
    legend: LegendNode | None = None
    grid: bool = False

    @property
    def xticks(self) -> TickSet | None:
        return _pair_ticks(self.xtick_locations, self.xtick_labels)

    @property
    def yticks(self) -> TickSet | None:
        return _pair_ticks(self.ytick_locations, self.ytick_labels)


def _pair_ticks(locations, labels) -> TickSet | None:
    if locations is None:
        return None
    if labels is not None and len(labels) == len(locations):
        return TickSet(locations, labels)
    return TickSet(locations, None)


@dataclass
class FigureDoc:
    index: int = 1
    width_cm: float = DEFAULT_WIDTH_CM
    height_cm: float = DEFAULT_HEIGHT_CM
    dpi: float = DEFAULT_DPI
    axes: list[AxesNode] = field(default_factory=list)


# ---------------------------------------------------------------------------
# addressing
# ---------------------------------------------------------------------------


def serialize_path(doc: FigureDoc, element) -> ObjectPath:
    """Canonical path of an element found in the doc (matched by identity)."""
    if element is doc:
        return figure_path(doc.index)
    for i, axes in enumerate(doc.axes):
        base = figure_path(doc.index).child("axes", i)
        if element is axes:
            return base
        for j, text in enumerate(axes.texts):
            if element is text:
                return base.child("texts", j)
        for k, series in enumerate(axes.series):
            if element is series:
                return base.child("lines", k)
        if axes.legend is not None and element is axes.legend:
            return base.child("legend", None)
    raise ElementNotInDoc("element is not part of this figure")


def resolve_path(doc: FigureDoc, path: ObjectPath):
    """The element a path addresses; inverse of serialize_path."""
    if path.figure_index != doc.index:
        raise NoSuchFigure(f"no figure({path.figure_index}) in this document")
    current: object = doc
    for segment in path.segments:
        if segment.kind == "axes":
            if not isinstance(current, FigureDoc) or segment.index >= len(current.axes):
                raise PathOutOfRange(f"no element at {path.text()}")
            current = current.axes[segment.index]
        elif segment.kind == "texts":
            if not isinstance(current, AxesNode) or segment.index >= len(current.texts):
                raise PathOutOfRange(f"no element at {path.text()}")
            current = current.texts[segment.index]
        elif segment.kind == "lines":
            if not isinstance(current, AxesNode) or segment.index >= len(current.series):
                raise PathOutOfRange(f"no element at {path.text()}")
            current = current.series[segment.index]
        elif segment.kind == "legend":
            if not isinstance(current, AxesNode):
                raise PathOutOfRange(f"no element at {path.text()}")
            if current.legend is None:
                raise NoLegend(f"axes has no legend: {path.text()}")
            current = current.legend
        else:
            raise PathOutOfRange(f"no element at {path.text()}")
    return current


# ---------------------------------------------------------------------------
# change application
# ---------------------------------------------------------------------------


def _require_finite(*values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise InvariantViolation("value must be finite")


def _require_positive(value: float, what: str) -> None:
    _require_finite(value)
    if value <= 0:
        raise InvariantViolation(f"{what} must be positive")


def _valid_rect(rect: tuple[float, float, float, float]) -> Rect:
    _require_finite(*rect)
    x, y, w, h = rect
    if w < 0 or h < 0:
        raise InvariantViolation("width and height must be nonnegative")
    return Rect(x, y, w, h)


def _strictly_increasing(values: tuple[float, ...]) -> None:
    _require_finite(*values)
    for a, b in zip(values, values[1:]):
        if not a < b:
            raise InvariantViolation("tick locations must be strictly increasing")


def _valid_limits(lo: float, hi: float) -> tuple[float, float]:
    _require_finite(lo, hi)
    if lo == hi:
        raise InvariantViolation("limits must differ")
    return (lo, hi)


def _valid_color(color: str) -> str:
    if not _HEX_COLOR.match(color):
        raise InvariantViolation('color must be "#rrggbb" hex')
    return color.lower()


def apply_change(
    doc: FigureDoc, stmt: Statement, data_loader: DataLoader | None = None
) -> tuple[FigureDoc, ObjectPath | None]:
    """Apply one whitelisted statement; all-or-nothing.

    Returns (doc, created_path): created_path is the new child's path for
    creation methods (index = child count before insertion), else None.
    """
    if stmt.path is None:
        raise UnknownMethod(f"unknown function {stmt.method!r}")
    target = resolve_path(doc, stmt.path)
    spec = lookup(stmt.path.kind, stmt.method)
    args = coerce_args(spec, stmt.args)
    created = _HANDLERS[(spec.target_kind, spec.name)](doc, target, stmt.path, args, data_loader)
    return doc, created


def _h_set_size_cm(doc, target, path, args, loader):
    w, h = args
    _require_positive(w, "width_cm")
    _require_positive(h, "height_cm")
    target.width_cm, target.height_cm = w, h


def _h_set_dpi(doc, target, path, args, loader):
    (dpi,) = args
    _require_positive(dpi, "dpi")
    target.dpi = dpi


def _h_add_axes(doc, target, path, args, loader):
    rect = _valid_rect(args[0])
    index = len(target.axes)
    target.axes.append(AxesNode(position=rect))
    return path.child("axes", index)


def _h_axes_set_position(doc, target, path, args, loader):
    target.position = _valid_rect(args[0])


def _h_set_xlim(doc, target, path, args, loader):
    target.xlim = _valid_limits(*args)


def _h_set_ylim(doc, target, path, args, loader):
    target.ylim = _valid_limits(*args)


def _h_set_xlabel(doc, target, path, args, loader):
    target.xlabel = args[0]


def _h_set_ylabel(doc, target, path, args, loader):
    target.ylabel = args[0]


def _h_set_title(doc, target, path, args, loader):
    target.title = args[0]


def _h_set_xticks(doc, target, path, args, loader):
    _strictly_increasing(args[0])
    target.xtick_locations = args[0]


def _h_set_xticklabels(doc, target, path, args, loader):
    target.xtick_labels = args[0]


def _h_set_yticks(doc, target, path, args, loader):
    _strictly_increasing(args[0])
    target.ytick_locations = args[0]


def _h_set_yticklabels(doc, target, path, args, loader):
    target.ytick_labels = args[0]


def _h_plot_csv(doc, target, path, args, loader):
    if loader is None:
        raise RuntimeError("plot_csv requires a data loader")
    src_path, xcol, ycol = args
    points = loader(src_path, xcol, ycol)
    if not points:
        raise InvariantViolation("series has no plottable points")
    index = len(target.series)
    target.series.append(
        SeriesNode(source=(src_path, xcol, ycol), points=list(points), color=COLOR_CYCLE[index % len(COLOR_CYCLE)])
    )
    return path.child("lines", index)


def _h_text(doc, target, path, args, loader):
    x, y, content = args
    _require_finite(x, y)
    index = len(target.texts)
    target.texts.append(TextNode(x=x, y=y, content=content))
    return path.child("texts", index)


def _h_legend(doc, target, path, args, loader):
    # repeat calls keep the existing legend: replaying a block re-creates
    # the legend and must not discard later property statements
    if target.legend is None:
        target.legend = LegendNode()
    return path.child("legend", None)


def _h_grid(doc, target, path, args, loader):
    target.grid = args[0]


def _h_set_text(doc, target, path, args, loader):
    target.content = args[0]


def _h_text_set_position(doc, target, path, args, loader):
    x, y = args
    _require_finite(x, y)
    target.x, target.y = x, y


def _h_set_fontsize(doc, target, path, args, loader):
    _require_positive(args[0], "fontsize_pt")
    target.fontsize_pt = args[0]


def _h_set_color(doc, target, path, args, loader):
    target.color = _valid_color(args[0])


def _h_set_rotation(doc, target, path, args, loader):
    _require_finite(args[0])
    target.rotation_deg = args[0]


def _h_set_weight(doc, target, path, args, loader):
    if args[0] not in ("normal", "bold"):
        raise InvariantViolation('weight must be "normal" or "bold"')
    target.weight = args[0]


def _h_set_loc_fraction(doc, target, path, args, loader):
    x, y = args
    _require_finite(x, y)
    target.loc = (x, y)


def _h_set_visible(doc, target, path, args, loader):
    target.visible = args[0]


_HANDLERS = {
    ("figure", "set_size_cm"): _h_set_size_cm,
    ("figure", "set_dpi"): _h_set_dpi,
    ("figure", "add_axes"): _h_add_axes,
    ("axes", "set_position"): _h_axes_set_position,
    ("axes", "set_xlim"): _h_set_xlim,
    ("axes", "set_ylim"): _h_set_ylim,
    ("axes", "set_xlabel"): _h_set_xlabel,
    ("axes", "set_ylabel"): _h_set_ylabel,
    ("axes", "set_title"): _h_set_title,
    ("axes", "set_xticks"): _h_set_xticks,
    ("axes", "set_xticklabels"): _h_set_xticklabels,
    ("axes", "set_yticks"): _h_set_yticks,
    ("axes", "set_yticklabels"): _h_set_yticklabels,
    ("axes", "plot_csv"): _h_plot_csv,
    ("axes", "text"): _h_text,
    ("axes", "legend"): _h_legend,
    ("axes", "grid"): _h_grid,
    ("text", "set_text"): _h_set_text,
    ("text", "set_position"): _h_text_set_position,
    ("text", "set_fontsize"): _h_set_fontsize,
    ("text", "set_color"): _h_set_color,
    ("text", "set_rotation"): _h_set_rotation,
    ("text", "set_weight"): _h_set_weight,
    ("legend", "set_loc_fraction"): _h_set_loc_fraction,
    ("legend", "set_visible"): _h_set_visible,
}


# ---------------------------------------------------------------------------
# JSON projection
# ---------------------------------------------------------------------------


def _ticks_json(ticks: TickSet | None):
    if ticks is None:
        return None
    return {
        "locations": list(ticks.locations),
        "labels": list(ticks.labels) if ticks.labels is not None else None,
    }


def to_json(doc: FigureDoc) -> dict:
    return {
        "index": doc.index,
        "width_cm": doc.width_cm,
        "height_cm": doc.height_cm,
        "dpi": doc.dpi,
        "axes": [
            {
                "position": {"x": a.position.x, "y": a.position.y, "w": a.position.w, "h": a.position.h},
                "xlim": list(a.xlim),
                "ylim": list(a.ylim),
                "xlabel": a.xlabel,
                "ylabel": a.ylabel,
                "title": a.title,
                "xticks": _ticks_json(a.xticks),
                "yticks": _ticks_json(a.yticks),
                "series": [
                    {
                        "source": {"path": s.source[0], "xcol": s.source[1], "ycol": s.source[2]},
                        "points": [[x, y] for x, y in s.points],
                        "color": s.color,
                        "linewidth_pt": s.linewidth_pt,
                    }
                    for s in a.series
                ],
                "texts": [
                    {
                        "x": t.x,
                        "y": t.y,
                        "content": t.content,
                        "fontsize_pt": t.fontsize_pt,
                        "color": t.color,
                        "rotation_deg": t.rotation_deg,
                        "weight": t.weight,
                    }
                    for t in a.texts
                ],
                "legend": None if a.legend is None else {"loc": list(a.legend.loc), "visible": a.legend.visible},
                "grid": a.grid,
            }
            for a in doc.axes
        ],
    }
