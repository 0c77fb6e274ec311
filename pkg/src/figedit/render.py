"""Deterministic SVG rendering of a figure document.

The renderer is the ground truth for previews and golden tests: identical
documents must produce byte-identical SVG on every platform.  That rules out
platform font metrics, so text extents come from a fixed monospace-equivalent
advance per glyph, and every emitted coordinate is formatted with exactly two
decimal places so libm rounding differences can never reach the output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .errors import DegenerateRange
from .geometry import ViewTransform
from .model import DEFAULT_FONTSIZE_PT, AxesNode, FigureDoc, LegendNode, SeriesNode, TextNode
from .paths import ObjectPath, axes_path, legend_path, series_path, text_path
from .script import format_float

PT_PER_INCH = 72.0

# monospace-equivalent advance per glyph, in em
GLYPH_ADVANCE_EM = 0.6
# baseline metrics in em, shared by every text element
ASCENT_EM = 0.8
DESCENT_EM = 0.2

TICK_LENGTH_PX = 4.0
TICK_LABEL_GAP_PX = 2.0
TITLE_GAP_PX = 6.0
LEGEND_PAD_PX = 4.0
LEGEND_SAMPLE_PX = 20.0

FRAME_COLOR = "#000000"
GRID_COLOR = "#dddddd"
BACKGROUND_COLOR = "#ffffff"

# hit-test priority when boxes overlap: texts above legends above series
# above the axes frame
_HIT_RANK = {"text": 0, "legend": 1, "lines": 2, "axes": 3}

# Cohen-Sutherland outcodes
_LEFT, _RIGHT, _BOTTOM, _TOP = 1, 2, 4, 8


@dataclass(frozen=True)
class BBox:
    """Axis-aligned pixel box, SVG coordinates (y down), edges inclusive."""

    x0: float
    y0: float
    x1: float
    y1: float

    def contains(self, x: float, y: float) -> bool:
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1


@dataclass(frozen=True)
class RenderOutput:
    svg_text: str
    element_index: list[tuple[ObjectPath, BBox]]


def _fmt(v: float) -> str:
    # exactly two decimals; never print negative zero
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def _attr(s: str) -> str:
    return escape(s, {'"': "&quot;"})


def default_ticks(lo: float, hi: float) -> list[float]:
    """Tick locations for an unconfigured axis.

    The step is m*10^k with m in {1, 2, 5, 10} nearest to a quarter of the
    range (ties prefer the smaller m); ticks are every multiple of the step
    inside [lo, hi].
    """
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
        raise DegenerateRange(f"cannot tick range [{lo!r}, {hi!r}]")
    raw = (hi - lo) / 4.0
    if raw <= 0.0 or not math.isfinite(raw):
        raise DegenerateRange(f"cannot tick range [{lo!r}, {hi!r}]")
    k = math.floor(math.log10(raw))
    scale = 10.0 ** k
    m = min((1, 2, 5, 10), key=lambda cand: (abs(cand * scale - raw), cand))
    step = m * scale
    q0, q1 = lo / step, hi / step
    # a sane range spans 2.7 to 7 steps; far more means float spacing at this
    # magnitude exceeds the step and no meaningful ticks exist
    if not (math.isfinite(q0) and math.isfinite(q1)) or q1 - q0 > 64:
        raise DegenerateRange(f"cannot tick range [{lo!r}, {hi!r}]")

    def tick(i: int) -> float:
        # the i-th multiple built from its exact decimal form, so values
        # print cleanly (0.6, never 0.6000000000000001)
        return float(f"{i * m}e{k}")

    # float ceil/floor of the quotient can be off by one; nudge until exact
    i0 = math.ceil(q0)
    for _ in range(4):
        if tick(i0 - 1) >= lo:
            i0 -= 1
        elif tick(i0) < lo:
            i0 += 1
        else:
            break
    i1 = math.floor(q1)
    for _ in range(4):
        if tick(i1 + 1) <= hi:
            i1 += 1
        elif tick(i1) > hi:
            i1 -= 1
        else:
            break
    ticks = [tick(i) for i in range(i0, i1 + 1)]
    if any(b <= a for a, b in zip(ticks, ticks[1:])):
        raise DegenerateRange(f"cannot tick range [{lo!r}, {hi!r}]")
    return ticks


def _clip_segment(
    x0: float, y0: float, x1: float, y1: float, box: BBox
) -> tuple[float, float, float, float] | None:
    """Cohen-Sutherland segment clip; endpoints exactly on an edge are kept."""

    def code(x: float, y: float) -> int:
        c = 0
        if x < box.x0:
            c |= _LEFT
        elif x > box.x1:
            c |= _RIGHT
        if y < box.y0:
            c |= _TOP
        elif y > box.y1:
            c |= _BOTTOM
        return c

    c0, c1 = code(x0, y0), code(x1, y1)
    while True:
        if not (c0 | c1):
            return x0, y0, x1, y1
        if c0 & c1:
            return None
        c = c0 or c1
        if c & _LEFT:
            x, y = box.x0, y0 + (y1 - y0) * (box.x0 - x0) / (x1 - x0)
        elif c & _RIGHT:
            x, y = box.x1, y0 + (y1 - y0) * (box.x1 - x0) / (x1 - x0)
        elif c & _TOP:
            x, y = x0 + (x1 - x0) * (box.y0 - y0) / (y1 - y0), box.y0
        else:
            x, y = x0 + (x1 - x0) * (box.y1 - y0) / (y1 - y0), box.y1
        if c == c0:
            x0, y0 = x, y
            c0 = code(x0, y0)
        else:
            x1, y1 = x, y
            c1 = code(x1, y1)


class _Canvas:
    """Accumulates SVG elements and the element index for one document."""

    def __init__(self, doc: FigureDoc) -> None:
        self.doc = doc
        self.vt = ViewTransform(doc.width_cm, doc.height_cm, doc.dpi)
        self.base_fs = DEFAULT_FONTSIZE_PT / PT_PER_INCH * doc.dpi
        self.parts: list[str] = []
        self.index: list[tuple[ObjectPath, BBox]] = []

    # figure fraction -> px (y flipped)
    def fx(self, v: float) -> float:
        return v * self.vt.width_px

    def fy(self, v: float) -> float:
        return self.vt.height_px - v * self.vt.height_px

    def text_width(self, content: str, fs_px: float) -> float:
        return len(content) * GLYPH_ADVANCE_EM * fs_px

    def emit(self, part: str) -> None:
        self.parts.append(part)

    def emit_text(
        self,
        x: float,
        y: float,
        content: str,
        fs_px: float,
        *,
        fill: str = FRAME_COLOR,
        anchor: str = "start",
        rotate_deg: float = 0.0,
        bold: bool = False,
        elem_id: str | None = None,
    ) -> None:
        attrs = [
            f'x="{_fmt(x)}" y="{_fmt(y)}"',
            f'font-size="{_fmt(fs_px)}"',
            'font-family="monospace"',
            f'fill="{fill}"',
        ]
        if elem_id is not None:
            attrs.insert(0, f'id="{_attr(elem_id)}"')
        if anchor != "start":
            attrs.append(f'text-anchor="{anchor}"')
        if bold:
            attrs.append('font-weight="bold"')
        if rotate_deg != 0.0:
            attrs.append(f'transform="rotate({_fmt(rotate_deg)} {_fmt(x)} {_fmt(y)})"')
        self.emit(f"<text {' '.join(attrs)}>{escape(content)}</text>")


def _text_bbox(x: float, y: float, content: str, fs_px: float, anchor: str, rotate_deg: float) -> BBox:
    width = len(content) * GLYPH_ADVANCE_EM * fs_px
    if anchor == "middle":
        left = x - width / 2.0
    elif anchor == "end":
        left = x - width
    else:
        left = x
    corners_local = [
        (left, y - ASCENT_EM * fs_px),
        (left + width, y - ASCENT_EM * fs_px),
        (left + width, y + DESCENT_EM * fs_px),
        (left, y + DESCENT_EM * fs_px),
    ]
    a = math.radians(rotate_deg)
    cos_a, sin_a = math.cos(a), math.sin(a)
    xs, ys = [], []
    for cx, cy in corners_local:
        dx, dy = cx - x, cy - y
        xs.append(x + dx * cos_a - dy * sin_a)
        ys.append(y + dx * sin_a + dy * cos_a)
    return BBox(min(xs), min(ys), max(xs), max(ys))


def _axis_tick_values(limits: tuple[float, float], explicit) -> tuple[list[float], list[str]]:
    lo, hi = min(limits), max(limits)
    if explicit is not None:
        locs, labels = [], []
        for i, v in enumerate(explicit.locations):
            if lo <= v <= hi:
                locs.append(v)
                labels.append(explicit.labels[i] if explicit.labels is not None else format_float(v))
        return locs, labels
    if lo >= hi:
        return [], []
    locs = default_ticks(lo, hi)
    return locs, [format_float(v) for v in locs]


def _render_series(c: _Canvas, path: ObjectPath, series: SeriesNode, frame: BBox, to_px) -> None:
    lw_px = series.linewidth_pt / PT_PER_INCH * c.doc.dpi
    runs: list[list[tuple[float, float]]] = []
    pts = [to_px(px, py) for px, py in series.points]
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        clipped = _clip_segment(x0, y0, x1, y1, frame)
        if clipped is None:
            continue
        cx0, cy0, cx1, cy1 = clipped
        if runs and runs[-1][-1] == (cx0, cy0):
            runs[-1].append((cx1, cy1))
        else:
            runs.append([(cx0, cy0), (cx1, cy1)])
    if len(pts) == 1:
        only = pts[0]
        if frame.contains(*only):
            runs.append([only, only])
    visible = [p for run in runs for p in run]
    for run in runs:
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in run)
        c.emit(
            f'<polyline id="{_attr(path.text())}" points="{coords}" fill="none" '
            f'stroke="{series.color}" stroke-width="{_fmt(lw_px)}"/>'
        )
    if visible:
        box = BBox(
            min(x for x, _ in visible),
            min(y for _, y in visible),
            max(x for x, _ in visible),
            max(y for _, y in visible),
        )
    else:
        box = BBox(frame.x0, frame.y0, frame.x0, frame.y0)
    c.index.append((path, box))


def _render_legend(c: _Canvas, path: ObjectPath, legend: LegendNode, ax: AxesNode, frame: BBox, ax_to_px) -> None:
    anchor_x, anchor_y = ax_to_px(legend.loc[0], legend.loc[1])
    if not legend.visible:
        c.index.append((path, BBox(anchor_x, anchor_y, anchor_x, anchor_y)))
        return
    fs = c.base_fs
    labels = [s.source[2] for s in ax.series]
    label_w = max((c.text_width(t, fs) for t in labels), default=0.0)
    row_h = 1.4 * fs
    box_w = LEGEND_PAD_PX + LEGEND_SAMPLE_PX + LEGEND_PAD_PX + label_w + LEGEND_PAD_PX
    box_h = 2 * LEGEND_PAD_PX + row_h * len(labels)
    box = BBox(anchor_x, anchor_y, anchor_x + box_w, anchor_y + box_h)
    c.emit(f'<g id="{_attr(path.text())}">')
    c.emit(
        f'<rect x="{_fmt(box.x0)}" y="{_fmt(box.y0)}" width="{_fmt(box_w)}" height="{_fmt(box_h)}" '
        f'fill="{BACKGROUND_COLOR}" stroke="{FRAME_COLOR}" stroke-width="1.00"/>'
    )
    for i, series in enumerate(ax.series):
        mid_y = box.y0 + LEGEND_PAD_PX + row_h * i + row_h / 2.0
        x0 = box.x0 + LEGEND_PAD_PX
        lw_px = series.linewidth_pt / PT_PER_INCH * c.doc.dpi
        c.emit(
            f'<line x1="{_fmt(x0)}" y1="{_fmt(mid_y)}" x2="{_fmt(x0 + LEGEND_SAMPLE_PX)}" y2="{_fmt(mid_y)}" '
            f'stroke="{series.color}" stroke-width="{_fmt(lw_px)}"/>'
        )
        c.emit_text(x0 + LEGEND_SAMPLE_PX + LEGEND_PAD_PX, mid_y + DESCENT_EM * fs, labels[i], fs)
    c.emit("</g>")
    c.index.append((path, box))


def _render_axes(c: _Canvas, ax_index: int, ax: AxesNode) -> None:
    doc = c.doc
    apath = axes_path(ax_index, doc.index)
    left, right = c.fx(ax.position.x), c.fx(ax.position.x + ax.position.w)
    top, bottom = c.fy(ax.position.y + ax.position.h), c.fy(ax.position.y)
    frame = BBox(left, top, right, bottom)
    fs = c.base_fs

    def data_to_px(vx: float, vy: float) -> tuple[float, float]:
        ux = (vx - ax.xlim[0]) / (ax.xlim[1] - ax.xlim[0])
        uy = (vy - ax.ylim[0]) / (ax.ylim[1] - ax.ylim[0])
        return left + ux * (right - left), bottom - uy * (bottom - top)

    def ax_to_px(ux: float, uy: float) -> tuple[float, float]:
        return left + ux * (right - left), bottom - uy * (bottom - top)

    xlocs, xlabels = _axis_tick_values(ax.xlim, ax.xticks)
    ylocs, ylabels = _axis_tick_values(ax.ylim, ax.yticks)

    c.emit(f'<g id="{_attr(apath.text())}">')
    if ax.grid:
        for v in xlocs:
            tx = data_to_px(v, ax.ylim[0])[0]
            c.emit(
                f'<line x1="{_fmt(tx)}" y1="{_fmt(top)}" x2="{_fmt(tx)}" y2="{_fmt(bottom)}" '
                f'stroke="{GRID_COLOR}" stroke-width="1.00"/>'
            )
        for v in ylocs:
            ty = data_to_px(ax.xlim[0], v)[1]
            c.emit(
                f'<line x1="{_fmt(left)}" y1="{_fmt(ty)}" x2="{_fmt(right)}" y2="{_fmt(ty)}" '
                f'stroke="{GRID_COLOR}" stroke-width="1.00"/>'
            )
    c.emit(
        f'<rect x="{_fmt(left)}" y="{_fmt(top)}" width="{_fmt(right - left)}" height="{_fmt(bottom - top)}" '
        f'fill="none" stroke="{FRAME_COLOR}" stroke-width="1.00"/>'
    )

    label_base = bottom + TICK_LENGTH_PX + TICK_LABEL_GAP_PX + ASCENT_EM * fs
    for v, text in zip(xlocs, xlabels):
        tx = data_to_px(v, ax.ylim[0])[0]
        c.emit(
            f'<line x1="{_fmt(tx)}" y1="{_fmt(bottom)}" x2="{_fmt(tx)}" y2="{_fmt(bottom + TICK_LENGTH_PX)}" '
            f'stroke="{FRAME_COLOR}" stroke-width="1.00"/>'
        )
        c.emit_text(tx, label_base, text, fs, anchor="middle")
    max_ylabel_w = max((c.text_width(t, fs) for t in ylabels), default=0.0)
    for v, text in zip(ylocs, ylabels):
        ty = data_to_px(ax.xlim[0], v)[1]
        c.emit(
            f'<line x1="{_fmt(left - TICK_LENGTH_PX)}" y1="{_fmt(ty)}" x2="{_fmt(left)}" y2="{_fmt(ty)}" '
            f'stroke="{FRAME_COLOR}" stroke-width="1.00"/>'
        )
        c.emit_text(left - TICK_LENGTH_PX - TICK_LABEL_GAP_PX, ty + DESCENT_EM * fs, text, fs, anchor="end")

    if ax.xlabel:
        c.emit_text((left + right) / 2.0, label_base + 1.4 * fs, ax.xlabel, fs, anchor="middle")
    if ax.ylabel:
        lx = left - TICK_LENGTH_PX - TICK_LABEL_GAP_PX - max_ylabel_w - TICK_LABEL_GAP_PX - DESCENT_EM * fs
        c.emit_text(lx, (top + bottom) / 2.0, ax.ylabel, fs, anchor="middle", rotate_deg=-90.0)
    if ax.title:
        c.emit_text((left + right) / 2.0, top - TITLE_GAP_PX, ax.title, 1.2 * fs, anchor="middle")

    c.index.append((apath, frame))
    for i, series in enumerate(ax.series):
        _render_series(c, series_path(ax_index, i, doc.index), series, frame, data_to_px)
    for i, text in enumerate(ax.texts):
        _render_text(c, text_path(ax_index, i, doc.index), text, ax_to_px)
    if ax.legend is not None:
        _render_legend(c, legend_path(ax_index, doc.index), ax.legend, ax, frame, ax_to_px)
    c.emit("</g>")


def _render_text(c: _Canvas, path: ObjectPath, node: TextNode, ax_to_px) -> None:
    x, y = ax_to_px(node.x, node.y)
    fs_px = node.fontsize_pt / PT_PER_INCH * c.doc.dpi
    # figure-space counterclockwise rotation is clockwise in y-down SVG space
    rot = -node.rotation_deg
    c.emit_text(
        x,
        y,
        node.content,
        fs_px,
        fill=node.color,
        rotate_deg=rot,
        bold=node.weight == "bold",
        elem_id=path.text(),
    )
    c.index.append((path, _text_bbox(x, y, node.content, fs_px, "start", rot)))


def render(doc: FigureDoc) -> RenderOutput:
    """Render the document to SVG plus a pixel index of selectable elements."""
    c = _Canvas(doc)
    w, h = _fmt(c.vt.width_px), _fmt(c.vt.height_px)
    c.emit(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">'
    )
    c.emit(f'<rect x="0.00" y="0.00" width="{w}" height="{h}" fill="{BACKGROUND_COLOR}"/>')
    for i, ax in enumerate(doc.axes):
        _render_axes(c, i, ax)
    c.emit("</svg>")
    return RenderOutput("\n".join(c.parts) + "\n", c.index)


def hit_test(out: RenderOutput, x_px: float, y_px: float) -> ObjectPath | None:
    """Topmost element under the point: texts, then legends, series, axes;
    later document order wins within a class."""
    best: tuple[int, int, ObjectPath] | None = None
    for order, (path, box) in enumerate(out.element_index):
        if box.contains(x_px, y_px):
            key = (_HIT_RANK[path.kind], -order)
            if best is None or key < (best[0], best[1]):
                best = (key[0], key[1], path)
    return None if best is None else best[2]


__all__ = [
    "BBox",
    "RenderOutput",
    "default_ticks",
    "hit_test",
    "render",
]
