"""Renderer tests: tick selection, SVG determinism, element index, hit tests."""

import copy
import re
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from figedit.errors import DegenerateRange
from figedit.model import AxesNode, FigureDoc, LegendNode, Rect, SeriesNode, TextNode, TickSet
from figedit.paths import axes_path, legend_path, series_path, text_path
from figedit.render import BBox, default_ticks, hit_test, render
from figedit.render import _axis_tick_values  # noqa: PLC2701  (contract helper)

# ---------------------------------------------------------------------------
# default_ticks
# ---------------------------------------------------------------------------

# frozen expectations, each enumerated by hand from the step rule:
# raw = span/4, k = floor(log10 raw), m in {1,2,5,10} nearest raw (tie: smaller)
TICK_ORACLE = [
    ((0.0, 10.0), [0.0, 2.0, 4.0, 6.0, 8.0, 10.0]),  # raw 2.5 -> step 2
    ((0.0, 1.0), [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]),  # raw 0.25 -> step 0.2
    ((-1.0, 1.0), [-1.0, -0.5, 0.0, 0.5, 1.0]),  # raw 0.5 -> step 0.5
    ((0.0, 100.0), [0.0, 20.0, 40.0, 60.0, 80.0, 100.0]),  # raw 25 -> step 20
    ((3.0, 17.0), [4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0]),  # raw 3.5 ties 2/5 -> 2
    ((7.0, 8.0), [7.0, 7.2, 7.4, 7.6, 7.8, 8.0]),  # raw 0.25 -> step 0.2
    ((0.0, 0.5), [0.0, 0.1, 0.2, 0.3, 0.4, 0.5]),  # raw 0.125 -> step 0.1
    ((2.5, 2.6), [2.5, 2.52, 2.54, 2.56, 2.58, 2.6]),  # raw 0.025 -> step 0.02
    ((0.0, 6.0), [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0]),  # raw 1.5 ties 1/2 -> 1
    ((0.0, 30.0), [0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0]),  # raw 7.5 ties 5/10 -> 5
]


@pytest.mark.parametrize("limits, expected", TICK_ORACLE)
def test_default_ticks_oracle(limits, expected):
    got = default_ticks(*limits)
    assert got == pytest.approx(expected, rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("lo, hi", [(1.0, 1.0), (2.0, 1.0), (float("inf"), 1.0), (0.0, float("nan"))])
def test_default_ticks_degenerate(lo, hi):
    with pytest.raises(DegenerateRange):
        default_ticks(lo, hi)


spans = st.floats(min_value=1e-3, max_value=1e6, allow_nan=False)
origins = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)


@settings(max_examples=300, deadline=None)
@given(origins, spans)
def test_default_ticks_properties(lo, span):
    hi = lo + span
    ticks = default_ticks(lo, hi)
    assert 2 <= len(ticks) <= 11
    assert all(a < b for a, b in zip(ticks, ticks[1:]))
    assert all(lo <= t <= hi for t in ticks)
    steps = [b - a for a, b in zip(ticks, ticks[1:])]
    assert all(s == pytest.approx(steps[0], rel=1e-6) for s in steps)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=1e-3, max_value=1e6, allow_nan=False))
def test_default_ticks_symmetric_includes_zero(a):
    ticks = default_ticks(-a, a)
    assert 0.0 in ticks
    for t in ticks:
        assert -t == pytest.approx(min(ticks, key=lambda u: abs(u + t)), abs=1e-9 * a)


# ---------------------------------------------------------------------------
# tick value pairing and filtering
# ---------------------------------------------------------------------------


def test_explicit_ticks_outside_limits_are_dropped():
    ticks = TickSet((0.0, 0.5, 2.0), ("a", "b", "c"))
    locs, labels = _axis_tick_values((0.0, 1.0), ticks)
    assert locs == [0.0, 0.5]
    assert labels == ["a", "b"]


def test_unlabeled_ticks_use_canonical_float_text():
    locs, labels = _axis_tick_values((0.0, 1.0), TickSet((0.0, 0.25, 1.0)))
    assert labels == ["0.0", "0.25", "1.0"]


def test_inverted_limits_use_sorted_range():
    locs, _ = _axis_tick_values((1.0, 0.0), None)
    assert locs == pytest.approx([0.0, 0.2, 0.4, 0.6, 0.8, 1.0])


# ---------------------------------------------------------------------------
# render
# ---------------------------------------------------------------------------

EMPTY_SVG = (
    '<svg xmlns="http://www.w3.org/2000/svg" width="393.70" height="393.70" '
    'viewBox="0 0 393.70 393.70">\n'
    '<rect x="0.00" y="0.00" width="393.70" height="393.70" fill="#ffffff"/>\n'
    "</svg>\n"
)


def empty_doc():
    return FigureDoc(index=1, width_cm=10.0, height_cm=10.0, dpi=100.0)


def sample_doc():
    series = SeriesNode(
        source=("data.csv", "t", "y"),
        points=[(0.0, 0.0), (0.5, 0.8), (1.0, 0.4)],
        color="#1f77b4",
    )
    ax = AxesNode(
        position=Rect(0.1, 0.1, 0.8, 0.8),
        xlabel="time (s)",
        ylabel="v",
        title="Run",
        series=[series],
        texts=[TextNode(0.5, 0.5, "peak")],
        legend=LegendNode(),
        grid=True,
    )
    return FigureDoc(index=1, width_cm=10.0, height_cm=8.0, dpi=100.0, axes=[ax])


def test_empty_figure_golden():
    assert render(empty_doc()).svg_text == EMPTY_SVG


def test_render_is_deterministic():
    doc = sample_doc()
    assert render(doc).svg_text == render(copy.deepcopy(doc)).svg_text


def test_svg_is_well_formed_xml_with_hostile_strings():
    doc = sample_doc()
    doc.axes[0].title = 'a<b & "c"'
    doc.axes[0].texts[0].content = "x < y & z"
    doc.axes[0].xtick_locations = (0.0, 1.0)
    doc.axes[0].xtick_labels = ('lo"', "&hi")
    root = ET.fromstring(render(doc).svg_text)
    assert root.tag.endswith("svg")


def test_all_attribute_coordinates_have_two_decimals():
    # attribute values only; text content (tick labels) is display text
    svg = render(sample_doc()).svg_text
    assert re.search(r'="[^"]*\d\.\d{3}', svg) is None
    assert re.search(r'="[^"]*\d\.\d"', svg) is None


def test_full_canvas_axes_bbox_is_canvas():
    doc = empty_doc()
    doc.axes.append(AxesNode(position=Rect(0.0, 0.0, 1.0, 1.0)))
    out = render(doc)
    (path, box), *_ = out.element_index
    assert path == axes_path(0)
    assert (box.x0, box.y0) == (0.0, 0.0)
    assert box.x1 == pytest.approx(10.0 / 2.54 * 100.0)
    assert box.y1 == pytest.approx(10.0 / 2.54 * 100.0)


def test_element_index_covers_every_element():
    out = render(sample_doc())
    got = {path.text() for path, _ in out.element_index}
    assert got == {
        "figure(1).axes[0]",
        "figure(1).axes[0].lines[0]",
        "figure(1).axes[0].texts[0]",
        "figure(1).axes[0].legend",
    }


def test_element_ids_appear_in_svg():
    out = render(sample_doc())
    for path, _ in out.element_index:
        assert f'id="{path.text()}"' in out.svg_text


@settings(max_examples=100, deadline=None)
@given(
    st.floats(min_value=-0.2, max_value=1.0, allow_nan=False),
    st.floats(min_value=-0.2, max_value=1.0, allow_nan=False),
    st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
    st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
)
def test_axes_bbox_matches_position_mapping(x, y, w, h):
    doc = empty_doc()
    doc.axes.append(AxesNode(position=Rect(x, y, w, h)))
    out = render(doc)
    box = out.element_index[0][1]
    canvas = 10.0 / 2.54 * 100.0
    assert box.x0 == pytest.approx(x * canvas, abs=0.5)
    assert box.x1 == pytest.approx((x + w) * canvas, abs=0.5)
    assert box.y0 == pytest.approx(canvas - (y + h) * canvas, abs=0.5)
    assert box.y1 == pytest.approx(canvas - y * canvas, abs=0.5)


def test_y_axis_is_flipped():
    # an axes near the figure bottom must land near the SVG bottom (large y)
    doc = empty_doc()
    doc.axes.append(AxesNode(position=Rect(0.1, 0.0, 0.2, 0.2)))
    box = render(doc).element_index[0][1]
    canvas = 10.0 / 2.54 * 100.0
    assert box.y1 == pytest.approx(canvas)


def test_series_polyline_is_clipped_to_frame():
    doc = empty_doc()
    series = SeriesNode(
        source=("d.csv", "a", "b"),
        points=[(-0.5, 0.5), (0.5, 0.5), (0.5, 2.0)],
        color="#112233",
    )
    doc.axes.append(AxesNode(position=Rect(0.1, 0.1, 0.8, 0.8), series=[series]))
    out = render(doc)
    frame = out.element_index[0][1]
    polylines = re.findall(r'<polyline[^>]*points="([^"]*)"', out.svg_text)
    assert len(polylines) == 1  # both segments survive clipping, joined
    for pair in polylines[0].split(" "):
        px, py = map(float, pair.split(","))
        assert frame.x0 - 0.01 <= px <= frame.x1 + 0.01
        assert frame.y0 - 0.01 <= py <= frame.y1 + 0.01


def test_fully_outside_series_draws_nothing_but_stays_indexed():
    doc = empty_doc()
    series = SeriesNode(source=("d.csv", "a", "b"), points=[(2.0, 2.0), (3.0, 3.0)], color="#112233")
    doc.axes.append(AxesNode(position=Rect(0.1, 0.1, 0.8, 0.8), series=[series]))
    out = render(doc)
    assert "<polyline" not in out.svg_text
    paths = [p.text() for p, _ in out.element_index]
    assert "figure(1).axes[0].lines[0]" in paths


def test_invisible_legend_not_drawn_but_indexed():
    doc = sample_doc()
    doc.axes[0].legend.visible = False
    out = render(doc)
    assert 'id="figure(1).axes[0].legend"' not in out.svg_text
    entry = dict((p.text(), b) for p, b in out.element_index)["figure(1).axes[0].legend"]
    assert (entry.x0, entry.y0) == (entry.x1, entry.y1)


def test_grid_lines_only_when_enabled():
    doc = sample_doc()
    assert "#dddddd" in render(doc).svg_text
    doc.axes[0].grid = False
    assert "#dddddd" not in render(doc).svg_text


def test_text_rotation_is_clockwise_negative_in_svg():
    doc = sample_doc()
    doc.axes[0].texts[0].rotation_deg = 30.0
    assert "rotate(-30.00" in render(doc).svg_text


def test_ylabel_is_rotated():
    assert "rotate(-90.00" in render(sample_doc()).svg_text


def test_bold_text_weight():
    doc = sample_doc()
    doc.axes[0].texts[0].weight = "bold"
    assert 'font-weight="bold"' in render(doc).svg_text


def test_inverted_limits_render():
    doc = sample_doc()
    doc.axes[0].xlim = (1.0, 0.0)
    root = ET.fromstring(render(doc).svg_text)
    assert root.tag.endswith("svg")


def test_zero_size_axes_renders():
    doc = empty_doc()
    doc.axes.append(AxesNode(position=Rect(0.5, 0.5, 0.0, 0.0)))
    out = render(doc)
    box = out.element_index[0][1]
    assert box.x0 == box.x1 and box.y0 == box.y1


# ---------------------------------------------------------------------------
# hit_test
# ---------------------------------------------------------------------------


def center(box: BBox) -> tuple[float, float]:
    return ((box.x0 + box.x1) / 2.0, (box.y0 + box.y1) / 2.0)


def test_hit_only_axes():
    doc = empty_doc()
    doc.axes.append(AxesNode(position=Rect(0.2, 0.2, 0.5, 0.5)))
    out = render(doc)
    assert hit_test(out, *center(out.element_index[0][1])) == axes_path(0)


def test_hit_prefers_text_over_everything():
    out = render(sample_doc())
    boxes = dict((p.text(), b) for p, b in out.element_index)
    assert hit_test(out, *center(boxes["figure(1).axes[0].texts[0]"])) == text_path(0, 0)


def test_hit_text_beats_legend_on_overlap():
    doc = sample_doc()
    doc.axes[0].texts[0] = TextNode(0.70, 0.90, "over legend")
    out = render(doc)
    boxes = dict((p.text(), b) for p, b in out.element_index)
    tbox = boxes["figure(1).axes[0].texts[0]"]
    lbox = boxes["figure(1).axes[0].legend"]
    overlap_x = max(tbox.x0, lbox.x0) + 0.1
    overlap_y = max(tbox.y0, lbox.y0) + 0.1
    if tbox.contains(overlap_x, overlap_y) and lbox.contains(overlap_x, overlap_y):
        assert hit_test(out, overlap_x, overlap_y) == text_path(0, 0)


def test_hit_later_text_wins():
    doc = sample_doc()
    doc.axes[0].texts.append(TextNode(0.5, 0.5, "peak"))
    out = render(doc)
    boxes = dict((p.text(), b) for p, b in out.element_index)
    assert hit_test(out, *center(boxes["figure(1).axes[0].texts[1]"])) == text_path(0, 1)


def test_hit_legend():
    out = render(sample_doc())
    boxes = dict((p.text(), b) for p, b in out.element_index)
    point = center(boxes["figure(1).axes[0].legend"])
    assert hit_test(out, *point) == legend_path(0)


def test_hit_series_beats_axes():
    doc = empty_doc()
    series = SeriesNode(source=("d.csv", "a", "b"), points=[(0.4, 0.4), (0.6, 0.6)], color="#112233")
    doc.axes.append(AxesNode(position=Rect(0.1, 0.1, 0.8, 0.8), series=[series]))
    out = render(doc)
    boxes = dict((p.text(), b) for p, b in out.element_index)
    assert hit_test(out, *center(boxes["figure(1).axes[0].lines[0]"])) == series_path(0, 0)


def test_hit_outside_everything_is_none():
    out = render(sample_doc())
    assert hit_test(out, 1.0, 1.0) is None
