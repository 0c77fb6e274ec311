"""Object paths: canonical addresses of figure elements.

A path is the figure root plus at most two child segments, e.g.
``figure(1).axes[0].texts[2]``.  Figure indices are 1-based, child
indices 0-based.  Series are addressed with the ``lines`` segment name.
"""

from __future__ import annotations

from dataclasses import dataclass

# segment kinds valid directly under an axes
AXES_CHILD_KINDS = ("texts", "lines", "legend")


@dataclass(frozen=True)
class Segment:
    kind: str  # "axes" | "texts" | "lines" | "legend"
    index: int | None = None  # None only for "legend"

    def text(self) -> str:
        if self.index is None:
            return self.kind
        return f"{self.kind}[{self.index}]"


@dataclass(frozen=True)
class ObjectPath:
    figure_index: int
    segments: tuple[Segment, ...] = ()

    def text(self) -> str:
        parts = [f"figure({self.figure_index})"]
        parts.extend(seg.text() for seg in self.segments)
        return ".".join(parts)

    @property
    def kind(self) -> str:
        """Element kind the path addresses: figure, axes, text, lines, legend."""
        if not self.segments:
            return "figure"
        last = self.segments[-1].kind
        return {"axes": "axes", "texts": "text", "lines": "lines", "legend": "legend"}[last]

    def child(self, kind: str, index: int | None = None) -> "ObjectPath":
        return ObjectPath(self.figure_index, self.segments + (Segment(kind, index),))

    def parent(self) -> "ObjectPath":
        return ObjectPath(self.figure_index, self.segments[:-1])

    def __str__(self) -> str:
        return self.text()


def figure_path(index: int = 1) -> ObjectPath:
    return ObjectPath(index)


def axes_path(axes_index: int, figure_index: int = 1) -> ObjectPath:
    return ObjectPath(figure_index, (Segment("axes", axes_index),))


def text_path(axes_index: int, text_index: int, figure_index: int = 1) -> ObjectPath:
    return ObjectPath(figure_index, (Segment("axes", axes_index), Segment("texts", text_index)))


def series_path(axes_index: int, series_index: int, figure_index: int = 1) -> ObjectPath:
    return ObjectPath(figure_index, (Segment("axes", axes_index), Segment("lines", series_index)))


def legend_path(axes_index: int, figure_index: int = 1) -> ObjectPath:
    return ObjectPath(figure_index, (Segment("axes", axes_index), Segment("legend", None)))
