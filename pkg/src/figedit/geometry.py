"""Drag and resize mathematics, unit conversion, and snapping.

All rects are figure fractions with origin bottom-left.  Pixel deltas come
from the pointer, so they are screen-oriented: positive dy_px moves DOWN,
which decreases figure-fraction y.  Handles are named by screen compass
directions ("n" is the top edge, the high-y edge in figure fractions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import Rect

SNAP_DEFAULT_THRESHOLD_PX = 8.0
HANDLES = ("n", "ne", "e", "se", "s", "sw", "w", "nw")

_ALIGN_EPS = 1e-12
MIN_SIZE_FRACTION = 0.01


@dataclass(frozen=True)
class Guide:
    orientation: str  # "v" for x alignments, "h" for y alignments
    position: float  # aligned coordinate; for size-match, the matched size
    kind: str  # "edge" | "center" | "size-match"


@dataclass(frozen=True)
class SnapResult:
    rect: Rect
    guides: tuple[Guide, ...]


@dataclass(frozen=True)
class ViewTransform:
    width_cm: float
    height_cm: float
    dpi: float

    @property
    def width_px(self) -> float:
        return self.width_cm / 2.54 * self.dpi

    @property
    def height_px(self) -> float:
        return self.height_cm / 2.54 * self.dpi

    def cm_to_px(self, v: float) -> float:
        return v / 2.54 * self.dpi

    def px_to_fraction(self, axis: str, v: float) -> float:
        return v / (self.width_px if axis == "x" else self.height_px)

    def fraction_to_px(self, axis: str, v: float) -> float:
        return v * (self.width_px if axis == "x" else self.height_px)


def _grips(handle: str) -> tuple[str | None, str | None]:
    """Which edge a resize handle grips per axis: ('low'|'high'|None) for x, y."""
    x = "high" if "e" in handle else "low" if "w" in handle else None
    y = "high" if "n" in handle else "low" if "s" in handle else None
    return x, y


def drag(rect: Rect, dx_px: float, dy_px: float, mode: str, vt: ViewTransform, handle: str | None = None) -> Rect:
    """Translate (mode="move") or resize by one of 8 handles (mode="resize").

    Resizing moves only the gripped edge(s); width and height are clamped to
    MIN_SIZE_FRACTION by pinning the opposite edge.
    """
    dx = vt.px_to_fraction("x", dx_px)
    dy = -vt.px_to_fraction("y", dy_px)  # screen y points down
    if mode == "move":
        return Rect(rect.x + dx, rect.y + dy, rect.w, rect.h)
    if mode != "resize" or handle not in HANDLES:
        raise ValueError(f"mode must be 'move' or 'resize' with a handle from {HANDLES}")
    x, y, w, h = rect.x, rect.y, rect.w, rect.h
    grip_x, grip_y = _grips(handle)
    if grip_x == "high":
        w = max(w + dx, MIN_SIZE_FRACTION)
    elif grip_x == "low":
        right = x + w
        w = max(w - dx, MIN_SIZE_FRACTION)
        x = right - w
    if grip_y == "high":
        h = max(h + dy, MIN_SIZE_FRACTION)
    elif grip_y == "low":
        top = y + h
        h = max(h - dy, MIN_SIZE_FRACTION)
        y = top - h
    return Rect(x, y, w, h)


@dataclass(frozen=True)
class _Candidate:
    dist_px: float
    result: float  # where the moved feature lands (tie-break: smaller wins)
    delta: float  # shift of the moved feature (final tie-break: smaller wins)
    new_low: float  # exact resulting low/size, precomputed so the aligned
    new_size: float  # feature lands on the peer value bit-for-bit


def _features(low: float, size: float) -> dict[str, float]:
    return {"low": low, "center": low + size / 2.0, "high": low + size}


def _axis_snap(
    low: float,
    size: float,
    peers: list[tuple[float, float]],
    threshold_px: float,
    px_per_fraction: float,
    grip: str | None,
    mode: str,
) -> tuple[float, float]:
    """Snapped (low, size) for one axis.

    Move mode translates; resize mode adjusts only the gripped edge and also
    tries size matching against each peer's extent.  Each candidate carries
    its exact resulting geometry: the winner is applied as computed, so a
    reported alignment is exact and re-snapping reproduces the same rect.
    """
    candidates: list[_Candidate] = []

    def consider(current: float, target: float, new_low: float, new_size: float) -> None:
        # resizing must not snap through the minimum size
        if mode != "move" and new_size < MIN_SIZE_FRACTION - _ALIGN_EPS:
            return
        dist = abs(target - current) * px_per_fraction
        if dist <= threshold_px:
            candidates.append(_Candidate(dist, target, target - current, new_low, new_size))

    if mode == "move":
        for peer_low, peer_size in peers:
            for peer_value in _features(peer_low, peer_size).values():
                consider(low, peer_value, peer_value, size)
                consider(low + size / 2.0, peer_value, peer_value - size / 2.0, size)
                consider(low + size, peer_value, peer_value - size, size)
    elif grip is not None:
        edge = low + size if grip == "high" else low
        high = low + size
        for peer_low, peer_size in peers:
            for peer_value in _features(peer_low, peer_size).values():
                if grip == "high":
                    consider(edge, peer_value, low, peer_value - low)
                else:
                    consider(edge, peer_value, peer_value, high - peer_value)
            # size match: move the gripped edge until size == peer size exactly
            if grip == "high":
                consider(edge, low + peer_size, low, peer_size)
            else:
                consider(edge, high - peer_size, high - peer_size, peer_size)

    if not candidates:
        return low, size
    # ties on distance prefer the smaller resulting coordinate; equal results
    # (two features reflected around one peer value) prefer the smaller shift
    best = min(candidates, key=lambda c: (c.dist_px, c.result, c.delta))
    return best.new_low, best.new_size


def snap(
    rect: Rect,
    peers: list[Rect],
    threshold_px: float,
    vt: ViewTransform,
    mode: str = "move",
    handle: str | None = None,
) -> SnapResult:
    """Align a dragged rect to its peers, per axis independently.

    Peers must not include the dragged rect itself.  Candidates are this
    rect's {low, center, high} against each peer's {low, center, high}; in
    resize mode, only the gripped edge moves and each peer's extent is also
    offered as a size match.  The closest candidate within threshold wins;
    ties prefer the smaller resulting coordinate.  Guides report every
    alignment that holds exactly after snapping.
    """
    if mode == "move":
        grip_x, grip_y = "move", "move"
        gx, gy = None, None
    else:
        if handle not in HANDLES:
            raise ValueError(f"resize snap requires a handle from {HANDLES}")
        gx, gy = _grips(handle)
        grip_x = "resize" if gx is not None else "off"
        grip_y = "resize" if gy is not None else "off"

    x, w = rect.x, rect.w
    if grip_x != "off":
        x, w = _axis_snap(
            rect.x, rect.w, [(p.x, p.w) for p in peers], threshold_px, vt.width_px, gx, mode
        )
    y, h = rect.y, rect.h
    if grip_y != "off":
        y, h = _axis_snap(
            rect.y, rect.h, [(p.y, p.h) for p in peers], threshold_px, vt.height_px, gy, mode
        )
    snapped = Rect(x, y, w, h)

    guides: set[Guide] = set()
    for peer in peers:
        _collect_alignment_guides(guides, "v", _features(snapped.x, snapped.w), _features(peer.x, peer.w))
        _collect_alignment_guides(guides, "h", _features(snapped.y, snapped.h), _features(peer.y, peer.h))
        if mode == "resize":
            if gx is not None and math.isclose(snapped.w, peer.w, abs_tol=_ALIGN_EPS):
                guides.add(Guide("v", peer.w, "size-match"))
            if gy is not None and math.isclose(snapped.h, peer.h, abs_tol=_ALIGN_EPS):
                guides.add(Guide("h", peer.h, "size-match"))
    ordered = tuple(sorted(guides, key=lambda g: (g.orientation, g.kind, g.position)))
    return SnapResult(snapped, ordered)


def _collect_alignment_guides(guides: set[Guide], orientation: str, mine: dict, theirs: dict) -> None:
    for my_name, my_value in mine.items():
        for peer_name, peer_value in theirs.items():
            if abs(my_value - peer_value) <= _ALIGN_EPS:
                kind = "center" if "center" in (my_name, peer_name) else "edge"
                guides.add(Guide(orientation, peer_value, kind))
