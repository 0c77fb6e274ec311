import type { FractionRect } from "./preview.js";

/** Alignment guide from a drag preview, in figure fractions. */
export interface Guide {
  orientation: "v" | "h";
  position: number;
  kind: "edge" | "center" | "size-match";
}

export interface PxBox {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

/** Pixel size of the rendered figure, read off the SVG root tag. */
export function svgSize(svg: string): { width: number; height: number } {
  const m = /<svg[^>]*\bwidth="([0-9.]+)"[^>]*\bheight="([0-9.]+)"/.exec(svg);
  if (!m) throw new Error("SVG root has no width/height");
  return { width: Number(m[1]), height: Number(m[2]) };
}

/**
 * Line segment for an alignment guide, spanning the figure.
 * Figure fractions have y up, pixels have y down. Size-match guides carry a
 * size rather than a coordinate and cannot be drawn as a line.
 */
export function guideSegment(
  guide: Guide,
  widthPx: number,
  heightPx: number,
): { x1: number; y1: number; x2: number; y2: number } | null {
  if (guide.kind === "size-match") return null;
  if (guide.orientation === "v") {
    const x = guide.position * widthPx;
    return { x1: x, y1: 0, x2: x, y2: heightPx };
  }
  const y = (1 - guide.position) * heightPx;
  return { x1: 0, y1: y, x2: widthPx, y2: y };
}

/** Pixel box for a figure-fraction rect (origin bottom-left to origin top-left). */
export function fractionRectToPx(rect: FractionRect, widthPx: number, heightPx: number): PxBox {
  return {
    x0: rect.x * widthPx,
    y0: (1 - rect.y - rect.h) * heightPx,
    x1: (rect.x + rect.w) * widthPx,
    y1: (1 - rect.y) * heightPx,
  };
}
