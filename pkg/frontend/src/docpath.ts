import type { AxesJson, DocJson, LegendJson, SeriesJson, TextJson } from "./api.js";

export type Resolved =
  | { kind: "figure"; node: DocJson }
  | { kind: "axes"; node: AxesJson }
  | { kind: "lines"; node: SeriesJson; axes: AxesJson }
  | { kind: "texts"; node: TextJson; axes: AxesJson }
  | { kind: "legend"; node: LegendJson; axes: AxesJson };

const PATH_RE = /^figure\((\d+)\)((?:\.(?:axes\[\d+\]|lines\[\d+\]|texts\[\d+\]|legend))*)$/;

/** Look a path text up in the document JSON; null when it does not resolve. */
export function resolvePath(doc: DocJson, path: string): Resolved | null {
  const m = PATH_RE.exec(path);
  if (!m || Number(m[1]) !== doc.index) return null;
  const segs = m[2] ? m[2].slice(1).split(".") : [];
  if (segs.length === 0) return { kind: "figure", node: doc };

  const axesMatch = /^axes\[(\d+)\]$/.exec(segs[0]);
  if (!axesMatch) return null;
  const axes = doc.axes[Number(axesMatch[1])];
  if (!axes) return null;
  if (segs.length === 1) return { kind: "axes", node: axes };
  if (segs.length > 2) return null;

  const child = segs[1];
  if (child === "legend") {
    return axes.legend ? { kind: "legend", node: axes.legend, axes } : null;
  }
  const childMatch = /^(lines|texts)\[(\d+)\]$/.exec(child);
  if (!childMatch) return null;
  const index = Number(childMatch[2]);
  if (childMatch[1] === "lines") {
    const node = axes.series[index];
    return node ? { kind: "lines", node, axes } : null;
  }
  const node = axes.texts[index];
  return node ? { kind: "texts", node, axes } : null;
}
