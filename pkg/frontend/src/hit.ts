/** One entry of the server's element index: a path and its pixel bounding box. */
export interface ElementBox {
  path: string;
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

export type ElementKind = "figure" | "axes" | "lines" | "texts" | "legend";

/** Kind of the element a path addresses (its last segment). */
export function kindOfPath(path: string): ElementKind {
  const dot = path.lastIndexOf(".");
  const seg = dot < 0 ? path : path.slice(dot + 1);
  if (seg.startsWith("figure(")) return "figure";
  if (seg === "legend") return "legend";
  const bracket = seg.indexOf("[");
  const kind = bracket < 0 ? seg : seg.slice(0, bracket);
  if (kind === "axes" || kind === "lines" || kind === "texts") return kind;
  throw new Error("unknown element path: " + path);
}

// Smaller rank wins when boxes overlap; mirrors the server's hit priority.
const HIT_RANK: Record<ElementKind, number> = {
  texts: 0,
  legend: 1,
  lines: 2,
  axes: 3,
  figure: 4,
};

/**
 * Topmost element whose box contains the point, or null on a miss.
 * Kind priority first (text over legend over series over axes), then the
 * smaller box so nested elements stay reachable.
 */
export function hitTest(elements: ElementBox[], x: number, y: number): string | null {
  let best: ElementBox | null = null;
  let bestRank = Infinity;
  let bestArea = Infinity;
  for (const el of elements) {
    if (x < el.x0 || x > el.x1 || y < el.y0 || y > el.y1) continue;
    const rank = HIT_RANK[kindOfPath(el.path)];
    const area = (el.x1 - el.x0) * (el.y1 - el.y0);
    if (rank < bestRank || (rank === bestRank && area < bestArea)) {
      best = el;
      bestRank = rank;
      bestArea = area;
    }
  }
  return best ? best.path : null;
}

export type HandleName = "nw" | "n" | "ne" | "e" | "se" | "s" | "sw" | "w";

export const HANDLES: HandleName[] = ["nw", "n", "ne", "e", "se", "s", "sw", "w"];

export const HANDLE_SIZE_PX = 8;

/** Center of one selection handle on the box edge/corner it controls. */
export function handleCenter(box: ElementBox, handle: HandleName): { x: number; y: number } {
  const cx = (box.x0 + box.x1) / 2;
  const cy = (box.y0 + box.y1) / 2;
  const x = handle.includes("w") ? box.x0 : handle.includes("e") ? box.x1 : cx;
  const y = handle.includes("n") ? box.y0 : handle.includes("s") ? box.y1 : cy;
  return { x, y };
}

/** Handle under the point, testing the rendered handle squares only. */
export function handleAt(
  box: ElementBox,
  x: number,
  y: number,
  size: number = HANDLE_SIZE_PX,
): HandleName | null {
  const half = size / 2;
  for (const handle of HANDLES) {
    const c = handleCenter(box, handle);
    if (Math.abs(x - c.x) <= half && Math.abs(y - c.y) <= half) return handle;
  }
  return null;
}
