import type { DocJson, SaveResult, ServerEvent, SvgPayload } from "./api.js";
import type { ElementBox } from "./hit.js";
import type { Guide } from "./view.js";

export interface DragOrigin {
  path: string;
  mode: "move" | "resize";
  handle: string | null;
}

export interface PendingPreview {
  statement: string;
  guides: Guide[];
}

export interface SelectionState {
  selected: string | null;
  hover: string | null;
  drag: { origin: DragOrigin; pending: PendingPreview | null } | null;
}

/**
 * All editor state outside the DOM. The figure is never mutated locally:
 * the document and SVG only change when the server sends new ones, and the
 * only locally-rendered change is the drag preview, kept separate here.
 */
export class EditorState {
  doc: DocJson | null = null;
  svg = "";
  elements: ElementBox[] = [];
  revision = 0;
  selection: SelectionState = { selected: null, hover: null, drag: null };

  select(path: string | null): void {
    if (this.selection.selected !== path) {
      this.selection.drag = null;
    }
    this.selection.selected = path;
  }

  setHover(path: string | null): void {
    this.selection.hover = path;
  }

  beginDrag(mode: "move" | "resize", handle: string | null = null): void {
    const selected = this.selection.selected;
    if (!selected) throw new Error("drag requires a selection");
    this.selection.drag = { origin: { path: selected, mode, handle }, pending: null };
  }

  setPreview(pending: PendingPreview): void {
    if (!this.selection.drag) throw new Error("preview outside a drag");
    this.selection.drag.pending = pending;
  }

  endDrag(): void {
    this.selection.drag = null;
  }

  /** Install a freshly fetched document; drops a selection that no longer resolves. */
  installDocument(doc: DocJson, payload: SvgPayload): void {
    this.doc = doc;
    this.svg = payload.svg;
    this.elements = payload.elements;
    const selected = this.selection.selected;
    if (selected && !payload.elements.some((el) => el.path === selected)) {
      this.select(null);
    }
  }

  /**
   * Reconcile one websocket event against the known revision.
   * Returns "refetch" when the server is ahead, "stale" for replays.
   */
  serverEvent(event: ServerEvent): "refetch" | "stale" {
    if (event.revision <= this.revision) return "stale";
    this.revision = event.revision;
    return "refetch";
  }
}

/** Status line for a save response; written=false is shown, not hidden. */
export function saveStatusText(result: SaveResult): string {
  return result.written ? "saved " + result.path : "no changes to write";
}
