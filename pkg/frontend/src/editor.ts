import { createApi, ServerError, type ServerEvent } from "./api.js";
import { DragController } from "./drag.js";
import { handleAt, handleCenter, HANDLES, HANDLE_SIZE_PX, hitTest, kindOfPath } from "./hit.js";
import { fieldsFor, FieldError, type Field } from "./panel.js";
import { parseStatement, previewRect } from "./preview.js";
import { EditorState, saveStatusText } from "./state.js";
import { fractionRectToPx, guideSegment, svgSize } from "./view.js";

const api = createApi("");
const state = new EditorState();

const canvas = document.getElementById("canvas") as HTMLElement;
const overlay = document.getElementById("overlay") as HTMLElement;
const panel = document.getElementById("panel") as HTMLElement;
const statusLine = document.getElementById("status") as HTMLElement;
const saveButton = document.getElementById("save") as HTMLButtonElement;
const toastBox = document.getElementById("toast") as HTMLElement;

let toastTimer: number | undefined;
function toast(message: string): void {
  toastBox.textContent = message;
  toastBox.hidden = false;
  window.clearTimeout(toastTimer);
  toastTimer = window.setTimeout(() => {
    toastBox.hidden = true;
  }, 4000);
}

const drag = new DragController(api, {
  onPreview: (preview) => {
    state.setPreview(preview);
    renderOverlay();
  },
  onCancel: (message) => {
    state.endDrag();
    toast("drag cancelled: " + message);
    renderOverlay();
  },
});

async function refresh(): Promise<void> {
  const [doc, payload] = await Promise.all([api.doc(), api.svg()]);
  state.installDocument(doc, payload);
  canvas.innerHTML = state.svg;
  renderOverlay();
  renderPanel();
}

function box(cls: string, x0: number, y0: number, x1: number, y1: number): HTMLElement {
  const el = document.createElement("div");
  el.className = cls;
  el.style.left = x0 + "px";
  el.style.top = y0 + "px";
  el.style.width = Math.max(0, x1 - x0) + "px";
  el.style.height = Math.max(0, y1 - y0) + "px";
  return el;
}

function renderOverlay(): void {
  overlay.innerHTML = "";
  if (!state.svg) return;
  const size = svgSize(state.svg);
  const sel = state.selection;

  if (sel.hover && sel.hover !== sel.selected) {
    const el = state.elements.find((e) => e.path === sel.hover);
    if (el) overlay.appendChild(box("hover-box", el.x0, el.y0, el.x1, el.y1));
  }

  const selected = sel.selected ? state.elements.find((e) => e.path === sel.selected) : undefined;
  const pending = sel.drag ? sel.drag.pending : null;

  if (pending) {
    for (const guide of pending.guides) {
      const seg = guideSegment(guide, size.width, size.height);
      if (!seg) continue;
      const el = box("guide-line", seg.x1 - 0.5, seg.y1 - 0.5, seg.x2 + 0.5, seg.y2 + 0.5);
      overlay.appendChild(el);
    }
    const rect = previewRect(parseStatement(pending.statement));
    if (rect) {
      const px = fractionRectToPx(rect, size.width, size.height);
      overlay.appendChild(box("preview-box", px.x0, px.y0, px.x1, px.y1));
    }
  }

  if (selected) {
    const outline = box("selection-box", selected.x0, selected.y0, selected.x1, selected.y1);
    overlay.appendChild(outline);
    if (kindOfPath(selected.path) === "axes") {
      for (const handle of HANDLES) {
        const c = handleCenter(selected, handle);
        const half = HANDLE_SIZE_PX / 2;
        overlay.appendChild(box("handle", c.x - half, c.y - half, c.x + half, c.y + half));
      }
    }
  }
}

function fieldInput(field: Field): HTMLElement {
  const row = document.createElement("label");
  row.className = "field";
  const caption = document.createElement("span");
  caption.textContent = field.label;
  row.appendChild(caption);

  let input: HTMLInputElement | HTMLSelectElement;
  if (field.kind === "select") {
    input = document.createElement("select");
    for (const option of field.options ?? []) {
      const el = document.createElement("option");
      el.value = option;
      el.textContent = option;
      el.selected = option === field.value;
      input.appendChild(el);
    }
  } else {
    input = document.createElement("input");
    if (field.kind === "checkbox") {
      input.type = "checkbox";
      input.checked = field.value === true;
    } else if (field.kind === "color") {
      input.type = "color";
      input.value = String(field.value);
    } else {
      input.type = "text";
      input.value = String(field.value);
    }
  }
  if (!field.statement) {
    input.disabled = true;
  }

  const error = document.createElement("span");
  error.className = "field-error";
  error.hidden = true;

  input.addEventListener("change", async () => {
    if (!field.statement) return;
    error.hidden = true;
    const raw =
      input instanceof HTMLInputElement && input.type === "checkbox" ? input.checked : input.value;
    try {
      const line = field.statement(raw);
      if (line !== null) await api.edit(line);
    } catch (err) {
      if (err instanceof FieldError || err instanceof ServerError) {
        error.textContent = err.message;
        error.hidden = false;
      } else {
        throw err;
      }
    }
  });

  row.appendChild(input);
  row.appendChild(error);
  return row;
}

function renderPanel(): void {
  panel.innerHTML = "";
  if (!state.doc) return;
  const heading = document.createElement("h2");
  heading.textContent = state.selection.selected ?? `figure(${state.doc.index})`;
  panel.appendChild(heading);
  for (const field of fieldsFor(state.doc, state.selection.selected)) {
    panel.appendChild(fieldInput(field));
  }
}

function canvasPoint(event: PointerEvent): { x: number; y: number } {
  const rect = canvas.getBoundingClientRect();
  return { x: event.clientX - rect.left, y: event.clientY - rect.top };
}

const DRAGGABLE = new Set(["axes", "texts", "legend"]);

canvas.parentElement!.addEventListener("pointerdown", (event) => {
  if (event.button !== 0) return;
  const p = canvasPoint(event);
  const selected = state.selection.selected
    ? state.elements.find((e) => e.path === state.selection.selected)
    : undefined;

  // A handle grab resizes the current selection; anything else re-selects.
  if (selected && kindOfPath(selected.path) === "axes") {
    const handle = handleAt(selected, p.x, p.y);
    if (handle) {
      state.beginDrag("resize", handle);
      drag.begin(selected.path, "resize", handle);
      startPointer(event, p);
      return;
    }
  }

  const hit = hitTest(state.elements, p.x, p.y);
  state.select(hit);
  renderOverlay();
  renderPanel();
  if (hit && DRAGGABLE.has(kindOfPath(hit))) {
    state.beginDrag("move");
    drag.begin(hit, "move");
    startPointer(event, p);
  }
});

function startPointer(event: PointerEvent, start: { x: number; y: number }): void {
  const target = canvas.parentElement!;
  target.setPointerCapture(event.pointerId);

  const onMove = (ev: PointerEvent) => {
    if (ev.pointerId !== event.pointerId) return;
    const p = canvasPoint(ev);
    drag.move(p.x - start.x, p.y - start.y);
  };
  const onUp = async (ev: PointerEvent) => {
    if (ev.pointerId !== event.pointerId) return;
    target.releasePointerCapture(event.pointerId);
    target.removeEventListener("pointermove", onMove);
    target.removeEventListener("pointerup", onUp);
    target.removeEventListener("pointercancel", onUp);
    const line = await drag.release();
    state.endDrag();
    renderOverlay();
    if (line) {
      try {
        await api.edit(line);
      } catch (err) {
        toast(err instanceof Error ? err.message : "edit rejected");
      }
    }
  };
  target.addEventListener("pointermove", onMove);
  target.addEventListener("pointerup", onUp);
  target.addEventListener("pointercancel", onUp);
}

canvas.parentElement!.addEventListener("pointermove", (event) => {
  if (drag.dragging) return;
  const p = canvasPoint(event);
  state.setHover(hitTest(state.elements, p.x, p.y));
  renderOverlay();
});

window.addEventListener("keydown", (event) => {
  if (event.key === "Escape") {
    drag.cancel();
    state.endDrag();
    state.select(null);
    renderOverlay();
    renderPanel();
  }
});

saveButton.addEventListener("click", async () => {
  try {
    const result = await api.save();
    statusLine.textContent = saveStatusText(result);
  } catch (err) {
    toast(err instanceof Error ? err.message : "save failed");
  }
});

const events = new WebSocket(`ws://${location.host}/api/events`);
events.onmessage = (message) => {
  const event = JSON.parse(message.data) as ServerEvent;
  if (state.serverEvent(event) === "refetch") {
    void refresh();
  }
};
events.onclose = () => {
  statusLine.textContent = "connection closed";
};

void refresh();
