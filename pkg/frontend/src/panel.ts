import type { AxesJson, DocJson, TextJson } from "./api.js";
import { resolvePath } from "./docpath.js";
import { statement, type Literal } from "./statements.js";

export type FieldKind = "number" | "text" | "color" | "checkbox" | "select" | "list";

/**
 * One property-panel row. `value` is what the input shows; `statement`
 * turns a new raw input value into the statement to post, or null when
 * there is nothing to do. Fields without `statement` are read-only.
 */
export interface Field {
  id: string;
  label: string;
  kind: FieldKind;
  value: string | boolean;
  options?: string[];
  statement?(raw: string | boolean): string | null;
}

/** Raised for input that cannot become a statement; shown inline at the field. */
export class FieldError extends Error {}

function asNumber(raw: string | boolean, label: string): number {
  const value = Number(String(raw).trim());
  if (String(raw).trim() === "" || !Number.isFinite(value)) {
    throw new FieldError(label + " must be a number");
  }
  return value;
}

function asNumberList(raw: string | boolean, label: string): number[] {
  const text = String(raw).trim();
  if (text === "") return [];
  return text.split(",").map((part) => {
    const value = Number(part.trim());
    if (part.trim() === "" || !Number.isFinite(value)) {
      throw new FieldError(label + " must be comma-separated numbers");
    }
    return value;
  });
}

function asStringList(raw: string | boolean): string[] {
  const text = String(raw);
  if (text.trim() === "") return [];
  return text.split(",").map((part) => part.trim());
}

function num(id: string, label: string, value: number, build: (v: number) => string): Field {
  return {
    id,
    label,
    kind: "number",
    value: String(value),
    statement: (raw) => build(asNumber(raw, label)),
  };
}

function txt(id: string, label: string, value: string | null, build: (v: string) => string): Field {
  return { id, label, kind: "text", value: value ?? "", statement: (raw) => build(String(raw)) };
}

function figureFields(doc: DocJson): Field[] {
  const path = `figure(${doc.index})`;
  const size = (w: number, h: number) => statement(path, "set_size_cm", [w, h]);
  return [
    num("figure.width_cm", "width (cm)", doc.width_cm, (v) => size(v, doc.height_cm)),
    num("figure.height_cm", "height (cm)", doc.height_cm, (v) => size(doc.width_cm, v)),
    num("figure.dpi", "dpi", doc.dpi, (v) => statement(path, "set_dpi", [v])),
  ];
}

function axesFields(path: string, a: AxesJson): Field[] {
  const pos = a.position;
  const rectWith = (part: "x" | "y" | "w" | "h") => (v: number) => {
    const rect = { ...pos, [part]: v };
    return statement(path, "set_position", [[rect.x, rect.y, rect.w, rect.h]]);
  };
  const listField = (
    id: string,
    label: string,
    method: string,
    ticks: { locations: number[] } | null,
  ): Field => ({
    id,
    label,
    kind: "list",
    value: ticks ? ticks.locations.join(", ") : "",
    statement: (raw) => statement(path, method, [asNumberList(raw, label)]),
  });
  const labelsField = (
    id: string,
    label: string,
    method: string,
    ticks: { labels: string[] | null } | null,
  ): Field => ({
    id,
    label,
    kind: "list",
    value: ticks && ticks.labels ? ticks.labels.join(", ") : "",
    statement: (raw) => statement(path, method, [asStringList(raw) as Literal]),
  });
  return [
    num(`${path}.x`, "x", pos.x, rectWith("x")),
    num(`${path}.y`, "y", pos.y, rectWith("y")),
    num(`${path}.w`, "width", pos.w, rectWith("w")),
    num(`${path}.h`, "height", pos.h, rectWith("h")),
    num(`${path}.xlim.low`, "x min", a.xlim[0], (v) => statement(path, "set_xlim", [v, a.xlim[1]])),
    num(`${path}.xlim.high`, "x max", a.xlim[1], (v) => statement(path, "set_xlim", [a.xlim[0], v])),
    num(`${path}.ylim.low`, "y min", a.ylim[0], (v) => statement(path, "set_ylim", [v, a.ylim[1]])),
    num(`${path}.ylim.high`, "y max", a.ylim[1], (v) => statement(path, "set_ylim", [a.ylim[0], v])),
    txt(`${path}.xlabel`, "x label", a.xlabel, (v) => statement(path, "set_xlabel", [v])),
    txt(`${path}.ylabel`, "y label", a.ylabel, (v) => statement(path, "set_ylabel", [v])),
    txt(`${path}.title`, "title", a.title, (v) => statement(path, "set_title", [v])),
    listField(`${path}.xticks`, "x ticks", "set_xticks", a.xticks),
    labelsField(`${path}.xticklabels`, "x tick labels", "set_xticklabels", a.xticks),
    listField(`${path}.yticks`, "y ticks", "set_yticks", a.yticks),
    labelsField(`${path}.yticklabels`, "y tick labels", "set_yticklabels", a.yticks),
    {
      id: `${path}.grid`,
      label: "grid",
      kind: "checkbox",
      value: a.grid,
      statement: (raw) => statement(path, "grid", [raw === true || raw === "true"]),
    },
    {
      id: `${path}.legend`,
      label: "legend",
      kind: "checkbox",
      value: a.legend !== null && a.legend.visible,
      statement: (raw) => {
        const on = raw === true || raw === "true";
        if (a.legend === null) {
          // Turning the toggle off when there is no legend is a no-op.
          return on ? statement(path, "legend", []) : null;
        }
        return statement(`${path}.legend`, "set_visible", [on]);
      },
    },
  ];
}

function textFields(path: string, t: TextJson): Field[] {
  return [
    txt(`${path}.content`, "text", t.content, (v) => statement(path, "set_text", [v])),
    num(`${path}.x`, "x", t.x, (v) => statement(path, "set_position", [v, t.y])),
    num(`${path}.y`, "y", t.y, (v) => statement(path, "set_position", [t.x, v])),
    num(`${path}.fontsize`, "size (pt)", t.fontsize_pt, (v) => statement(path, "set_fontsize", [v])),
    {
      id: `${path}.color`,
      label: "color",
      kind: "color",
      value: t.color,
      statement: (raw) => statement(path, "set_color", [String(raw)]),
    },
    {
      id: `${path}.weight`,
      label: "weight",
      kind: "select",
      value: t.weight,
      options: ["normal", "bold"],
      statement: (raw) => statement(path, "set_weight", [String(raw)]),
    },
    num(`${path}.rotation`, "rotation (deg)", t.rotation_deg, (v) =>
      statement(path, "set_rotation", [v]),
    ),
  ];
}

/**
 * Panel rows for the current selection. A null path (nothing selected)
 * shows the figure's own properties.
 */
export function fieldsFor(doc: DocJson, path: string | null): Field[] {
  const resolved = path === null ? { kind: "figure" as const, node: doc } : resolvePath(doc, path);
  if (!resolved) return [];
  switch (resolved.kind) {
    case "figure":
      return figureFields(resolved.node);
    case "axes":
      return axesFields(path as string, resolved.node);
    case "texts":
      return textFields(path as string, resolved.node);
    case "legend": {
      const p = path as string;
      const legend = resolved.node;
      return [
        num(`${p}.x`, "x", legend.loc[0], (v) =>
          statement(p, "set_loc_fraction", [v, legend.loc[1]]),
        ),
        num(`${p}.y`, "y", legend.loc[1], (v) =>
          statement(p, "set_loc_fraction", [legend.loc[0], v]),
        ),
        {
          id: `${p}.visible`,
          label: "visible",
          kind: "checkbox",
          value: legend.visible,
          statement: (raw) => statement(p, "set_visible", [raw === true || raw === "true"]),
        },
      ];
    }
    case "lines": {
      // Series have no style mutators; show where the data came from.
      const s = resolved.node;
      return [
        { id: `${path}.source`, label: "source", kind: "text", value: s.source.path },
        { id: `${path}.columns`, label: "columns", kind: "text", value: `${s.source.xcol} vs ${s.source.ycol}` },
        { id: `${path}.color`, label: "color", kind: "text", value: s.color },
      ];
    }
  }
}
