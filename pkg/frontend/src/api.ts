import type { ElementBox } from "./hit.js";
import type { Guide } from "./view.js";

export interface TicksJson {
  locations: number[];
  labels: string[] | null;
}

export interface SeriesJson {
  source: { path: string; xcol: string; ycol: string };
  points: [number, number][];
  color: string;
  linewidth_pt: number;
}

export interface TextJson {
  x: number;
  y: number;
  content: string;
  fontsize_pt: number;
  color: string;
  rotation_deg: number;
  weight: string;
}

export interface LegendJson {
  loc: [number, number];
  visible: boolean;
}

export interface AxesJson {
  position: { x: number; y: number; w: number; h: number };
  xlim: [number, number];
  ylim: [number, number];
  xlabel: string | null;
  ylabel: string | null;
  title: string | null;
  xticks: TicksJson | null;
  yticks: TicksJson | null;
  series: SeriesJson[];
  texts: TextJson[];
  legend: LegendJson | null;
  grid: boolean;
}

export interface DocJson {
  index: number;
  width_cm: number;
  height_cm: number;
  dpi: number;
  axes: AxesJson[];
}

export interface SvgPayload {
  svg: string;
  elements: ElementBox[];
}

export interface DragRequest {
  path: string;
  dx_px: number;
  dy_px: number;
  mode: "move" | "resize";
  handle?: string;
}

export interface DragResponse {
  statement: string;
  guides: Guide[];
}

export interface SaveResult {
  written: boolean;
  path: string;
}

export interface ServerEvent {
  type: "doc-changed" | "saved";
  revision: number;
}

/** Error body the service returns for rejected statements and bad requests. */
export class ServerError extends Error {
  readonly column: number | null;
  readonly status: number;

  constructor(message: string, column: number | null, status: number) {
    super(message);
    this.column = column;
    this.status = status;
  }
}

export interface Api {
  doc(): Promise<DocJson>;
  svg(): Promise<SvgPayload>;
  drag(req: DragRequest): Promise<DragResponse>;
  edit(statement: string): Promise<void>;
  save(): Promise<SaveResult>;
}

/**
 * Client for the session service. `base` is "" in the browser (same origin)
 * and an absolute http://127.0.0.1:port origin in tests.
 */
export function createApi(base = "", fetchFn: typeof fetch = fetch): Api {
  async function request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await fetchFn(base + path, init);
    const body = await res.json();
    if (!res.ok) {
      const err = body && body.error ? body.error : { message: res.statusText, column: null };
      throw new ServerError(err.message, err.column ?? null, res.status);
    }
    return body as T;
  }

  function post<T>(path: string, payload: unknown): Promise<T> {
    return request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  return {
    doc: () => request<DocJson>("/api/doc"),
    svg: () => request<SvgPayload>("/api/svg"),
    drag: (req) => post<DragResponse>("/api/drag", req),
    edit: async (statement) => {
      await post<{ ok: true }>("/api/edit", { statement });
    },
    save: () => post<SaveResult>("/api/save", {}),
  };
}
