import type { Api, DragResponse } from "./api.js";

export interface DragCallbacks {
  /** Latest server-snapped preview for the drag in progress. */
  onPreview(preview: DragResponse): void;
  /** Drag aborted (network failure); the canvas should revert to server state. */
  onCancel(message: string): void;
}

/**
 * Drag loop against the drag-preview endpoint.
 *
 * Every pointer move reports the cumulative delta from the drag start; the
 * controller keeps at most one request in flight and always sends the most
 * recent delta next (intermediate positions are skippable). Previews are
 * server-computed statements; nothing is committed until release().
 */
export class DragController {
  private api: Pick<Api, "drag">;
  private cb: DragCallbacks;

  private active: { path: string; mode: "move" | "resize"; handle: string | null } | null = null;
  private inFlight: Promise<void> | null = null;
  private queued: { dx: number; dy: number } | null = null;
  private latest: DragResponse | null = null;
  private latestDelta = { dx: 0, dy: 0 };
  private cancelled = false;

  constructor(api: Pick<Api, "drag">, callbacks: DragCallbacks) {
    this.api = api;
    this.cb = callbacks;
  }

  get dragging(): boolean {
    return this.active !== null;
  }

  begin(path: string, mode: "move" | "resize" = "move", handle: string | null = null): void {
    this.active = { path, mode, handle };
    this.inFlight = null;
    this.queued = null;
    this.latest = null;
    this.latestDelta = { dx: 0, dy: 0 };
    this.cancelled = false;
  }

  /** Pointer moved; dx/dy are cumulative pixels from the drag start. */
  move(dx: number, dy: number): void {
    if (!this.active || this.cancelled) return;
    this.latestDelta = { dx, dy };
    if (this.inFlight) {
      this.queued = { dx, dy };
    } else {
      this.send(dx, dy);
    }
  }

  private send(dx: number, dy: number): void {
    const active = this.active;
    if (!active) return;
    this.inFlight = this.api
      .drag({
        path: active.path,
        dx_px: dx,
        dy_px: dy,
        mode: active.mode,
        ...(active.handle ? { handle: active.handle } : {}),
      })
      .then((res) => {
        if (this.cancelled || this.active !== active) return;
        this.latest = res;
        this.cb.onPreview(res);
      })
      .catch((err: unknown) => {
        if (this.cancelled || this.active !== active) return;
        this.cancelled = true;
        this.active = null;
        this.queued = null;
        this.latest = null;
        this.cb.onCancel(err instanceof Error ? err.message : "drag failed");
      })
      .finally(() => {
        this.inFlight = null;
        if (!this.cancelled && this.active === active && this.queued) {
          const next = this.queued;
          this.queued = null;
          this.send(next.dx, next.dy);
        }
      });
  }

  /**
   * Pointer released. Waits for the preview of the final position, then
   * returns the statement to commit, or null when nothing should be posted
   * (zero-distance drag, cancelled drag).
   */
  async release(): Promise<string | null> {
    const active = this.active;
    if (!active) return null;
    while (this.inFlight) {
      await this.inFlight;
    }
    this.active = null;
    if (this.cancelled) return null;
    if (this.latestDelta.dx === 0 && this.latestDelta.dy === 0) return null;
    return this.latest ? this.latest.statement : null;
  }

  /** Abandon the drag without committing (Escape, selection change). */
  cancel(): void {
    this.cancelled = true;
    this.active = null;
    this.queued = null;
    this.latest = null;
  }
}
