"""Local HTTP service exposing one editing session to a browser.

Binds loopback only: figure editing is a local, single-user activity.  All
state-mutating requests (edit, save) are serialized through one FIFO lock;
reads work on document snapshots, which stay valid because an edit never
mutates an installed document, it swaps in a fresh copy.
"""

from __future__ import annotations

import asyncio
import contextlib
import mimetypes
import os

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import HTMLResponse, JSONResponse, Response
from pydantic import BaseModel

from .errors import FigeditError
from .geometry import SNAP_DEFAULT_THRESHOLD_PX
from .model import to_json
from .render import render
from .session import Session, drag_preview, edit, save

DEFAULT_PORT = 7040
EDITOR_DIR_ENV = "FIGEDIT_EDITOR_DIR"


class EditRequest(BaseModel):
    statement: str


class DragRequest(BaseModel):
    path: str
    dx_px: float
    dy_px: float
    mode: str = "move"
    handle: str | None = None


class _ServiceState:
    def __init__(self, session: Session, snap_px: float):
        self.session = session
        self.snap_px = snap_px
        self.revision = 0
        self.mutate_lock = asyncio.Lock()
        self.subscribers: set[asyncio.Queue] = set()

    def broadcast(self, event_type: str) -> int:
        self.revision += 1
        for queue in self.subscribers:
            queue.put_nowait({"type": event_type, "revision": self.revision})
        return self.revision


_FALLBACK_PAGE = """<!doctype html>
<meta charset="utf-8">
<title>figedit</title>
<style>
  body { font: 14px/1.4 system-ui, sans-serif; margin: 1.5rem; }
  #figure svg { border: 1px solid #ccc; max-width: 100%; height: auto; }
  input { width: 28rem; max-width: 80%; font-family: monospace; }
  #status { color: #555; margin-left: 0.6rem; }
</style>
<h1>figedit</h1>
<p>Minimal built-in viewer. Point a full editor build at this service, or
set its directory in the service environment to have it served here.</p>
<p>
  <input id="stmt" placeholder='figure(1).axes[0].set_title("hello")'>
  <button id="apply">Apply</button>
  <button id="save">Save</button>
  <span id="status"></span>
</p>
<div id="figure"></div>
<script>
  const status = (t) => { document.getElementById("status").textContent = t; };
  async function refresh() {
    const res = await fetch("/api/svg");
    const body = await res.json();
    document.getElementById("figure").innerHTML = body.svg;
  }
  document.getElementById("apply").addEventListener("click", async () => {
    const res = await fetch("/api/edit", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ statement: document.getElementById("stmt").value }),
    });
    const body = await res.json();
    status(body.ok ? "applied" : body.error.message);
  });
  document.getElementById("save").addEventListener("click", async () => {
    const res = await fetch("/api/save", { method: "POST" });
    const body = await res.json();
    status(body.written ? "saved " + body.path : "no changes to write");
  });
  const events = new WebSocket(`ws://${location.host}/api/events`);
  events.onmessage = refresh;
  refresh();
</script>
"""


def make_app(
    session: Session,
    *,
    snap_px: float = SNAP_DEFAULT_THRESHOLD_PX,
    editor_dir: str | None = None,
) -> FastAPI:
    """Wire one session into a FastAPI app serving the editor API."""
    state = _ServiceState(session, snap_px)
    if editor_dir is None:
        editor_dir = os.environ.get(EDITOR_DIR_ENV) or None
    app = FastAPI(title="figedit", docs_url=None, redoc_url=None, openapi_url=None)
    app.state.figedit = state

    @app.exception_handler(FigeditError)
    async def _figedit_error(request, exc: FigeditError):
        return JSONResponse(
            {"ok": False, "error": {"message": str(exc), "column": getattr(exc, "column", None)}},
            status_code=400,
        )

    @app.get("/api/doc")
    async def get_doc():
        return JSONResponse(to_json(state.session.live_doc))

    @app.get("/api/svg")
    async def get_svg():
        out = render(state.session.live_doc)
        elements = [
            {"path": path.text(), "x0": box.x0, "y0": box.y0, "x1": box.x1, "y1": box.y1}
            for path, box in out.element_index
        ]
        return JSONResponse({"svg": out.svg_text, "elements": elements})

    @app.post("/api/edit")
    async def post_edit(body: EditRequest):
        async with state.mutate_lock:
            edit(state.session, body.statement)
            state.broadcast("doc-changed")
        return JSONResponse({"ok": True})

    @app.post("/api/drag")
    async def post_drag(body: DragRequest):
        statement, guides = drag_preview(
            state.session,
            body.path,
            body.dx_px,
            body.dy_px,
            mode=body.mode,
            handle=body.handle,
            threshold_px=state.snap_px,
        )
        return JSONResponse(
            {
                "statement": statement,
                "guides": [
                    {"orientation": g.orientation, "position": g.position, "kind": g.kind}
                    for g in guides
                ],
            }
        )

    @app.post("/api/save")
    async def post_save():
        async with state.mutate_lock:
            _, written = save(state.session)
            state.broadcast("saved")
        return JSONResponse({"written": written, "path": state.session.script_path})

    @app.websocket("/api/events")
    async def events(ws: WebSocket):
        await ws.accept()
        queue: asyncio.Queue = asyncio.Queue()
        state.subscribers.add(queue)

        async def pump():
            while True:
                await ws.send_json(await queue.get())

        pump_task = asyncio.create_task(pump())
        try:
            while True:
                await ws.receive_text()
        except WebSocketDisconnect:
            pass
        finally:
            state.subscribers.discard(queue)
            pump_task.cancel()
            with contextlib.suppress(BaseException):
                await pump_task

    @app.get("/")
    async def index():
        if editor_dir is not None:
            page = os.path.join(editor_dir, "index.html")
            if os.path.isfile(page):
                with open(page, "rb") as fh:
                    return Response(fh.read(), media_type="text/html")
        return HTMLResponse(_FALLBACK_PAGE)

    @app.get("/{asset}")
    async def asset(asset: str):
        if editor_dir is not None and asset != "index.html":
            candidate = os.path.realpath(os.path.join(editor_dir, asset))
            if os.path.isfile(candidate) and os.path.dirname(candidate) == os.path.realpath(editor_dir):
                media, _ = mimetypes.guess_type(candidate)
                with open(candidate, "rb") as fh:
                    return Response(fh.read(), media_type=media or "application/octet-stream")
        return JSONResponse({"ok": False, "error": {"message": "not found", "column": None}}, status_code=404)

    return app


def serve(
    session: Session,
    *,
    port: int = DEFAULT_PORT,
    snap_px: float = SNAP_DEFAULT_THRESHOLD_PX,
    editor_dir: str | None = None,
) -> None:
    """Run the service on loopback until interrupted."""
    import uvicorn

    app = make_app(session, snap_px=snap_px, editor_dir=editor_dir)
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")


__all__ = ["DEFAULT_PORT", "EDITOR_DIR_ENV", "make_app", "serve"]
