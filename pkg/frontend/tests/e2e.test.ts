import { execFile, spawn, type ChildProcess } from "node:child_process";
import { mkdtemp, readFile, writeFile } from "node:fs/promises";
import { existsSync } from "node:fs";
import { createServer } from "node:net";
import { tmpdir } from "node:os";
import * as path from "node:path";
import { fileURLToPath } from "node:url";
import { promisify } from "node:util";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { createApi, type Api } from "../src/api.js";
import { DragController } from "../src/drag.js";
import type { DragResponse } from "../src/api.js";
import { fieldsFor } from "../src/panel.js";
import { saveStatusText } from "../src/state.js";

const run = promisify(execFile);
const PYTHON = process.env.FIGEDIT_PYTHON ?? "python3";
const DIST = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "..", "dist");

const CSV = "t,signal\n0,0.1\n1,0.45\n2,0.8\n3,0.95\n";

// axes[1] sits 40 px left of alignment with axes[0]; the e2e drag lands on it.
const SCRIPT = `figure(1).set_size_cm(16.0, 10.0)
figure(1).add_axes([0.1, 0.55, 0.3, 0.3])
figure(1).add_axes([0.04, 0.1, 0.3, 0.3])
figure(1).axes[0].plot_csv("data.csv", "t", "signal")
figure(1).axes[0].text(0.5, 1.05, "signal")
show()
`;

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const srv = createServer();
    srv.listen(0, "127.0.0.1", () => {
      const address = srv.address();
      if (address === null || typeof address === "string") {
        reject(new Error("no port"));
        return;
      }
      srv.close(() => resolve(address.port));
    });
    srv.on("error", reject);
  });
}

async function waitForServer(base: string): Promise<void> {
  const deadline = Date.now() + 15000;
  for (;;) {
    try {
      const res = await fetch(base + "/api/doc");
      if (res.ok) return;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error("server did not come up at " + base);
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
}

let dir: string;
let scriptPath: string;
let proc: ChildProcess | null = null;
let base: string;
let api: Api;

beforeAll(async () => {
  dir = await mkdtemp(path.join(tmpdir(), "figedit-e2e-"));
  scriptPath = path.join(dir, "plot.fig");
  await writeFile(path.join(dir, "data.csv"), CSV);
  await writeFile(scriptPath, SCRIPT);

  const port = await freePort();
  base = `http://127.0.0.1:${port}`;
  proc = spawn(
    PYTHON,
    ["-m", "figedit", "edit", scriptPath, "--no-browser", "--port", String(port)],
    { env: { ...process.env, FIGEDIT_EDITOR_DIR: DIST }, stdio: ["ignore", "pipe", "pipe"] },
  );
  await waitForServer(base);
  api = createApi(base);
});

afterAll(async () => {
  if (!proc) return;
  const exited = new Promise((resolve) => proc!.once("exit", resolve));
  proc.kill("SIGTERM");
  await exited;
  // Graceful shutdown releases the advisory lock next to the script.
  expect(existsSync(scriptPath + ".lock")).toBe(false);
});

describe("served editor", () => {
  it("serves the built page and its modules through the session service", async () => {
    const page = await (await fetch(base + "/")).text();
    expect(page).toContain('<script type="module" src="/editor.js">');

    const js = await fetch(base + "/editor.js");
    expect(js.status).toBe(200);
    expect(await js.text()).toContain("DragController");

    const css = await fetch(base + "/style.css");
    expect(css.status).toBe(200);

    const imported = await fetch(base + "/drag.js");
    expect(imported.status).toBe(200);
  });
});

describe("editing session", () => {
  let dragStatement: string;
  let fontsizeStatement: string;

  it("drags the axes 40 px right onto a snap guide", async () => {
    // Reference: one direct preview call with the full delta.
    const direct = await api.drag({
      path: "figure(1).axes[1]",
      dx_px: 40,
      dy_px: 0,
      mode: "move",
    });

    // The drag loop reports cumulative deltas; the release preview must
    // equal the single-shot call for the same total movement.
    const previews: DragResponse[] = [];
    const controller = new DragController(api, {
      onPreview: (p) => previews.push(p),
      onCancel: (m) => {
        throw new Error("drag cancelled: " + m);
      },
    });
    controller.begin("figure(1).axes[1]", "move");
    for (const dx of [10, 20, 30, 40]) {
      controller.move(dx, 0);
      await new Promise((resolve) => setTimeout(resolve, 20));
    }
    const released = await controller.release();
    expect(released).toBe(direct.statement);
    expect(previews.length).toBeGreaterThan(0);

    const final = previews[previews.length - 1];
    expect(final.guides).toContainEqual({ orientation: "v", position: 0.1, kind: "edge" });

    dragStatement = released as string;
    await api.edit(dragStatement);
    const doc = await api.doc();
    expect(Math.abs(doc.axes[1].position.x - 0.1)).toBeLessThan(1e-9);
  });

  it("edits the text fontsize through the property panel", async () => {
    const doc = await api.doc();
    const fields = fieldsFor(doc, "figure(1).axes[0].texts[0]");
    const fontsize = fields.find((f) => f.id.endsWith(".fontsize"));
    expect(fontsize).toBeDefined();
    fontsizeStatement = fontsize!.statement!("14") as string;
    expect(fontsizeStatement).toBe("figure(1).axes[0].texts[0].set_fontsize(14)");
    await api.edit(fontsizeStatement);
  });

  it("saves a file byte-identical to the headless apply path", async () => {
    const saved = await api.save();
    expect(saved.written).toBe(true);
    const uiBytes = await readFile(scriptPath);

    const scriptB = path.join(dir, "plot-apply.fig");
    const changes = path.join(dir, "changes.txt");
    await writeFile(scriptB, SCRIPT);
    await writeFile(changes, dragStatement + "\n" + fontsizeStatement + "\n");
    await run(PYTHON, ["-m", "figedit", "apply", scriptB, changes]);
    const applyBytes = await readFile(scriptB);

    expect(uiBytes.equals(applyBytes)).toBe(true);
    expect(uiBytes.toString()).toContain("#% start: automatic generated code from the figure editor");
  });

  it("surfaces written=false on a save with no further edits", async () => {
    const second = await api.save();
    expect(second.written).toBe(false);
    expect(saveStatusText(second)).toBe("no changes to write");
  });

  it("shows server rejections with their message", async () => {
    const err = await api.edit("figure(1).axes[0].set_xlim(1.0, 1.0)").catch((e: unknown) => e);
    expect(err).toBeInstanceOf(Error);
    expect((err as Error).message).toContain("limits must differ");
  });
});
