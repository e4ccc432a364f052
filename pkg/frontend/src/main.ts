// Browser bootstrap: wires DOM events to the Explorer and re-renders on every
// state change. All logic lives in the imported modules; this file only glues.

import { ApiClient } from "./api.js";
import { renderApp } from "./render.js";
import { exportSession, importSession } from "./session.js";
import { Explorer } from "./state.js";

function apiBase(): string {
  const override = new URLSearchParams(window.location.search).get("api");
  return override ?? "";
}

async function start(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app container");

  let explorer: Explorer;
  try {
    explorer = await Explorer.boot(new ApiClient(apiBase()));
  } catch (error) {
    root.innerHTML = `<div class="banner banner-error">cannot reach the analysis service: ${String(
      error instanceof Error ? error.message : error,
    )}</div>`;
    return;
  }

  const redraw = () => {
    root.innerHTML = renderApp(explorer.state, explorer.summary);
  };

  root.addEventListener("click", (event) => {
    const target = (event.target as HTMLElement).closest<HTMLElement>(
      "[data-action]",
    );
    if (!target) return;
    const action = target.dataset.action;
    if (action === "choose") {
      void explorer
        .choose(target.dataset.dimension ?? "", target.dataset.value ?? "")
        .then(redraw);
    } else if (action === "undo") {
      explorer.undo();
      redraw();
    } else if (action === "unbind") {
      void explorer.unbind(target.dataset.dimension ?? "").then(redraw);
    } else if (action === "mode") {
      const mode = target.dataset.mode === "filter" ? "filter" : "walk";
      void explorer.setMode(mode).then(redraw);
    }
  });

  const saveButton = document.getElementById("save-session");
  saveButton?.addEventListener("click", () => {
    const blob = new Blob([exportSession(explorer.state)], {
      type: "application/json",
    });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = "designspace-session.json";
    link.click();
    URL.revokeObjectURL(link.href);
  });

  const loadInput = document.getElementById(
    "load-session",
  ) as HTMLInputElement | null;
  loadInput?.addEventListener("change", async () => {
    const file = loadInput.files?.[0];
    if (!file) return;
    try {
      explorer.restore(importSession(await file.text()));
    } catch (error) {
      root.innerHTML =
        `<div class="banner banner-error">${String(
          error instanceof Error ? error.message : error,
        )}</div>` + root.innerHTML;
      return;
    }
    redraw();
  });

  redraw();
}

void start();
