// Shipping check for the UI: a three-step guided walk over the recorded
// service transcript must render exactly the recorded numbers, undo must
// restore the prior state, and a session file must round-trip.

import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { renderApp } from "../src/render.js";
import { exportSession, importSession } from "../src/session.js";
import { Explorer } from "../src/state.js";
import type { ExplorationState } from "../src/types.js";
import { MockServer, loadRecording } from "./mock.js";

const recording = loadRecording();

const WALK: Array<{ dimension: string; value: string }> = [
  { dimension: "Locomotion", value: "wheels" },
  { dimension: "Sensing", value: "camera" },
  { dimension: "Power", value: "battery" },
];

function recordedView(pathValues: string[]) {
  const view = recording.descend[JSON.stringify(pathValues)];
  if (!view) throw new Error(`recording is missing ${pathValues.join("/")}`);
  return view;
}

function recordedRecommendation(bindings: Record<string, string>) {
  const sorted: Record<string, string> = {};
  for (const key of Object.keys(bindings).sort()) {
    const value = bindings[key];
    if (value !== undefined) sorted[key] = value;
  }
  const rec = recording.recommend[JSON.stringify(sorted)];
  if (!rec) throw new Error(`recording is missing ${JSON.stringify(sorted)}`);
  return rec;
}

// Every number on screen must be the server's number: each child count, each
// confidence at one decimal, each gap value, and nothing beyond them.
function expectRenderMatchesRecording(
  html: string,
  state: ExplorationState,
): void {
  const view = state.view;
  for (const child of view.children) {
    expect(html).toContain(
      `<span class="child-value">${child.value}</span>` +
        `<span class="child-count">${child.count}</span>`,
    );
    if (child.count === 0) {
      expect(html).toMatch(
        new RegExp(
          `class="child gap unexplored"[^>]*data-value="${child.value}"`,
        ),
      );
    }
  }
  const childButtons = (html.match(/data-action="choose"/g) ?? []).length;
  expect(childButtons).toBe(view.children.length);

  const rec = state.recommendation;
  let expectedRows = 0;
  for (const [dimension, stats] of Object.entries(rec.recommendations)) {
    for (const stat of stats) {
      expect(html).toContain(
        `<span class="stat-value">${stat.value}</span>` +
          `<span class="stat-confidence">${stat.confidence.toFixed(1)}%</span>` +
          `<span class="stat-count">${stat.count}</span>`,
      );
    }
    for (const gap of rec.gaps[dimension] ?? []) {
      expect(html).toContain(
        `<li class="stat gap unexplored">` +
          `<span class="stat-value">${gap}</span>`,
      );
    }
    expectedRows += stats.length + (rec.gaps[dimension] ?? []).length;
  }
  const statRows = (html.match(/<li class="stat/g) ?? []).length;
  expect(statRows).toBe(expectedRows);
}

describe("acceptance: guided walk against the recorded service", () => {
  it("renders exactly the recorded counts, confidences, and gaps at every step", async () => {
    const explorer = await Explorer.boot(
      new ApiClient("", new MockServer().fetch),
    );

    let state = explorer.state;
    expect(state.view).toEqual(recordedView([]));
    expect(state.recommendation).toEqual(recordedRecommendation({}));
    expectRenderMatchesRecording(
      renderApp(state, explorer.summary),
      state,
    );

    const bindings: Record<string, string> = {};
    const pathValues: string[] = [];
    for (const step of WALK) {
      state = await explorer.choose(step.dimension, step.value);
      pathValues.push(step.value);
      bindings[step.dimension] = step.value;
      expect(state.error).toBeNull();
      expect(state.view).toEqual(recordedView(pathValues));
      expect(state.recommendation).toEqual(recordedRecommendation(bindings));
      expectRenderMatchesRecording(
        renderApp(state, explorer.summary),
        state,
      );
    }

    // after the third step the recorded gap must be on screen
    const html = renderApp(state, explorer.summary);
    expect(state.view.gaps).toContain("onboard");
    expect(html).toContain('class="child gap unexplored"');
  });

  it("undo restores the prior state exactly", async () => {
    const explorer = await Explorer.boot(
      new ApiClient("", new MockServer().fetch),
    );
    await explorer.choose("Locomotion", "wheels");
    await explorer.choose("Sensing", "camera");
    const beforeThird = explorer.state;
    await explorer.choose("Power", "battery");
    expect(explorer.state).not.toEqual(beforeThird);
    expect(explorer.undo()).toEqual(beforeThird);
    expect(
      renderApp(explorer.state, explorer.summary),
    ).toBe(renderApp(beforeThird, explorer.summary));
  });

  it("session export and import round-trip", async () => {
    const explorer = await Explorer.boot(
      new ApiClient("", new MockServer().fetch),
    );
    for (const step of WALK) {
      await explorer.choose(step.dimension, step.value);
    }
    const state = explorer.state;
    const revived = importSession(exportSession(state));
    expect(revived).toEqual(state);
    expect(renderApp(revived, explorer.summary)).toBe(
      renderApp(state, explorer.summary),
    );
    // and a second generation of the file is byte-identical
    expect(exportSession(revived)).toBe(exportSession(state));
  });

  it("binding order does not change the recommendation panels", async () => {
    const forward = await Explorer.boot(
      new ApiClient("", new MockServer().fetch),
    );
    await forward.setMode("filter");
    await forward.choose("Locomotion", "wheels");
    const a = await forward.choose("Sensing", "camera");

    const backward = await Explorer.boot(
      new ApiClient("", new MockServer().fetch),
    );
    await backward.setMode("filter");
    await backward.choose("Sensing", "camera");
    const b = await backward.choose("Locomotion", "wheels");

    expect(a.recommendation).toEqual(b.recommendation);
    expect(renderApp(a, forward.summary)).toBe(renderApp(b, backward.summary));
  });
});
