// Session files: a saved exploration is the full rendered state, so importing
// one reproduces the view without refetching anything.

import type { ExplorationState, PathStep } from "./types.js";

export interface SessionDocument {
  version: 1;
  mode: ExplorationState["mode"];
  path: PathStep[];
  bindings: Record<string, string>;
  view: ExplorationState["view"];
  recommendation: ExplorationState["recommendation"];
}

export function exportSession(state: ExplorationState): string {
  const doc: SessionDocument = {
    version: 1,
    mode: state.mode,
    path: state.path,
    bindings: state.bindings,
    view: state.view,
    recommendation: state.recommendation,
  };
  return JSON.stringify(doc, null, 2);
}

function invalid(reason: string): Error {
  return new Error(`not a session export: ${reason}`);
}

export function importSession(text: string): ExplorationState {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch {
    throw invalid("malformed JSON");
  }
  if (typeof doc !== "object" || doc === null) throw invalid("not an object");
  const candidate = doc as Partial<SessionDocument>;
  if (candidate.version !== 1) throw invalid("unsupported version");
  if (candidate.mode !== "walk" && candidate.mode !== "filter") {
    throw invalid("missing mode");
  }
  if (!Array.isArray(candidate.path)) throw invalid("missing path");
  if (typeof candidate.bindings !== "object" || candidate.bindings === null) {
    throw invalid("missing bindings");
  }
  const view = candidate.view;
  if (
    typeof view !== "object" ||
    view === null ||
    typeof view.count !== "number" ||
    !Array.isArray(view.children)
  ) {
    throw invalid("missing node view");
  }
  const recommendation = candidate.recommendation;
  if (
    typeof recommendation !== "object" ||
    recommendation === null ||
    typeof recommendation.match_count !== "number"
  ) {
    throw invalid("missing recommendation");
  }
  return {
    mode: candidate.mode,
    path: candidate.path,
    bindings: candidate.bindings,
    view,
    recommendation,
    error: null,
  };
}
