// Exploration state machine. All analytics come from the server; this module
// only sequences requests, keeps undo history, and drops stale responses.

import type { ApiClient } from "./api.js";
import type {
  ExplorationState,
  Mode,
  NodeViewDto,
  PathStep,
  SummaryDto,
} from "./types.js";

function snapshot(state: ExplorationState): ExplorationState {
  return structuredClone(state);
}

function bindingsOf(path: PathStep[]): Record<string, string> {
  const bindings: Record<string, string> = {};
  for (const step of path) bindings[step.dimension] = step.value;
  return bindings;
}

export class Explorer {
  private current: ExplorationState;
  private history: ExplorationState[] = [];
  // bumped on every interaction; responses carrying an older ticket are stale
  private seq = 0;

  private constructor(
    private readonly api: ApiClient,
    readonly summary: SummaryDto,
    initial: ExplorationState,
  ) {
    this.current = initial;
  }

  static async boot(api: ApiClient): Promise<Explorer> {
    const [summary, view, recommendation] = await Promise.all([
      api.summary(),
      api.descend([]),
      api.recommend({}),
    ]);
    return new Explorer(api, summary, {
      mode: "walk",
      path: [],
      bindings: {},
      view,
      recommendation,
      error: null,
    });
  }

  get state(): ExplorationState {
    return snapshot(this.current);
  }

  get canUndo(): boolean {
    return this.history.length > 0;
  }

  domainOf(dimension: string): string[] {
    const found = this.summary.dimensions.find((d) => d.name === dimension);
    return found ? [...found.domain] : [];
  }

  canChoose(dimension: string, value: string): boolean {
    if (this.current.mode === "walk") {
      return (
        this.current.view.dimension === dimension &&
        this.current.view.children.some((c) => c.value === value)
      );
    }
    return (
      !(dimension in this.current.bindings) &&
      this.domainOf(dimension).includes(value)
    );
  }

  async choose(dimension: string, value: string): Promise<ExplorationState> {
    if (!this.canChoose(dimension, value)) {
      return this.fail(`cannot choose ${value} for ${dimension} here`);
    }
    const ticket = ++this.seq;
    const previous = snapshot(this.current);

    if (this.current.mode === "walk") {
      const path = [...this.current.path, { dimension, value }];
      const bindings = bindingsOf(path);
      return this.apply(ticket, previous, async () => {
        const [view, recommendation] = await Promise.all([
          this.api.descend(path.map((s) => s.value)),
          this.api.recommend(bindings),
        ]);
        return { ...previous, path, bindings, view, recommendation, error: null };
      });
    }

    const bindings = { ...this.current.bindings, [dimension]: value };
    return this.apply(ticket, previous, async () => {
      const recommendation = await this.api.recommend(bindings);
      return { ...previous, bindings, recommendation, error: null };
    });
  }

  async unbind(dimension: string): Promise<ExplorationState> {
    if (!(dimension in this.current.bindings)) return this.state;
    const ticket = ++this.seq;
    const previous = snapshot(this.current);
    const bindings = { ...this.current.bindings };
    delete bindings[dimension];

    if (this.current.mode === "walk") {
      // in the walk, unbinding means rewinding the path to before that step
      const at = previous.path.findIndex((s) => s.dimension === dimension);
      const path = at < 0 ? previous.path : previous.path.slice(0, at);
      return this.apply(ticket, previous, async () => {
        const [view, recommendation] = await Promise.all([
          this.api.descend(path.map((s) => s.value)),
          this.api.recommend(bindingsOf(path)),
        ]);
        return {
          ...previous,
          path,
          bindings: bindingsOf(path),
          view,
          recommendation,
          error: null,
        };
      });
    }

    return this.apply(ticket, previous, async () => {
      const recommendation = await this.api.recommend(bindings);
      return { ...previous, bindings, recommendation, error: null };
    });
  }

  async setMode(mode: Mode): Promise<ExplorationState> {
    if (mode === this.current.mode) return this.state;
    const ticket = ++this.seq;
    const previous = snapshot(this.current);

    if (mode === "filter") {
      return this.apply(ticket, previous, async () => ({
        ...previous,
        mode,
        error: null,
      }));
    }

    // entering the walk: the trie view shows the longest tree-order prefix of
    // the bindings; bindings off that prefix are released so the two panels
    // agree on what is bound
    return this.apply(ticket, previous, async () => {
      const { path, view } = await this.derivePath(previous.bindings);
      const bindings = bindingsOf(path);
      const recommendation = await this.api.recommend(bindings);
      return { mode, path, bindings, view, recommendation, error: null };
    });
  }

  undo(): ExplorationState {
    const previous = this.history.pop();
    if (previous) {
      this.seq += 1; // in-flight responses must not clobber the restored state
      this.current = previous;
    }
    return this.state;
  }

  restore(state: ExplorationState): ExplorationState {
    this.seq += 1;
    this.history.push(snapshot(this.current));
    this.current = snapshot(state);
    return this.state;
  }

  private async derivePath(
    bindings: Record<string, string>,
  ): Promise<{ path: PathStep[]; view: NodeViewDto }> {
    const path: PathStep[] = [];
    let view = await this.api.descend([]);
    while (view.dimension !== null) {
      const value = bindings[view.dimension];
      if (value === undefined) break;
      path.push({ dimension: view.dimension, value });
      view = await this.api.descend(path.map((s) => s.value));
    }
    return { path, view };
  }

  private async apply(
    ticket: number,
    previous: ExplorationState,
    work: () => Promise<ExplorationState>,
  ): Promise<ExplorationState> {
    try {
      const next = await work();
      if (ticket !== this.seq) return this.state; // superseded by a newer click
      this.history.push(previous);
      this.current = next;
    } catch (error) {
      if (ticket !== this.seq) return this.state;
      // state preserved; only the banner changes, so nothing joins the history
      this.current = {
        ...this.current,
        error: error instanceof Error ? error.message : String(error),
      };
    }
    return this.state;
  }

  private fail(message: string): ExplorationState {
    this.current = { ...this.current, error: message };
    return this.state;
  }
}
