// HTML renderers. Pure string builders over ExplorationState so tests can
// assert on output without a DOM. Every number shown here was produced by the
// server; the only local arithmetic is display formatting.

import type {
  ExplorationState,
  SummaryDto,
  ValueStatDto,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;")
    .replaceAll("'", "&#39;");
}

// confidences are displayed with one decimal place
export function formatConfidence(confidence: number): string {
  return `${confidence.toFixed(1)}%`;
}

// A ranked list where the spread is tiny carries no real signal.
export function isNearUniform(stats: ValueStatDto[]): boolean {
  if (stats.length < 2) return false;
  const values = stats.map((s) => s.confidence);
  return Math.max(...values) - Math.min(...values) < 10;
}

export function renderErrorBanner(error: string | null): string {
  if (error === null) return "";
  return `<div class="banner banner-error" role="alert">${escapeHtml(error)}</div>`;
}

export function renderBreadcrumbs(state: ExplorationState): string {
  const steps = state.path
    .map(
      (step) =>
        `<li class="crumb">` +
        `<span class="crumb-dimension">${escapeHtml(step.dimension)}</span>` +
        `<span class="crumb-value">${escapeHtml(step.value)}</span></li>`,
    )
    .join("");
  const undo = state.path.length
    ? `<button type="button" class="btn" data-action="undo">undo</button>`
    : "";
  return `<nav class="breadcrumbs"><ol><li class="crumb crumb-root">start</li>${steps}</ol>${undo}</nav>`;
}

export function renderTreeView(state: ExplorationState): string {
  const { view } = state;
  const parts: string[] = [];
  parts.push(
    `<div class="node-count" data-count="${view.count}">` +
      `${view.count} matching record${view.count === 1 ? "" : "s"}</div>`,
  );

  if (view.count === 0) {
    parts.push(
      `<p class="no-evidence">no past experience on this path</p>`,
    );
  }

  if (view.dimension === null) {
    parts.push(`<p class="walk-done">every dimension is bound</p>`);
    return `<section class="tree-view">${parts.join("")}</section>`;
  }

  parts.push(
    `<h3 class="next-dimension">${escapeHtml(view.dimension)}</h3>`,
  );
  const children = view.children
    .map((child) => {
      const gap = child.count === 0;
      const classes = gap ? "child gap unexplored" : "child recommended";
      const note = gap ? `<span class="gap-note">unexplored</span>` : "";
      return (
        `<li><button type="button" class="${classes}"` +
        ` data-action="choose"` +
        ` data-dimension="${escapeHtml(view.dimension ?? "")}"` +
        ` data-value="${escapeHtml(child.value)}">` +
        `<span class="child-value">${escapeHtml(child.value)}</span>` +
        `<span class="child-count">${child.count}</span>${note}</button></li>`
      );
    })
    .join("");
  parts.push(`<ul class="children">${children}</ul>`);
  return `<section class="tree-view">${parts.join("")}</section>`;
}

function renderPanel(
  dimension: string,
  stats: ValueStatDto[],
  gaps: string[],
): string {
  const rows = stats
    .map(
      (stat) =>
        `<li class="stat">` +
        `<span class="stat-value">${escapeHtml(stat.value)}</span>` +
        `<span class="stat-confidence">${formatConfidence(stat.confidence)}</span>` +
        `<span class="stat-count">${stat.count}</span></li>`,
    )
    .join("");
  const gapRows = gaps
    .map(
      (value) =>
        `<li class="stat gap unexplored">` +
        `<span class="stat-value">${escapeHtml(value)}</span>` +
        `<span class="gap-note">unexplored</span></li>`,
    )
    .join("");
  const flat = isNearUniform(stats)
    ? `<p class="no-clear">no clear recommendation</p>`
    : "";
  return (
    `<article class="panel" data-dimension="${escapeHtml(dimension)}">` +
    `<h4>${escapeHtml(dimension)}</h4>${flat}` +
    `<ul class="stats">${rows}${gapRows}</ul></article>`
  );
}

export function renderRecommendations(state: ExplorationState): string {
  const { recommendation } = state;
  if (recommendation.no_evidence) {
    return (
      `<section class="recommendations">` +
      `<p class="no-evidence">no past experience matches this combination</p>` +
      `</section>`
    );
  }
  const dimensions = Object.keys(recommendation.recommendations);
  const panels = dimensions
    .map((dimension) =>
      renderPanel(
        dimension,
        recommendation.recommendations[dimension] ?? [],
        recommendation.gaps[dimension] ?? [],
      ),
    )
    .join("");
  return (
    `<section class="recommendations" data-matches="${recommendation.match_count}">` +
    `${panels}</section>`
  );
}

export function renderFilterControls(
  state: ExplorationState,
  summary: SummaryDto,
): string {
  const groups = summary.dimensions
    .map((dimension) => {
      const bound = state.bindings[dimension.name];
      if (bound !== undefined) {
        return (
          `<div class="filter-group bound" data-dimension="${escapeHtml(dimension.name)}">` +
          `<span class="filter-name">${escapeHtml(dimension.name)}</span>` +
          `<span class="filter-value">${escapeHtml(bound)}</span>` +
          `<button type="button" class="btn" data-action="unbind"` +
          ` data-dimension="${escapeHtml(dimension.name)}">clear</button></div>`
        );
      }
      const options = dimension.domain
        .map(
          (value) =>
            `<button type="button" class="option" data-action="choose"` +
            ` data-dimension="${escapeHtml(dimension.name)}"` +
            ` data-value="${escapeHtml(value)}">${escapeHtml(value)}</button>`,
        )
        .join("");
      return (
        `<div class="filter-group" data-dimension="${escapeHtml(dimension.name)}">` +
        `<span class="filter-name">${escapeHtml(dimension.name)}</span>${options}</div>`
      );
    })
    .join("");
  return `<section class="filters">${groups}</section>`;
}

export function renderApp(
  state: ExplorationState,
  summary: SummaryDto,
): string {
  const mode =
    `<div class="mode-switch">` +
    `<button type="button" class="btn${state.mode === "walk" ? " active" : ""}"` +
    ` data-action="mode" data-mode="walk">guided walk</button>` +
    `<button type="button" class="btn${state.mode === "filter" ? " active" : ""}"` +
    ` data-action="mode" data-mode="filter">free filter</button></div>`;
  const left =
    state.mode === "walk"
      ? renderBreadcrumbs(state) + renderTreeView(state)
      : renderFilterControls(state, summary);
  return (
    renderErrorBanner(state.error) +
    mode +
    `<div class="layout"><div class="left">${left}</div>` +
    `<div class="right">${renderRecommendations(state)}</div></div>`
  );
}
