// DOM wiring for the console. All analysis numbers on screen come straight
// from service responses (see render.ts); this file only moves them around.

import { ConnectionError, ServiceError, SessionApi } from "./api.js";
import type { Report } from "./api.js";
import {
  elicitationView,
  ladderView,
  rankingLine,
  scoreRows,
  warningBadges,
} from "./render.js";
import {
  ViewState,
  initialState,
  withLadder,
  withLevelIndex,
  withReport,
  withSession,
} from "./state.js";

const api = new SessionApi("");
let state: ViewState = initialState();
let retryAction: (() => Promise<void>) | null = null;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function show(id: string, visible: boolean): void {
  el(id).classList.toggle("hidden", !visible);
}

function setText(id: string, text: string): void {
  el(id).textContent = text;
}

// -- error banner -------------------------------------------------------------

function showBanner(action: () => Promise<void>): void {
  retryAction = action;
  show("error-banner", true);
}

el<HTMLButtonElement>("retry-button").addEventListener("click", async () => {
  show("error-banner", false);
  if (retryAction) await retryAction();
});

async function guarded(action: () => Promise<void>): Promise<void> {
  try {
    await action();
  } catch (err) {
    if (err instanceof ConnectionError) {
      showBanner(action);
      return;
    }
    throw err;
  }
}

// -- session loading ----------------------------------------------------------

function sniffCsvFormat(text: string): string {
  const hasHole = text
    .split("\n")
    .filter((line) => line.trim() && !line.trim().startsWith("#"))
    .slice(1)
    .some((line) => /(,\s*(,|$))|(,\s*na\s*(,|$))/i.test(line));
  return text.includes("phi_star") || hasHole ? "partial" : "sd";
}

function buildPayload(text: string, format: string, phiStar: string): unknown {
  const trimmed = text.trim();
  if (trimmed.startsWith("{")) {
    return JSON.parse(trimmed);
  }
  const fmt = format === "auto" ? sniffCsvFormat(text) : format;
  const wrapper: Record<string, unknown> = { format: fmt, content: text };
  if (phiStar.trim()) wrapper.phi_star = Number(phiStar);
  return wrapper;
}

async function loadSession(): Promise<void> {
  setText("load-error", "");
  const text = el<HTMLTextAreaElement>("document-input").value;
  const format = el<HTMLSelectElement>("format-select").value;
  const phiStar = el<HTMLInputElement>("phi-star-input").value;
  let payload: unknown;
  try {
    payload = buildPayload(text, format, phiStar);
  } catch (err) {
    setText("load-error", `not valid JSON: ${String(err)}`);
    return;
  }
  await guarded(async () => {
    try {
      const id = await api.createSession(payload);
      state = withSession(state, id);
      await refreshSession();
    } catch (err) {
      if (err instanceof ServiceError) {
        setText("load-error", err.message);
        return;
      }
      throw err;
    }
  });
}

async function refreshSession(): Promise<void> {
  if (!state.sessionId) return;
  const report = await api.getReport(state.sessionId);
  state = withReport(state, report);
  try {
    const ladder = await api.getLadder(state.sessionId);
    state = withLadder(state, ladder.rungs);
  } catch (err) {
    if (err instanceof ServiceError) {
      state = withLadder(state, []); // partial sessions have no ladder
    } else {
      throw err;
    }
  }
  renderAll();
}

el<HTMLButtonElement>("load-button").addEventListener("click", () => {
  void loadSession();
});

// -- ladder view --------------------------------------------------------------

const slider = el<HTMLInputElement>("level-slider");

slider.addEventListener("input", () => {
  state = withLevelIndex(state, Number(slider.value));
  renderLadder();
});

function renderLadder(): void {
  const view = ladderView(state);
  show("ladder-section", view !== null);
  if (!view) return;
  slider.max = String(view.ticks.length - 1);
  slider.value = String(view.selected);
  setText("level-label", `level ${view.level}`);
  setText("level-ticks", view.ticks.join("  "));
  const coreList = el("core-list");
  coreList.innerHTML = "";
  for (const id of view.core) {
    const chip = document.createElement("span");
    chip.className = "chip core-chip";
    chip.textContent = id;
    coreList.appendChild(chip);
  }
  const pairs = el("strict-pairs");
  pairs.textContent = view.strictPairs.length
    ? view.strictPairs.map(([x, y]) => `${x} > ${y}`).join(", ")
    : view.atTop
      ? "nothing dominates above this level"
      : "no strict preferences at this level";
}

el<HTMLButtonElement>("bookmark-button").addEventListener("click", () => {
  void guarded(async () => {
    const view = ladderView(state);
    if (!view || !state.sessionId) return;
    const name = el<HTMLInputElement>("bookmark-name").value.trim() || `level-${view.level}`;
    try {
      const result = await api.postBookmark(state.sessionId, name, view.level);
      renderBookmarks(result.bookmarks);
    } catch (err) {
      if (err instanceof ServiceError) {
        setText("bookmark-error", err.message);
        return;
      }
      throw err;
    }
  });
});

function renderBookmarks(bookmarks: Record<string, number>): void {
  setText("bookmark-error", "");
  const names = Object.keys(bookmarks).sort();
  setText(
    "bookmarks-list",
    names.length ? names.map((n) => `${n} @ ${bookmarks[n]}`).join(", ") : "none yet",
  );
}

// -- elicitation view ---------------------------------------------------------

function renderElicitation(): void {
  const view = elicitationView(state);
  show("elicitation-section", view !== null);
  if (!view) return;

  const bars = el("interval-bars");
  bars.innerHTML = "";
  for (const bar of view.bars) {
    const row = document.createElement("div");
    row.className = "bar-row";
    const label = document.createElement("span");
    label.className = "bar-label";
    label.textContent = bar.id;
    const track = document.createElement("div");
    track.className = "bar-track";
    const fill = document.createElement("div");
    fill.className = bar.point ? "bar-fill bar-point" : "bar-fill";
    fill.style.left = `${bar.leftPct}%`;
    fill.style.width = bar.point ? "2px" : `${bar.widthPct}%`;
    track.appendChild(fill);
    const numbers = document.createElement("span");
    numbers.className = "bar-numbers";
    numbers.textContent = bar.point ? `${bar.lower}` : `[${bar.lower}, ${bar.upper}]`;
    row.append(label, track, numbers);
    bars.appendChild(row);
  }

  if (view.missing) {
    setText(
      "missing-info",
      `missing information: mean ${view.missing.mean}, max ${view.missing.max}, affected weight ${view.missing.sum}`,
    );
  } else {
    setText("missing-info", "");
  }

  const canRefine = state.report?.kind === "partial";
  show("refine-form", canRefine && !view.complete);
  show("complete-note", view.complete);
  if (canRefine && !view.complete) {
    populatePairSelectors(view.suggestion);
    setText(
      "suggestion-label",
      view.suggestion
        ? `suggested comparison: ${view.suggestion[0]} vs ${view.suggestion[1]}`
        : "no suggestion",
    );
  }
}

function populatePairSelectors(suggestion: [string, string] | null): void {
  const report = state.report;
  if (!report) return;
  for (const [selectId, preset] of [
    ["refine-x", suggestion?.[0]],
    ["refine-y", suggestion?.[1]],
  ] as const) {
    const select = el<HTMLSelectElement>(selectId);
    select.innerHTML = "";
    for (const id of report.alternatives) {
      const option = document.createElement("option");
      option.value = id;
      option.textContent = id;
      if (id === preset) option.selected = true;
      select.appendChild(option);
    }
  }
}

el<HTMLButtonElement>("refine-submit").addEventListener("click", () => {
  void guarded(async () => {
    if (!state.sessionId) return;
    setText("refine-error", "");
    const x = el<HTMLSelectElement>("refine-x").value;
    const y = el<HTMLSelectElement>("refine-y").value;
    const raw = el<HTMLInputElement>("refine-value").value;
    if (!raw.trim() || Number.isNaN(Number(raw))) {
      setText("refine-error", "enter a numeric superiority degree");
      return;
    }
    try {
      const report: Report = await api.postRefinement(state.sessionId, x, y, Number(raw));
      state = withReport(state, report);
      el<HTMLInputElement>("refine-value").value = "";
      renderAll();
    } catch (err) {
      if (err instanceof ServiceError) {
        setText("refine-error", err.message); // surfaced verbatim
        return;
      }
      throw err;
    }
  });
});

el<HTMLButtonElement>("refine-abstain").addEventListener("click", () => {
  // abstaining posts nothing; the prompt just steps aside
  setText("suggestion-label", "prompt dismissed - pick any pair when ready");
});

// -- whole-page render ----------------------------------------------------------

function renderAll(): void {
  const report = state.report;
  show("session-section", report !== null);
  show("load-section", report === null);
  if (!report) return;

  setText("session-id", report.session);
  setText("session-kind", report.kind);

  const warnings = el("warnings");
  warnings.innerHTML = "";
  for (const text of warningBadges(report)) {
    const badge = document.createElement("span");
    badge.className = "chip warning-chip";
    badge.textContent = text;
    warnings.appendChild(badge);
  }

  const line = rankingLine(report);
  setText("ranking-line", line);
  show("scores-section", line !== "");
  const tbody = el("scores-body");
  tbody.innerHTML = "";
  for (const row of scoreRows(report)) {
    const tr = document.createElement("tr");
    const name = document.createElement("td");
    name.textContent = row.id;
    const value = document.createElement("td");
    value.textContent = String(row.value);
    tr.append(name, value);
    tbody.appendChild(tr);
  }

  renderBookmarks(report.bookmarks ?? {});
  renderLadder();
  renderElicitation();
}

el<HTMLButtonElement>("new-session-button").addEventListener("click", () => {
  state = initialState();
  renderAll();
  show("load-section", true);
  show("session-section", false);
});
