// View state: always derived from the most recent service responses.
// Pure update helpers so the state flow is testable without a DOM.

import type { Report, RungPayload } from "./api.js";

export interface ViewState {
  sessionId: string | null;
  report: Report | null;
  ladder: RungPayload[];
  levelIndex: number; // slider position: an index into `ladder`
  suggestion: [string, string] | null;
}

export function initialState(): ViewState {
  return { sessionId: null, report: null, ladder: [], levelIndex: 0, suggestion: null };
}

export function withSession(state: ViewState, sessionId: string): ViewState {
  return { ...initialState(), sessionId };
}

export function withReport(state: ViewState, report: Report): ViewState {
  return {
    ...state,
    report,
    suggestion: report.suggestion ?? null,
  };
}

export function withLadder(state: ViewState, rungs: RungPayload[]): ViewState {
  const levelIndex = Math.min(state.levelIndex, Math.max(rungs.length - 1, 0));
  return { ...state, ladder: rungs, levelIndex };
}

export function withLevelIndex(state: ViewState, index: number): ViewState {
  const clamped = Math.max(0, Math.min(index, Math.max(state.ladder.length - 1, 0)));
  return { ...state, levelIndex: clamped };
}

export function withSuggestion(state: ViewState, pair: [string, string] | null): ViewState {
  return { ...state, suggestion: pair };
}
