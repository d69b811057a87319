// Contract tests against recorded service responses: the console renders
// service numbers verbatim and never computes an analytic value of its own.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import type { LadderPayload, Report, SuggestionPayload } from "../src/api.js";
import {
  displayedNumbers,
  elicitationView,
  ladderView,
  rankingLine,
  scoreRows,
} from "../src/render.js";
import { initialState, withLadder, withLevelIndex, withReport, withSession } from "../src/state.js";

const here = dirname(fileURLToPath(import.meta.url));

function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, "fixtures", name), "utf-8")) as T;
}

const fixT = fixture<{ report: Report; ladder: LadderPayload }>("fix_t.json");
const fixPart = fixture<{
  report: Report;
  suggestion: SuggestionPayload;
  refinement: Report;
}>("fix_part.json");

/** Every number appearing anywhere in a service response. */
function responseNumbers(payload: unknown, out = new Set<number>()): Set<number> {
  if (typeof payload === "number") {
    out.add(payload);
  } else if (Array.isArray(payload)) {
    for (const item of payload) responseNumbers(item, out);
  } else if (payload !== null && typeof payload === "object") {
    for (const value of Object.values(payload)) responseNumbers(value, out);
  }
  return out;
}

function stateFor(report: Report, ladder?: LadderPayload) {
  let state = withSession(initialState(), report.session);
  state = withReport(state, report);
  if (ladder) state = withLadder(state, ladder.rungs);
  return state;
}

describe("degree-matrix session (recorded)", () => {
  it("slider stops are exactly the service ladder breakpoints", () => {
    const state = stateFor(fixT.report, fixT.ladder);
    const view = ladderView(state);
    expect(view).not.toBeNull();
    expect(view!.ticks).toEqual(fixT.ladder.rungs.map((r) => r.level));
    expect(view!.ticks).toEqual([0, 1, 2, 3]);
  });

  it("moving the slider re-renders the recorded cores", () => {
    let state = stateFor(fixT.report, fixT.ladder);
    expect(ladderView(state)!.core).toEqual(["a"]);
    state = withLevelIndex(state, fixT.ladder.rungs.length - 1);
    const top = ladderView(state)!;
    expect(top.core).toEqual(["a", "b", "c"]);
    expect(top.atTop).toBe(true);
    expect(top.strictPairs).toEqual([]);
  });

  it("scores and ranking come straight from the report", () => {
    const rows = scoreRows(fixT.report);
    expect(rows.map((r) => r.id)).toEqual(fixT.report.alternatives);
    for (const row of rows) {
      expect(row.value).toBe(fixT.report.utilities![row.id]);
    }
    expect(rankingLine(fixT.report)).toBe("a > b > c");
  });

  it("every rendered number exists in a service response", () => {
    const state = stateFor(fixT.report, fixT.ladder);
    const allowed = responseNumbers(fixT);
    for (const value of displayedNumbers(state)) {
      expect(allowed.has(value), `rendered ${value} not in any response`).toBe(true);
    }
  });
});

describe("partial-matrix session (recorded)", () => {
  it("renders the recorded intervals and missing-information criteria", () => {
    const view = elicitationView(stateFor(fixPart.report))!;
    expect(view.bars.map((b) => b.id)).toEqual(["a", "b", "c"]);
    const barA = view.bars[0]!;
    expect([barA.lower, barA.upper]).toEqual(fixPart.report.intervals!["a"]);
    expect(view.missing).toEqual(fixPart.report.missing_info);
    expect(view.complete).toBe(false);
  });

  it("shows the service's suggested pair", () => {
    const view = elicitationView(stateFor(fixPart.report))!;
    expect(view.suggestion).toEqual(fixPart.suggestion.pair);
    expect(view.suggestion).toEqual(["a", "c"]);
  });

  it("a submitted refinement collapses a's bar to a point at 0.5", () => {
    // the recorded refinement response is the service's refreshed report
    let state = stateFor(fixPart.report);
    state = withReport(state, fixPart.refinement);
    const view = elicitationView(state)!;
    const barA = view.bars.find((b) => b.id === "a")!;
    expect(barA.point).toBe(true);
    expect(barA.lower).toBe(0.5);
    expect(barA.upper).toBe(0.5);
    expect(view.suggestion).toEqual(["b", "c"]); // next prompt, also recorded
  });

  it("every rendered number exists in a service response, before and after", () => {
    const allowed = responseNumbers(fixPart);
    const before = stateFor(fixPart.report);
    const after = withReport(before, fixPart.refinement);
    for (const state of [before, after]) {
      for (const value of displayedNumbers(state)) {
        expect(allowed.has(value), `rendered ${value} not in any response`).toBe(true);
      }
    }
  });

  it("partial sessions render no ladder", () => {
    expect(ladderView(stateFor(fixPart.report))).toBeNull();
  });
});
