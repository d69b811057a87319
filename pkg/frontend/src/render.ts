// Pure view-model builders. Every number these emit for display is copied
// verbatim from a service response; the only arithmetic is bar positioning.

import type { Report, RungPayload } from "./api.js";
import type { ViewState } from "./state.js";

export interface LadderViewModel {
  ticks: number[]; // slider tick values: exactly the service rung levels
  selected: number; // index of the active rung
  level: number;
  core: string[];
  strictPairs: [string, string][];
  atTop: boolean;
}

export function ladderView(state: ViewState): LadderViewModel | null {
  if (state.ladder.length === 0) return null;
  const index = Math.max(0, Math.min(state.levelIndex, state.ladder.length - 1));
  const rung = state.ladder[index] as RungPayload;
  return {
    ticks: state.ladder.map((r) => r.level),
    selected: index,
    level: rung.level,
    core: rung.core,
    strictPairs: rung.strict_pairs,
    atTop: index === state.ladder.length - 1,
  };
}

export interface IntervalBar {
  id: string;
  lower: number; // displayed verbatim
  upper: number; // displayed verbatim
  leftPct: number; // presentation geometry over [-phi_star, phi_star]
  widthPct: number;
  point: boolean;
}

export interface ElicitationViewModel {
  bars: IntervalBar[];
  missing: { mean: number; max: number; sum: number } | null;
  suggestion: [string, string] | null;
  complete: boolean;
  phiStar: number;
}

export function elicitationView(state: ViewState): ElicitationViewModel | null {
  const report = state.report;
  if (!report || !report.intervals) return null;
  const phiStar = report.phi_star ?? 1;
  const span = 2 * phiStar || 1;
  const bars: IntervalBar[] = report.alternatives.map((id) => {
    const [lower, upper] = report.intervals![id] ?? [0, 0];
    return {
      id,
      lower,
      upper,
      leftPct: ((lower + phiStar) / span) * 100,
      widthPct: ((upper - lower) / span) * 100,
      point: lower === upper,
    };
  });
  return {
    bars,
    missing: report.missing_info ?? null,
    suggestion: state.suggestion,
    complete: report.complete ?? false,
    phiStar,
  };
}

export interface ScoreRow {
  id: string;
  value: number; // displayed verbatim
}

/** Utility (or Copeland score) table in report order. */
export function scoreRows(report: Report): ScoreRow[] {
  const scores = report.utilities ?? report.copeland?.scores;
  if (!scores) return [];
  return report.alternatives
    .filter((id) => id in scores)
    .map((id) => ({ id, value: scores[id] as number }));
}

/** "a > b = c" style summary of the ranking groups. */
export function rankingLine(report: Report): string {
  const ranking = report.ranking ?? report.copeland?.ranking;
  if (!ranking) return "";
  return ranking.map((group) => group.join(" = ")).join(" > ");
}

export function warningBadges(report: Report): string[] {
  return report.warnings ?? [];
}

/** All numbers a rendered view presents to the analyst. */
export function displayedNumbers(state: ViewState): number[] {
  const out: number[] = [];
  const ladder = ladderView(state);
  if (ladder) {
    out.push(...ladder.ticks, ladder.level);
  }
  const elicitation = elicitationView(state);
  if (elicitation) {
    for (const bar of elicitation.bars) out.push(bar.lower, bar.upper);
    if (elicitation.missing) {
      out.push(elicitation.missing.mean, elicitation.missing.max, elicitation.missing.sum);
    }
    out.push(elicitation.phiStar);
  }
  if (state.report) {
    for (const row of scoreRows(state.report)) out.push(row.value);
  }
  return out;
}
