/** View model: a flat, render-ready projection of a SessionDocument.
 *
 * Hard rule: no topology is computed here.  Every number (framings,
 * counters, margin, linking entries) is copied verbatim from the
 * document; a lint test enforces the absence of arithmetic in this file.
 */

import type { ComponentDoc, MoveDoc, SessionDocument } from "./types.js";

export interface CounterView {
  b2: number;
  sigma: number;
  margin: number;
  marginTone: "bad" | "boundary" | "ok";
  mode: string;
}

export interface ComponentView {
  id: string;
  framing: number;
  characteristic: boolean;
  unknot: string;
  origin: string;
  abstract: boolean; // no live braid piece presents it
  stale: boolean;
  word: string | null;
  strands: number | null;
  linking: { other: string; value: number }[];
}

export interface HistoryItemView {
  index: number;
  label: string;
  deltaB2: number;
  deltaSigma: number;
}

export interface ReportView {
  headline: string;
  verdict: string;
  trustPoints: string[];
  warnings: string[];
}

export interface SessionView {
  id: string;
  counters: CounterView;
  components: ComponentView[];
  history: HistoryItemView[];
  undoAvailable: boolean;
  report: ReportView | null;
  spin: boolean; // empty characteristic mask, straight off the document
}

export function describeMove(move: MoveDoc): string {
  switch (move.type) {
    case "blowup_coherent": {
      const sign = move.sign > 0 ? "+" : "-";
      const where = move.at === undefined ? "end" : String(move.at);
      return `blowup ${sign} strands ${move.strands[0]}..${move.strands[1]} at ${where}`;
    }
    case "blowup_declared": {
      const sign = move.sign > 0 ? "+" : "-";
      const entries = Object.entries(move.linking)
        .map(([k, v]) => `${k}: ${v}`)
        .join(", ");
      return `blowup ${sign} declared { ${entries} }`;
    }
    case "blowup_meridian": {
      const sign = move.sign > 0 ? "+" : "-";
      const times = move.times ?? 1;
      return times === 1
        ? `meridian ${sign} of ${move.component}`
        : `meridian ${sign} of ${move.component} times ${times}`;
    }
    case "blowdown":
      return `blowdown ${move.component}`;
    case "slide":
      return `slide ${move.moving} over ${move.over} ${(move.orientation ?? 1) > 0 ? "+" : "-"}`;
    case "replace":
      return `replace ${move.component} (asserted isotopy${move.label ? `: ${move.label}` : ""})`;
    case "assert_unknot":
      return `assert-unknot ${move.component}`;
    case "endgame":
      return "endgame";
  }
}

function marginTone(margin: number): "bad" | "boundary" | "ok" {
  if (margin < 0) return "bad";
  if (margin === 0) return "boundary";
  return "ok";
}

function linkingRow(doc: SessionDocument, index: number): { other: string; value: number }[] {
  const comps = doc.state.components;
  const size = comps.length;
  const row: { other: string; value: number }[] = [];
  for (let j = 0; j < size; j++) {
    if (j === index) continue;
    const value = doc.state.linking[index * size + j];
    const other = comps[j];
    if (value !== undefined && value !== 0 && other !== undefined) {
      row.push({ other: other.id, value });
    }
  }
  return row;
}

function componentView(doc: SessionDocument, comp: ComponentDoc, index: number): ComponentView {
  const piece = doc.state.pieces.find((p) => p.component === comp.id) ?? null;
  return {
    id: comp.id,
    framing: comp.framing,
    characteristic: comp.characteristic,
    unknot: comp.unknot,
    origin: comp.origin,
    abstract: piece === null || piece.word === null,
    stale: piece !== null && piece.stale,
    word: piece === null ? null : piece.word,
    strands: piece === null ? null : piece.strands,
    linking: linkingRow(doc, index),
  };
}

export function sessionView(doc: SessionDocument): SessionView {
  const report = doc.state.report;
  const mask = doc.state.components.filter((c) => c.characteristic);
  return {
    id: doc.id,
    counters: {
      b2: doc.state.b2,
      sigma: doc.state.sigma,
      margin: doc.state.margin,
      marginTone: marginTone(doc.state.margin),
      mode: doc.state.mode,
    },
    components: doc.state.components.map((c, i) => componentView(doc, c, i)),
    history: doc.history.map((entry, index) => ({
      index,
      label: describeMove(entry.move),
      deltaB2: entry.delta_b2,
      deltaSigma: entry.delta_sigma,
    })),
    undoAvailable: doc.history.length > 0,
    report:
      report === null
        ? null
        : {
            headline: `spin; b2=${report.b2} sigma=${report.sigma} margin=${report.margin}`,
            verdict: report.verdict,
            trustPoints: report.trust_points.map(
              (t) => `${t.kind}: ${t.label ?? t.component}`,
            ),
            warnings: report.warnings,
          },
    spin: mask.length === 0,
  };
}
