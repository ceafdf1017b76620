/** Wire schema of the kirbycalc session service.
 *
 * Every number is an exact integer; the UI never recomputes any of them.
 */

export type UnknotStatus = "verified" | "asserted" | "unknown";
export type Mode = "full" | "reduced";
export type Verdict = "not_smoothly_slice" | "inconclusive";

export interface ComponentDoc {
  id: string;
  framing: number;
  characteristic: boolean;
  unknot: UnknotStatus;
  origin: string;
  round: boolean;
}

export interface PieceDoc {
  id: string;
  strands: number;
  word: string | null;
  component: string;
  stale: boolean;
}

export interface TrustPointDoc {
  kind: "isotopy" | "unknot";
  component: string;
  label: string | null;
  detail: string | null;
}

export interface ReportDoc {
  b2: number;
  sigma: number;
  margin: number;
  verdict: Verdict;
  spin_structure: string;
  trust_points: TrustPointDoc[];
  arf_consistency: "consistent" | "inconsistent" | "unchecked";
  warnings: string[];
}

export interface StateDoc {
  mode: Mode;
  b2: number;
  sigma: number;
  margin: number;
  components: ComponentDoc[];
  linking: number[]; // row-major, components.length squared
  pieces: PieceDoc[];
  trust_points: TrustPointDoc[];
  warnings: string[];
  circle_counter: number;
  report: ReportDoc | null;
}

export interface HistoryEntryDoc {
  move: MoveDoc;
  pre_digest: string;
  delta_b2: number;
  delta_sigma: number;
}

export interface SessionDocument {
  id: string;
  setup: unknown;
  state: StateDoc;
  history: HistoryEntryDoc[];
  links: Record<string, string>;
}

export type MoveDoc =
  | {
      type: "blowup_coherent";
      sign: number;
      strands: [number, number];
      piece?: string | null;
      at?: "start" | "end" | number;
      reversed?: boolean;
    }
  | { type: "blowup_declared"; sign: number; linking: Record<string, number> }
  | { type: "blowup_meridian"; sign: number; component: string; times?: number }
  | { type: "blowdown"; component: string }
  | { type: "slide"; moving: string; over: string; orientation?: number }
  | {
      type: "replace";
      component: string;
      strands: number;
      word: string;
      framing: number;
      label?: string | null;
    }
  | { type: "assert_unknot"; component: string }
  | { type: "endgame" };

export interface ServiceError {
  kind: string;
  message: string;
  reason?: string;
}
