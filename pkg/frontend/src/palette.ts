/** Move palette: turn UI gestures and form inputs into move documents.
 *
 * Gestures that cannot possibly succeed are rejected client-side with the
 * same machine-readable reason codes the server would emit, so the inline
 * error text is identical either way.  All checks read document fields
 * only (framings, strand counts, unknot statuses); nothing is computed.
 */

import type { MoveDoc, SessionDocument } from "./types.js";

export class MoveRejected extends Error {
  readonly reason: string;

  constructor(reason: string, message: string) {
    super(message);
    this.reason = reason;
  }
}

function componentOf(doc: SessionDocument, id: string) {
  const comp = doc.state.components.find((c) => c.id === id);
  if (!comp) {
    throw new MoveRejected("unknown_component", `no component named ${id}`);
  }
  return comp;
}

/** Drag over a strand interval plus a sign toggle. */
export function coherentBlowupFromDrag(
  doc: SessionDocument,
  gesture: {
    pieceId: string;
    lo: number;
    hi: number;
    sign: number;
    at?: "start" | "end" | number;
    reversed?: boolean;
  },
): MoveDoc {
  const piece = doc.state.pieces.find((p) => p.id === gesture.pieceId);
  if (!piece) {
    throw new MoveRejected("unknown_piece", `no piece named ${gesture.pieceId}`);
  }
  if (piece.word === null || piece.stale) {
    throw new MoveRejected(
      "piece_stale",
      `piece ${piece.id} has no certified word; replace it first`,
    );
  }
  if (!(1 <= gesture.lo && gesture.lo <= gesture.hi && gesture.hi <= piece.strands)) {
    throw new MoveRejected(
      "bad_locus",
      `interval [${gesture.lo}, ${gesture.hi}] outside [1, ${piece.strands}]`,
    );
  }
  if (gesture.sign !== 1 && gesture.sign !== -1) {
    throw new MoveRejected("bad_sign", "blow-up sign must be +1 or -1");
  }
  return {
    type: "blowup_coherent",
    sign: gesture.sign,
    piece: gesture.pieceId,
    strands: [gesture.lo, gesture.hi],
    at: gesture.at ?? "end",
    reversed: gesture.reversed ?? false,
  };
}

/** Clicking a component with the meridian tool. */
export function meridianFromClick(
  doc: SessionDocument,
  componentId: string,
  sign: number,
  times = 1,
): MoveDoc {
  componentOf(doc, componentId);
  if (times < 1) {
    throw new MoveRejected("bad_times", "meridian count must be at least 1");
  }
  return { type: "blowup_meridian", sign, component: componentId, times };
}

/** Clicking a component with the blow-down tool. */
export function blowdownFromClick(doc: SessionDocument, componentId: string): MoveDoc {
  const comp = componentOf(doc, componentId);
  if (comp.framing !== 1 && comp.framing !== -1) {
    throw new MoveRejected(
      "framing_not_unit",
      `framing ${comp.framing} is not +-1`,
    );
  }
  if (comp.unknot !== "verified" && comp.unknot !== "asserted") {
    throw new MoveRejected(
      "unknot_status_unknown",
      `${componentId} is not known to be an unknot`,
    );
  }
  return { type: "blowdown", component: componentId };
}

/** The declared blow-up form: component -> integer linking. */
export function declaredBlowupFromForm(
  doc: SessionDocument,
  sign: number,
  entries: Record<string, number>,
): MoveDoc {
  for (const [id, value] of Object.entries(entries)) {
    componentOf(doc, id);
    if (!Number.isInteger(value)) {
      throw new MoveRejected("bad_linking", `linking with ${id} must be an integer`);
    }
  }
  return { type: "blowup_declared", sign, linking: entries };
}

/** The slide form. */
export function slideFromForm(
  doc: SessionDocument,
  moving: string,
  over: string,
  orientation: number = 1,
): MoveDoc {
  componentOf(doc, moving);
  componentOf(doc, over);
  if (moving === over) {
    throw new MoveRejected("self_slide", "cannot slide a component over itself");
  }
  return { type: "slide", moving, over, orientation };
}

export function replaceFromForm(
  doc: SessionDocument,
  componentId: string,
  strands: number,
  word: string,
  label?: string,
): MoveDoc {
  const comp = componentOf(doc, componentId);
  return {
    type: "replace",
    component: componentId,
    strands,
    word,
    framing: comp.framing, // must match; the form shows the current value
    label: label ?? null,
  };
}

export function assertUnknotFromClick(doc: SessionDocument, componentId: string): MoveDoc {
  componentOf(doc, componentId);
  return { type: "assert_unknot", component: componentId };
}

export function endgameMove(): MoveDoc {
  return { type: "endgame" };
}
