/** Hand-built SessionDocuments, schema-exact, for unit tests. */

import type { SessionDocument } from "../src/types.js";

export function torusDocument(): SessionDocument {
  return {
    id: "fixture-torus",
    setup: { kind: "knot", strands: 3, word: "s1 s2 s1 s2", pieces: [], counters: null },
    state: {
      mode: "full",
      b2: 1,
      sigma: 0,
      margin: -12,
      components: [
        {
          id: "K",
          framing: 0,
          characteristic: true,
          unknot: "unknown",
          origin: "initial_knot",
          round: false,
        },
      ],
      linking: [0],
      pieces: [
        { id: "K", strands: 3, word: "s1 s2 s1 s2", component: "K", stale: false },
      ],
      trust_points: [],
      warnings: [],
      circle_counter: 0,
      report: null,
    },
    history: [],
    links: {},
  };
}

export function blownUpDocument(): SessionDocument {
  const size = 2;
  const linking = [
    [-9, 3],
    [3, -1],
  ].flat();
  return {
    id: "fixture-blownup",
    setup: { kind: "knot", strands: 3, word: "s1 s2 s1 s2", pieces: [], counters: null },
    state: {
      mode: "full",
      b2: 2,
      sigma: -1,
      margin: 4 * 2 - 5 * 1 - 12,
      components: [
        {
          id: "K",
          framing: -9,
          characteristic: true,
          unknot: "unknown",
          origin: "initial_knot",
          round: false,
        },
        {
          id: "c1",
          framing: -1,
          characteristic: false,
          unknot: "verified",
          origin: "blowup_circle",
          round: true,
        },
      ],
      linking,
      pieces: [
        {
          id: "K",
          strands: 3,
          word: "s1 s2 s1 s2 s2^-1 s1^-1 s2^-1 s1^-1",
          component: "K",
          stale: false,
        },
      ],
      trust_points: [],
      warnings: [],
      circle_counter: 1,
      report: null,
    },
    history: [
      {
        move: { type: "blowup_coherent", sign: -1, strands: [1, 3], piece: "K", at: "end" },
        pre_digest: "abc",
        delta_b2: 1,
        delta_sigma: -1,
      },
    ],
    links: {},
  };
}

export function finishedDocument(): SessionDocument {
  const doc = blownUpDocument();
  doc.id = "fixture-finished";
  doc.state.report = {
    b2: 11,
    sigma: 8,
    margin: -8,
    verdict: "not_smoothly_slice",
    spin_structure: "s1",
    trust_points: [],
    arf_consistency: "unchecked",
    warnings: [],
  };
  doc.state.components = [];
  doc.state.linking = [];
  doc.state.pieces = [];
  doc.state.b2 = 11;
  doc.state.sigma = 8;
  doc.state.margin = -8;
  doc.history.push({
    move: { type: "endgame" },
    pre_digest: "def",
    delta_b2: 9,
    delta_sigma: 9,
  });
  return doc;
}

export function staleDocument(): SessionDocument {
  const doc = torusDocument();
  doc.id = "fixture-stale";
  const piece = doc.state.pieces[0];
  if (piece) piece.stale = true;
  doc.state.components.push({
    id: "c1",
    framing: -1,
    characteristic: true,
    unknot: "verified",
    origin: "blowup_circle",
    round: true,
  });
  doc.state.linking = [0, 0, 0, -1];
  doc.state.b2 = 2;
  doc.state.sigma = -1;
  doc.state.margin = 4 * 2 - 5 * 1 - 12;
  return doc;
}
