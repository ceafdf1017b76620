/** Fixed-grid SVG rendering of the session: braid strand diagrams per
 * live piece, abstract components as labeled nodes with linking edges,
 * framing labels, characteristic components drawn darker, stale pieces
 * hatched.  Pure string generation; no DOM, no topology computation (the
 * braid word is drawn letter by letter exactly as the document sent it).
 */

import type { ComponentView, SessionView } from "./viewmodel.js";

const CELL = 28; // letter column width
const LANE = 26; // strand lane height
const PAD = 34;

const CHAR_COLOR = "#1a1a1a"; // characteristic: darker curves
const PLAIN_COLOR = "#8a8a8a";
const STALE_COLOR = "#b0522d";

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function tag(name: string, attrs: Record<string, string | number>, body = ""): string {
  const rendered = Object.entries(attrs)
    .map(([k, v]) => `${k}="${esc(String(v))}"`)
    .join(" ");
  return body === ""
    ? `<${name} ${rendered}/>`
    : `<${name} ${rendered}>${body}</${name}>`;
}

interface Letter {
  index: number;
  sign: number;
}

/** Parse the flat letter tokens the service emits (s3 or s3^-1). */
export function lettersOf(word: string): Letter[] {
  if (word.trim() === "") return [];
  return word
    .trim()
    .split(/\s+/)
    .map((token) => {
      const m = /^s(\d+)(\^-1)?$/.exec(token);
      if (!m || m[1] === undefined) {
        throw new Error(`unrenderable braid token: ${token}`);
      }
      return { index: Number(m[1]), sign: m[2] ? -1 : 1 };
    });
}

function laneY(position: number): number {
  return PAD + (position - 1) * LANE;
}

/** One braid piece on a fixed grid: strand lanes x letter columns. */
export function renderBraidPiece(view: ComponentView): string {
  const word = view.word ?? "";
  const strands = view.strands ?? 1;
  const letters = lettersOf(word);
  const width = PAD * 2 + Math.max(letters.length, 1) * CELL;
  const color = view.characteristic ? CHAR_COLOR : PLAIN_COLOR;
  const strokeWidth = view.characteristic ? 2.4 : 1.4;
  const parts: string[] = [];

  // horizontal lane segments between crossings
  for (let s = 1; s <= strands; s++) {
    let x = PAD;
    const y = laneY(s);
    const segments: string[] = [];
    letters.forEach((letter, column) => {
      const cx = PAD + column * CELL;
      if (letter.index === s || letter.index === s - 1) {
        segments.push(tag("line", { x1: x, y1: y, x2: cx, y2: y, stroke: color, "stroke-width": strokeWidth }));
        x = cx + CELL;
      }
    });
    segments.push(
      tag("line", { x1: x, y1: y, x2: width - PAD, y2: y, stroke: color, "stroke-width": strokeWidth }),
    );
    parts.push(...segments);
  }

  // crossing glyphs: the strand in lane i crosses lane i+1; the sign
  // decides which arc is broken (drawn under)
  letters.forEach((letter, column) => {
    const x0 = PAD + column * CELL;
    const x1 = x0 + CELL;
    const yTop = laneY(letter.index);
    const yBot = laneY(letter.index + 1);
    const over = tag("line", {
      x1: x0, y1: letter.sign > 0 ? yTop : yBot,
      x2: x1, y2: letter.sign > 0 ? yBot : yTop,
      stroke: color, "stroke-width": strokeWidth,
    });
    const gap = 6;
    const mx = (x0 + x1) / 2;
    const my = (yTop + yBot) / 2;
    const underFrom = letter.sign > 0 ? yBot : yTop;
    const underTo = letter.sign > 0 ? yTop : yBot;
    const dirX = (x1 - x0) / Math.hypot(x1 - x0, underTo - underFrom);
    const dirY = (underTo - underFrom) / Math.hypot(x1 - x0, underTo - underFrom);
    const under1 = tag("line", {
      x1: x0, y1: underFrom, x2: mx - gap * dirX, y2: my - gap * dirY,
      stroke: color, "stroke-width": strokeWidth,
    });
    const under2 = tag("line", {
      x1: mx + gap * dirX, y1: my + gap * dirY, x2: x1, y2: underTo,
      stroke: color, "stroke-width": strokeWidth,
    });
    parts.push(over, under1, under2);
  });

  // framing label, straight from the document
  parts.push(
    tag(
      "text",
      { x: width - PAD + 6, y: laneY(1), "font-size": 12, fill: color, class: "framing-label" },
      esc(`${view.id} (${view.framing})`),
    ),
  );

  if (view.stale) {
    parts.push(
      tag("rect", {
        x: PAD / 2, y: PAD / 2,
        width: width - PAD, height: (strands - 1) * LANE + PAD,
        fill: "url(#stale-hatch)", stroke: STALE_COLOR, "stroke-dasharray": "6 3",
        class: "stale-overlay",
      }),
      tag(
        "text",
        { x: PAD / 2, y: PAD / 2 - 4, "font-size": 11, fill: STALE_COLOR, class: "stale-badge" },
        "stale: replace required",
      ),
    );
  }

  const height = PAD * 2 + (strands - 1) * LANE;
  return tag(
    "svg",
    { viewBox: `0 0 ${width} ${height}`, width, height, class: `piece-${view.id}` },
    hatchDefs() + parts.join(""),
  );
}

function hatchDefs(): string {
  const line = tag("line", { x1: 0, y1: 0, x2: 0, y2: 8, stroke: STALE_COLOR, "stroke-width": 1 });
  const pattern = tag(
    "pattern",
    { id: "stale-hatch", width: 8, height: 8, patternTransform: "rotate(45)", patternUnits: "userSpaceOnUse" },
    line,
  );
  return tag("defs", {}, pattern);
}

/** Abstract components (blow-up circles etc.): labeled nodes with linking edges. */
export function renderAbstractComponents(components: ComponentView[]): string {
  const abstract = components.filter((c) => c.abstract);
  if (abstract.length === 0) return "";
  const radius = 16;
  const gap = 96;
  const width = PAD * 2 + Math.max(abstract.length - 1, 0) * gap + radius * 2;
  const cy = PAD + radius;
  const pos = new Map<string, number>();
  abstract.forEach((c, i) => pos.set(c.id, PAD + radius + i * gap));
  const parts: string[] = [];
  for (const comp of abstract) {
    const cx = pos.get(comp.id) ?? PAD;
    for (const edge of comp.linking) {
      const ox = pos.get(edge.other);
      if (ox === undefined || ox <= cx) continue; // draw each edge once
      const midX = (cx + ox) / 2;
      parts.push(
        tag("path", {
          d: `M ${cx} ${cy} Q ${midX} ${cy + 34} ${ox} ${cy}`,
          fill: "none", stroke: "#666", "stroke-width": 1.2, class: "linking-edge",
        }),
        tag(
          "text",
          { x: midX, y: cy + 28, "font-size": 10, fill: "#666", "text-anchor": "middle" },
          esc(`lk ${edge.value}`),
        ),
      );
    }
  }
  for (const comp of abstract) {
    const cx = pos.get(comp.id) ?? PAD;
    const color = comp.characteristic ? CHAR_COLOR : PLAIN_COLOR;
    parts.push(
      tag("circle", {
        cx, cy, r: radius, fill: "none", stroke: color,
        "stroke-width": comp.characteristic ? 2.6 : 1.4, class: `node-${comp.id}`,
      }),
      tag(
        "text",
        { x: cx, y: cy + 4, "font-size": 11, "text-anchor": "middle", fill: color },
        esc(comp.id),
      ),
      tag(
        "text",
        { x: cx, y: cy + radius + 14, "font-size": 11, "text-anchor": "middle", fill: color, class: "framing-label" },
        esc(String(comp.framing)),
      ),
    );
  }
  return tag("svg", { viewBox: `0 0 ${width} ${cy + radius + 44}`, width, height: cy + radius + 44, class: "abstract-components" }, parts.join(""));
}

/** Counters panel; the margin arrives precomputed on the document. */
export function renderCounters(view: SessionView): string {
  const tone = { bad: "#b02020", boundary: "#a1720a", ok: "#256d2b" }[view.counters.marginTone];
  const banner =
    view.report !== null
      ? `${view.report.headline} -> ${view.report.verdict}`
      : view.spin
        ? "spin (empty characteristic link)"
        : "characteristic link nonempty";
  return [
    `<div class="counters">`,
    `<span class="b2">b2=${view.counters.b2}</span>`,
    `<span class="sigma">sigma=${view.counters.sigma}</span>`,
    `<span class="margin" style="color:${tone}">margin=${view.counters.margin}</span>`,
    `<span class="mode">[${esc(view.counters.mode)}]</span>`,
    `<div class="banner">${esc(banner)}</div>`,
    `</div>`,
  ].join("");
}

export function renderState(view: SessionView): string {
  const pieces = view.components
    .filter((c) => !c.abstract)
    .map((c) => renderBraidPiece(c))
    .join("");
  return [
    renderCounters(view),
    `<div class="pieces">${pieces}</div>`,
    `<div class="abstract">${renderAbstractComponents(view.components)}</div>`,
  ].join("");
}
