/** Browser bootstrap: one session per tab, server-confirmed documents
 * only.  This module is the only one that touches the DOM; everything it
 * displays comes out of viewmodel/diagram untouched.
 */

import { ApiError, SessionClient } from "./client.js";
import { renderState } from "./diagram.js";
import {
  assertUnknotFromClick,
  blowdownFromClick,
  coherentBlowupFromDrag,
  declaredBlowupFromForm,
  endgameMove,
  meridianFromClick,
  MoveRejected,
  slideFromForm,
} from "./palette.js";
import type { MoveDoc, SessionDocument } from "./types.js";
import { sessionView } from "./viewmodel.js";

interface AppState {
  client: SessionClient;
  doc: SessionDocument | null;
}

const state: AppState = {
  client: new SessionClient(""),
  doc: null,
};

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function showError(message: string): void {
  byId("error").textContent = message;
}

function render(): void {
  const doc = state.doc;
  if (!doc) return;
  const view = sessionView(doc);
  byId("diagram").innerHTML = renderState(view);
  const history = byId("history");
  history.innerHTML = view.history
    .map(
      (item) =>
        `<li>${item.label} <small>(db2 ${item.deltaB2}, dsigma ${item.deltaSigma})</small></li>`,
    )
    .join("");
  (byId("undo") as HTMLButtonElement).disabled = !view.undoAvailable;
  byId("error").textContent = "";
}

async function refresh(action: () => Promise<SessionDocument>): Promise<void> {
  try {
    state.doc = await action();
    render();
  } catch (err) {
    if (err instanceof ApiError || err instanceof MoveRejected) {
      showError(`${(err as { reason?: string }).reason ?? "error"}: ${err.message}`);
    } else {
      showError(String(err));
    }
  }
}

function post(move: MoveDoc): Promise<SessionDocument> {
  const doc = state.doc;
  if (!doc) throw new Error("no active session");
  return state.client.applyMove(doc.id, move);
}

export function wireUp(): void {
  state.client = new SessionClient("");

  byId<HTMLFormElement>("create-form").addEventListener("submit", (event) => {
    event.preventDefault();
    const strands = Number(byId<HTMLInputElement>("create-strands").value);
    const word = byId<HTMLInputElement>("create-word").value;
    void refresh(() => state.client.createFromBraid(strands, word));
  });

  byId<HTMLFormElement>("blowup-form").addEventListener("submit", (event) => {
    event.preventDefault();
    const doc = state.doc;
    if (!doc) return;
    try {
      const move = coherentBlowupFromDrag(doc, {
        pieceId: byId<HTMLInputElement>("blowup-piece").value,
        lo: Number(byId<HTMLInputElement>("blowup-lo").value),
        hi: Number(byId<HTMLInputElement>("blowup-hi").value),
        sign: byId<HTMLSelectElement>("blowup-sign").value === "+" ? 1 : -1,
      });
      void refresh(() => post(move));
    } catch (err) {
      if (err instanceof MoveRejected) showError(`${err.reason}: ${err.message}`);
    }
  });

  byId<HTMLFormElement>("declared-form").addEventListener("submit", (event) => {
    event.preventDefault();
    const doc = state.doc;
    if (!doc) return;
    try {
      const entries: Record<string, number> = {};
      for (const part of byId<HTMLInputElement>("declared-linking").value.split(",")) {
        if (!part.trim()) continue;
        const [id, value] = part.split(":");
        entries[(id ?? "").trim()] = Number((value ?? "0").trim());
      }
      const sign = byId<HTMLSelectElement>("declared-sign").value === "+" ? 1 : -1;
      void refresh(() => post(declaredBlowupFromForm(doc, sign, entries)));
    } catch (err) {
      if (err instanceof MoveRejected) showError(`${err.reason}: ${err.message}`);
    }
  });

  byId<HTMLFormElement>("slide-form").addEventListener("submit", (event) => {
    event.preventDefault();
    const doc = state.doc;
    if (!doc) return;
    try {
      const move = slideFromForm(
        doc,
        byId<HTMLInputElement>("slide-moving").value,
        byId<HTMLInputElement>("slide-over").value,
        byId<HTMLSelectElement>("slide-sign").value === "+" ? 1 : -1,
      );
      void refresh(() => post(move));
    } catch (err) {
      if (err instanceof MoveRejected) showError(`${err.reason}: ${err.message}`);
    }
  });

  byId<HTMLFormElement>("component-form").addEventListener("submit", (event) => {
    event.preventDefault();
    const doc = state.doc;
    if (!doc) return;
    const target = byId<HTMLInputElement>("component-id").value;
    const tool = byId<HTMLSelectElement>("component-tool").value;
    try {
      let move: MoveDoc;
      if (tool === "meridian+") move = meridianFromClick(doc, target, 1);
      else if (tool === "meridian-") move = meridianFromClick(doc, target, -1);
      else if (tool === "blowdown") move = blowdownFromClick(doc, target);
      else move = assertUnknotFromClick(doc, target);
      void refresh(() => post(move));
    } catch (err) {
      if (err instanceof MoveRejected) showError(`${err.reason}: ${err.message}`);
    }
  });

  byId<HTMLButtonElement>("endgame").addEventListener("click", () => {
    void refresh(() => post(endgameMove()));
  });

  byId<HTMLButtonElement>("undo").addEventListener("click", () => {
    const doc = state.doc;
    if (!doc) return;
    void refresh(() => state.client.undo(doc.id));
  });

  byId<HTMLButtonElement>("export").addEventListener("click", () => {
    const doc = state.doc;
    if (!doc) return;
    state.client
      .exportScript(doc.id)
      .then((text) => {
        const blob = new Blob([text], { type: "text/plain" });
        const anchor = document.createElement("a");
        anchor.href = URL.createObjectURL(blob);
        anchor.download = `${doc.id}.kmove`;
        anchor.click();
        URL.revokeObjectURL(anchor.href);
      })
      .catch((err) => showError(`export failed, retry: ${err}`));
  });
}

if (typeof document !== "undefined" && document.getElementById("create-form")) {
  wireUp();
}
