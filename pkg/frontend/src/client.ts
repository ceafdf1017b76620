/** Fetch-based client for the kirbycalc session service.
 *
 * Every mutation returns the full refreshed SessionDocument; there is no
 * optimistic state anywhere, so whatever the caller renders is a
 * server-confirmed document.
 */

import type { MoveDoc, ServiceError, SessionDocument } from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly detail: ServiceError | null;

  constructor(status: number, detail: ServiceError | null) {
    super(detail?.message ?? `HTTP ${status}`);
    this.status = status;
    this.detail = detail;
  }

  get reason(): string | undefined {
    return this.detail?.reason;
  }
}

async function parseError(response: Response): Promise<never> {
  let detail: ServiceError | null = null;
  try {
    const body = (await response.json()) as { error?: ServiceError };
    detail = body.error ?? null;
  } catch {
    detail = null;
  }
  throw new ApiError(response.status, detail);
}

export class SessionClient {
  constructor(readonly baseUrl: string) {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    if (!response.ok) {
      await parseError(response);
    }
    return (await response.json()) as T;
  }

  createFromBraid(strands: number, word: string): Promise<SessionDocument> {
    return this.json("/sessions", {
      method: "POST",
      body: JSON.stringify({ braid: { strands, word } }),
    });
  }

  createFromScript(script: string): Promise<SessionDocument> {
    return this.json("/sessions", {
      method: "POST",
      body: JSON.stringify({ script }),
    });
  }

  createFromPieces(
    pieces: object[],
    counters: { b2: number; sigma: number } | null,
  ): Promise<SessionDocument> {
    return this.json("/sessions", {
      method: "POST",
      body: JSON.stringify(counters ? { pieces, counters } : { pieces }),
    });
  }

  get(sessionId: string): Promise<SessionDocument> {
    return this.json(`/sessions/${sessionId}`);
  }

  applyMove(sessionId: string, move: MoveDoc): Promise<SessionDocument> {
    return this.json(`/sessions/${sessionId}/moves`, {
      method: "POST",
      body: JSON.stringify(move),
    });
  }

  undo(sessionId: string): Promise<SessionDocument> {
    return this.json(`/sessions/${sessionId}/undo`, { method: "POST" });
  }

  async exportScript(sessionId: string): Promise<string> {
    const response = await fetch(`${this.baseUrl}/sessions/${sessionId}/export`);
    if (!response.ok) {
      await parseError(response);
    }
    return response.text();
  }
}
