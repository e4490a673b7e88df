// Typed client for the play service. Wire shapes mirror API.md exactly;
// moves are passed through verbatim so the client can never submit
// anything the server did not offer.

export type Variant = "nim" | "subtraction" | "gadget" | "explicit";
export type Mover = "human" | "engine";
export type Status = "in_progress" | "human_won" | "human_lost";

export type PileMove = { pile: number; take: number };
export type GadgetMove =
  | { family: "O1"; pile: number; l_take: number }
  | { family: "O2" };
export type ExplicitMove = { elements: string[] };
export type WireMove = PileMove | GadgetMove | ExplicitMove;

export type PileState = { piles: number[] };
export type GadgetState = {
  v: number;
  w: number;
  l: number;
  piles_present: number[];
  weights: number[];
  target: number;
};
export type ExplicitState = { position: string[]; elements: string[] };
export type WireState = PileState | GadgetState | ExplicitState;

export interface HistoryEntry {
  by: Mover;
  move: WireMove;
}

export interface SessionView {
  id: string;
  variant: Variant;
  status: Status;
  to_move: Mover;
  first_mover: Mover;
  truth_start: 0 | 1;
  state: WireState;
  legal_moves: WireMove[];
  history: HistoryEntry[];
  engine_reply?: WireMove | null;
}

export interface CreateSessionRequest {
  variant: Variant;
  piles?: number[];
  weights?: number[];
  target?: number;
  game?: unknown;
  first?: Mover;
}

export class ApiError extends Error {
  readonly status: number;
  readonly clause: string | null;

  constructor(status: number, message: string, clause: string | null = null) {
    super(message);
    this.status = status;
    this.clause = clause;
  }
}

type FetchLike = typeof fetch;

export class Client {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn: FetchLike = fetch) {
    this.base = baseUrl.replace(/\/+$/, "");
    this.fetchFn = fetchFn;
  }

  async createSession(request: CreateSessionRequest): Promise<SessionView> {
    return this.call("POST", "/sessions", request);
  }

  async getSession(id: string): Promise<SessionView> {
    return this.call("GET", `/sessions/${id}`);
  }

  async submitMove(id: string, move: WireMove): Promise<SessionView> {
    return this.call("POST", `/sessions/${id}/moves`, move);
  }

  async deleteSession(id: string): Promise<void> {
    await this.call("DELETE", `/sessions/${id}`);
  }

  private async call(method: string, path: string, body?: unknown): Promise<SessionView> {
    const response = await this.fetchFn(this.base + path, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    const payload = text ? JSON.parse(text) : null;
    if (!response.ok) {
      throw toApiError(response.status, payload);
    }
    return payload as SessionView;
  }
}

function toApiError(status: number, payload: unknown): ApiError {
  if (payload && typeof payload === "object" && "detail" in payload) {
    const detail = (payload as { detail: unknown }).detail;
    if (detail && typeof detail === "object" && "clause" in detail) {
      const d = detail as { clause: string; message?: string };
      return new ApiError(status, d.message ?? "inadmissible move", d.clause);
    }
    if (typeof detail === "string") {
      return new ApiError(status, detail);
    }
  }
  return new ApiError(status, `request failed with status ${status}`);
}
