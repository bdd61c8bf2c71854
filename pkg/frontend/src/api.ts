// Typed access to the game service. Every call resolves to the
// server's own representation of the session; nothing is computed
// client side.

export type Color = "W" | "B";

export interface MoveRecord {
  mover: Color;
  row: number;
  col: number;
}

export interface GameState {
  id: string;
  rows: number;
  cols: number;
  engine: string;
  humanColor: Color;
  toMove: Color;
  status: "ongoing" | "finished";
  winner: Color | null;
  winningPath: [number, number][] | null;
  grid: string[];
  history: MoveRecord[];
  created: number;
}

export interface Analysis {
  winnerWithOptimalPlay: Color;
  bestMove: [number, number] | null;
  nodes: number;
}

export interface NewGameOptions {
  rows: number;
  cols: number;
  engine?: string;
  humanColor?: string;
  seed?: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

// The store depends on this surface, not on the concrete class, so
// tests can script responses without touching the network.
export interface GameApi {
  createGame(opts: NewGameOptions): Promise<GameState>;
  getGame(id: string): Promise<GameState>;
  postMove(id: string, row: number, col: number): Promise<GameState>;
  getAnalysis(id: string): Promise<Analysis | null>;
}

export class Api implements GameApi {
  constructor(
    readonly base: string = "",
    readonly fetchLike: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<unknown> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const res = await this.fetchLike(this.base + path, init);
    const data: unknown = await res.json().catch(() => ({}));
    if (!res.ok) {
      const rec = data as { code?: string; message?: string };
      throw new ApiError(
        res.status,
        rec.code ?? "error",
        rec.message ?? `HTTP ${res.status}`,
      );
    }
    return data;
  }

  createGame(opts: NewGameOptions): Promise<GameState> {
    return this.request("POST", "/games", opts) as Promise<GameState>;
  }

  getGame(id: string): Promise<GameState> {
    return this.request("GET", `/games/${id}`) as Promise<GameState>;
  }

  postMove(id: string, row: number, col: number): Promise<GameState> {
    return this.request("POST", `/games/${id}/moves`, {
      row,
      col,
    }) as Promise<GameState>;
  }

  // The service answers 409 when the engine or board size rules
  // analysis out; that is an ordinary "no badge" outcome, not an error.
  async getAnalysis(id: string): Promise<Analysis | null> {
    try {
      return (await this.request("GET", `/games/${id}/analysis`)) as Analysis;
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) return null;
      throw err;
    }
  }
}
