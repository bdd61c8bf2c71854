// Hand-made states and a scriptable API double for the unit tests.

import type {
  Analysis,
  GameApi,
  GameState,
  NewGameOptions,
} from "../src/api";

export function makeState(over: Partial<GameState> = {}): GameState {
  const rows = over.rows ?? 2;
  const cols = over.cols ?? 2;
  const grid =
    over.grid ?? Array.from({ length: rows }, () => ".".repeat(cols));
  return {
    id: "t1",
    rows,
    cols,
    engine: "exact",
    humanColor: "W",
    toMove: "W",
    status: "ongoing",
    winner: null,
    winningPath: null,
    grid,
    history: [],
    created: 0,
    ...over,
  };
}

type Deferred<T> = {
  promise: Promise<T>;
  resolve: (v: T) => void;
  reject: (e: unknown) => void;
};

export function deferred<T>(): Deferred<T> {
  let resolve!: (v: T) => void;
  let reject!: (e: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

export class FakeApi implements GameApi {
  calls: string[] = [];
  createResult: GameState | Promise<GameState> = makeState();
  moveResults: (GameState | Promise<GameState> | Error)[] = [];
  getResult: GameState | Promise<GameState> = makeState();
  analysisResult: Analysis | null = null;

  async createGame(_opts: NewGameOptions): Promise<GameState> {
    this.calls.push("create");
    return this.createResult;
  }

  async getGame(_id: string): Promise<GameState> {
    this.calls.push("get");
    return this.getResult;
  }

  async postMove(_id: string, row: number, col: number): Promise<GameState> {
    this.calls.push(`move ${row},${col}`);
    const next = this.moveResults.shift();
    if (next === undefined) throw new Error("unscripted move");
    if (next instanceof Error) throw next;
    return next;
  }

  async getAnalysis(_id: string): Promise<Analysis | null> {
    this.calls.push("analysis");
    return this.analysisResult;
  }

  moveCalls(): string[] {
    return this.calls.filter((c) => c.startsWith("move"));
  }
}
