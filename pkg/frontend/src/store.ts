// Client session state. The server is the single source of truth:
// every field is a verbatim server response, and the only judgment
// made locally is whether a click is worth a request at all. At most
// one request runs per session; a lost or conflicting reply is
// repaired by re-fetching the game, never by resubmitting the move.

import { ApiError } from "./api";
import type { Analysis, GameApi, GameState, NewGameOptions } from "./api";

export type StoreListener = () => void;

export const GREY = ".";

export class GameStore {
  state: GameState | null = null;
  analysis: Analysis | null = null;
  pending = false;
  lastError: string | null = null;

  private listeners: StoreListener[] = [];
  private tail: Promise<void> = Promise.resolve();

  constructor(readonly api: GameApi) {}

  subscribe(fn: StoreListener): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((f) => f !== fn);
    };
  }

  // Resolves when the store has gone quiet; what scripted drivers
  // await between interactions.
  idle(): Promise<void> {
    return this.tail;
  }

  private emit(): void {
    for (const fn of this.listeners) fn();
  }

  // One exchange with the in-flight guard held. Calls made while busy
  // are dropped, not queued: a second click must never become a
  // second request.
  private exchange(fn: () => Promise<void>): Promise<void> {
    if (this.pending) return this.tail;
    this.pending = true;
    this.emit();
    const run = fn()
      .catch((err: unknown) => {
        this.lastError = err instanceof Error ? err.message : String(err);
      })
      .then(() => {
        this.pending = false;
        this.emit();
      });
    this.tail = run;
    return run;
  }

  newGame(opts: NewGameOptions): Promise<void> {
    return this.exchange(async () => {
      this.lastError = null;
      this.state = await this.api.createGame(opts);
      await this.refreshAnalysis();
    });
  }

  clickCell(row: number, col: number): Promise<void> {
    const s = this.state;
    if (!s || this.pending) return this.tail;
    if (s.status !== "ongoing" || s.toMove !== s.humanColor) return this.tail;
    if ((s.grid[row] ?? "")[col] !== GREY) return this.tail;
    return this.exchange(async () => {
      try {
        this.state = await this.api.postMove(s.id, row, col);
        this.lastError = null;
      } catch (err) {
        // Validation failures are reported; anything else (a dropped
        // reply, a conflict the server already resolved) means the
        // server may have state we never saw, so fetch it.
        if (err instanceof ApiError && err.status === 400) throw err;
        this.state = await this.api.getGame(s.id);
      }
      await this.refreshAnalysis();
    });
  }

  resync(): Promise<void> {
    const s = this.state;
    if (!s) return this.tail;
    return this.exchange(async () => {
      this.state = await this.api.getGame(s.id);
      await this.refreshAnalysis();
    });
  }

  private async refreshAnalysis(): Promise<void> {
    const s = this.state;
    // Only the exact engine ever answers; for the others the server
    // would 409 on every move, so skip the round trip entirely.
    if (!s || s.engine !== "exact") {
      this.analysis = null;
      return;
    }
    this.analysis = await this.api.getAnalysis(s.id);
  }
}
