// Pure projection of server state into what the page shows. Turn,
// winner, and path are read off the state verbatim; clickability is
// the one fact decided here (a grey tile, on the human's turn, with
// no request outstanding).

import type { Analysis, Color, GameState } from "./api";
import { GREY } from "./store";

export interface CellView {
  row: number;
  col: number;
  stone: Color | null;
  clickable: boolean;
  onPath: boolean;
}

export interface BoardView {
  rows: number;
  cols: number;
  cells: CellView[];
  statusText: string;
  badgeText: string | null;
}

const NAME: Record<Color, string> = { W: "White", B: "Black" };

export function buildView(
  state: GameState | null,
  analysis: Analysis | null,
  pending: boolean,
): BoardView | null {
  if (!state) return null;
  const live =
    state.status === "ongoing" && !pending && state.toMove === state.humanColor;
  const path = new Set(
    (state.winningPath ?? []).map(([r, c]) => `${r},${c}`),
  );
  const cells: CellView[] = [];
  for (let r = 0; r < state.rows; r++) {
    const rowStr = state.grid[r] ?? "";
    for (let c = 0; c < state.cols; c++) {
      const ch = rowStr[c] ?? GREY;
      cells.push({
        row: r,
        col: c,
        stone: ch === GREY ? null : (ch as Color),
        clickable: live && ch === GREY,
        onPath: path.has(`${r},${c}`),
      });
    }
  }
  let statusText: string;
  if (state.status === "finished" && state.winner) {
    statusText = `${NAME[state.winner]} wins`;
  } else if (pending) {
    statusText = "Waiting for the server";
  } else if (state.toMove === state.humanColor) {
    statusText = `${NAME[state.toMove]} to move (you)`;
  } else {
    statusText = `${NAME[state.toMove]} to move (engine)`;
  }
  const badgeText = analysis
    ? `${NAME[analysis.winnerWithOptimalPlay]} wins with optimal play`
    : null;
  return { rows: state.rows, cols: state.cols, cells, statusText, badgeText };
}
