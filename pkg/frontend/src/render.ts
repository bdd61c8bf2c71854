// DOM rendering of a BoardView. Cells are buttons; the rhombus comes
// from shifting each row right by half a cell. White's sides are the
// left and right edges of the frame.

import type { BoardView } from "./view";

export interface CellHandler {
  (row: number, col: number): void;
}

export function renderBoard(
  root: HTMLElement,
  view: BoardView | null,
  onCell: CellHandler,
): void {
  root.replaceChildren();
  if (!view) return;
  const frame = document.createElement("div");
  frame.className = "frame";
  for (let r = 0; r < view.rows; r++) {
    const rowEl = document.createElement("div");
    rowEl.className = "row";
    rowEl.style.marginLeft = `${r * 1.45}em`;
    for (let c = 0; c < view.cols; c++) {
      const cell = view.cells[r * view.cols + c];
      if (!cell) continue;
      const btn = document.createElement("button");
      btn.type = "button";
      btn.className = "cell";
      btn.classList.add(
        cell.stone === "W" ? "white" : cell.stone === "B" ? "black" : "grey",
      );
      if (cell.onPath) btn.classList.add("path");
      btn.disabled = !cell.clickable;
      btn.dataset.row = String(cell.row);
      btn.dataset.col = String(cell.col);
      btn.setAttribute("aria-label", `tile ${cell.row},${cell.col}`);
      btn.addEventListener("click", () => onCell(cell.row, cell.col));
      rowEl.appendChild(btn);
    }
    frame.appendChild(rowEl);
  }
  root.appendChild(frame);
}

export function renderStatus(
  statusEl: HTMLElement,
  badgeEl: HTMLElement,
  errorEl: HTMLElement,
  view: BoardView | null,
  error: string | null,
): void {
  statusEl.textContent = view ? view.statusText : "No game yet";
  badgeEl.textContent = view?.badgeText ?? "";
  badgeEl.hidden = !view?.badgeText;
  errorEl.textContent = error ?? "";
}
