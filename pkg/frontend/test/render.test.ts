import { describe, expect, test } from "vitest";

import { renderBoard, renderStatus } from "../src/render";
import { buildView } from "../src/view";
import { makeState } from "./helpers";

describe("renderBoard", () => {
  test("one button per tile; only grey tiles are enabled", () => {
    const root = document.createElement("div");
    const view = buildView(
      makeState({ grid: ["W.", ".B"], toMove: "W", humanColor: "W" }),
      null,
      false,
    );
    renderBoard(root, view, () => {});
    const buttons = [...root.querySelectorAll("button.cell")];
    expect(buttons.length).toBe(4);
    const enabled = buttons
      .filter((b) => !(b as HTMLButtonElement).disabled)
      .map((b) => (b as HTMLElement).dataset.row + "," + (b as HTMLElement).dataset.col);
    expect(enabled).toEqual(["0,1", "1,0"]);
  });

  test("clicks report the tile's coordinates", () => {
    const root = document.createElement("div");
    const view = buildView(makeState(), null, false);
    const got: [number, number][] = [];
    renderBoard(root, view, (r, c) => got.push([r, c]));
    const btn = root.querySelector<HTMLButtonElement>(
      'button[data-row="1"][data-col="0"]',
    )!;
    btn.click();
    expect(got).toEqual([[1, 0]]);
  });

  test("path tiles are marked and a finished board is inert", () => {
    const root = document.createElement("div");
    const view = buildView(
      makeState({
        grid: ["WW", "BB"],
        status: "finished",
        winner: "W",
        winningPath: [
          [0, 0],
          [0, 1],
        ],
      }),
      null,
      false,
    );
    renderBoard(root, view, () => {});
    const marked = [...root.querySelectorAll("button.cell.path")].map(
      (b) => (b as HTMLElement).dataset.row + "," + (b as HTMLElement).dataset.col,
    );
    expect(marked).toEqual(["0,0", "0,1"]);
    expect(root.querySelectorAll("button.cell:enabled").length).toBe(0);
  });

  test("no view clears the board", () => {
    const root = document.createElement("div");
    renderBoard(root, buildView(makeState(), null, false), () => {});
    renderBoard(root, null, () => {});
    expect(root.children.length).toBe(0);
  });
});

describe("renderStatus", () => {
  test("status, badge, and error lines track the view", () => {
    const statusEl = document.createElement("div");
    const badgeEl = document.createElement("div");
    const errorEl = document.createElement("div");
    const view = buildView(
      makeState(),
      { winnerWithOptimalPlay: "W", bestMove: [0, 0], nodes: 1 },
      false,
    );
    renderStatus(statusEl, badgeEl, errorEl, view, null);
    expect(statusEl.textContent).toBe("White to move (you)");
    expect(badgeEl.textContent).toBe("White wins with optimal play");
    expect(badgeEl.hidden).toBe(false);

    renderStatus(statusEl, badgeEl, errorEl, null, "boom");
    expect(statusEl.textContent).toBe("No game yet");
    expect(badgeEl.hidden).toBe(true);
    expect(errorEl.textContent).toBe("boom");
  });
});
