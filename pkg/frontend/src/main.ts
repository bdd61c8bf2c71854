// App wiring: a new-game form, the board, a status line, and the
// optimal-play badge. Everything shown is a render of the store,
// which in turn only ever holds server responses.

import "./style.css";
import { Api } from "./api";
import type { GameApi, NewGameOptions } from "./api";
import { GameStore } from "./store";
import { buildView } from "./view";
import { renderBoard, renderStatus } from "./render";

const PAGE = `
  <h1>hexatope</h1>
  <form class="controls">
    <label>rows <input id="rows" type="number" min="1" max="8" value="3" /></label>
    <label>cols <input id="cols" type="number" min="1" max="8" value="3" /></label>
    <label>engine
      <select id="engine">
        <option value="exact">exact</option>
        <option value="pairing">pairing</option>
        <option value="random">random</option>
      </select>
    </label>
    <label>you play
      <select id="color">
        <option value="White">White</option>
        <option value="Black">Black</option>
      </select>
    </label>
    <label>seed <input id="seed" type="number" placeholder="any" /></label>
    <button id="new-game" type="button">New game</button>
    <button id="resync" type="button">Resync</button>
  </form>
  <div class="board"></div>
  <div class="status"></div>
  <div class="badge" hidden></div>
  <div class="error"></div>
`;

export interface App {
  store: GameStore;
}

export function createApp(root: HTMLElement, api: GameApi): App {
  root.innerHTML = PAGE;
  const store = new GameStore(api);
  const boardEl = root.querySelector<HTMLElement>(".board")!;
  const statusEl = root.querySelector<HTMLElement>(".status")!;
  const badgeEl = root.querySelector<HTMLElement>(".badge")!;
  const errorEl = root.querySelector<HTMLElement>(".error")!;

  const redraw = () => {
    const view = buildView(store.state, store.analysis, store.pending);
    renderBoard(boardEl, view, (row, col) => {
      void store.clickCell(row, col);
    });
    renderStatus(statusEl, badgeEl, errorEl, view, store.lastError);
  };
  store.subscribe(redraw);

  const field = <T extends HTMLElement>(sel: string) =>
    root.querySelector<T>(sel)!;
  const readOptions = (): NewGameOptions => {
    const opts: NewGameOptions = {
      rows: Number(field<HTMLInputElement>("#rows").value),
      cols: Number(field<HTMLInputElement>("#cols").value),
      engine: field<HTMLSelectElement>("#engine").value,
      humanColor: field<HTMLSelectElement>("#color").value,
    };
    const seed = field<HTMLInputElement>("#seed").value;
    if (seed !== "") opts.seed = Number(seed);
    return opts;
  };
  field<HTMLButtonElement>("#new-game").addEventListener("click", () => {
    void store.newGame(readOptions());
  });
  field<HTMLButtonElement>("#resync").addEventListener("click", () => {
    void store.resync();
  });
  root.querySelector("form")!.addEventListener("submit", (ev) => {
    ev.preventDefault();
    void store.newGame(readOptions());
  });

  redraw();
  return { store };
}

// Boot only on a real page; tests build their own roots.
if (typeof document !== "undefined") {
  const mount = document.getElementById("app");
  if (mount) {
    createApp(mount, new Api(""));
  }
}
