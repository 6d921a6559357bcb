// Browser entry point: create or join a game, then hand off to the loop.

import { GameApi } from "./api.js";
import { PlayLoop } from "./playLoop.js";
import { render } from "./render.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function start(): void {
  const board = el<HTMLDivElement>("board");
  const form = el<HTMLFormElement>("setup");
  const gameIdInput = el<HTMLInputElement>("game-id");
  const api = new GameApi("");
  let loop: PlayLoop | null = null;

  async function join(gameId: string, player: number): Promise<void> {
    loop?.stop();
    loop = new PlayLoop(api, gameId, player, {
      onUpdate: (snapshot) =>
        render(board, snapshot, {
          localPlayer: player,
          onCellClick: (cell) => void loop?.submitMove(cell),
        }),
      onError: () => board.classList.add("reconnecting"),
    });
    gameIdInput.value = gameId;
    await loop.refresh();
    loop.start();
  }

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void (async () => {
      const builder = el<HTMLSelectElement>("builder").value;
      const sites = el<HTMLInputElement>("sites").value;
      const seed = el<HTMLInputElement>("seed").value;
      const existing = gameIdInput.value.trim();
      if (existing) {
        await join(existing, 1);
        return;
      }
      const gameId = await api.createGame({
        board: { builder },
        sites: `random:${sites}:${seed}`,
        players: ["human", "bot:uniform-random"],
      });
      await join(gameId, 1);
    })().catch((err) => {
      board.innerHTML = "";
      const banner = document.createElement("div");
      banner.className = "error-banner";
      banner.textContent = String(err);
      board.appendChild(banner);
    });
  });
}

if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", start);
}
