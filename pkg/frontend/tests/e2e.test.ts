// @vitest-environment happy-dom
//
// End-to-end: spawn the real game service, play a scripted human-vs-bot
// hexagon game through the HTTP protocol with the client loop, and check
// that the final client state hash equals the server state hash and that
// the winning component is highlighted in the rendered board.

import { ChildProcess, spawn } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { GameApi } from "../src/api.js";
import { PlayLoop } from "../src/playLoop.js";
import { render } from "../src/render.js";
import { stableHash } from "../src/schema.js";

const PORT = 8731 + (process.pid % 200);
const BASE = `http://127.0.0.1:${PORT}`;
let server: ChildProcess;

async function waitForServer(timeoutMs = 30_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/games/warmup-probe`);
      if (response.status === 404) {
        return;
      }
    } catch {
      // not listening yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error("game service did not come up");
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "chromatope.cli", "hex", "serve", "--port", String(PORT)],
    { cwd: "..", stdio: "ignore" },
  );
  await waitForServer();
}, 40_000);

afterAll(() => {
  server?.kill();
});

describe("human vs bot over HTTP", () => {
  it("completes a hexagon game with matching state hashes", async () => {
    const api = new GameApi(BASE, fetch);
    const gameId = await api.createGame({
      board: { builder: "polygon:6" },
      sites: "random:14:99",
      players: ["human", "bot:uniform-random"],
    });

    const loop = new PlayLoop(api, gameId, 1, { intervalMs: 50 });
    const final = await loop.runScripted((snapshot) => {
      const free = snapshot.cells.filter((c) => c.owner === null);
      return free[0]!.id;
    });

    expect(final.status).toBe("won");
    expect(final.winner === 1 || final.winner === 2).toBe(true);
    expect(final.winning_component.length).toBeGreaterThan(0);
    expect(loop.store.versionsAreMonotone()).toBe(true);

    // single source of truth: the client's last acknowledged state is the
    // server's state, byte for byte under the canonical hash
    const serverState = await api.getState(gameId);
    expect(stableHash(loop.store.current)).toBe(stableHash(serverState));

    // the rendered board highlights exactly the winning component
    document.body.innerHTML = "<div id='board'></div>";
    const board = document.getElementById("board") as HTMLElement;
    render(board, final, { localPlayer: 1 });
    const highlighted = board.querySelectorAll(".cell.winning");
    expect(highlighted.length).toBe(final.winning_component.length);
    expect(board.querySelector(".status-bar.won")).toBeTruthy();
  }, 60_000);

  it("version conflicts resync instead of overwriting", async () => {
    const api = new GameApi(BASE, fetch);
    const gameId = await api.createGame({
      board: { builder: "polygon:6" },
      sites: "random:10:5",
      players: ["human", "human"],
    });
    const loop = new PlayLoop(api, gameId, 1, { intervalMs: 50 });
    await loop.refresh();

    // player 2 is driven out-of-band; our cursor is now stale
    const before = loop.store.current!;
    const moveResult = await api.postMove(gameId, {
      player: 1,
      cell: before.cells.find((c) => c.owner === null)!.id,
      expected_version: before.version,
    });
    expect(moveResult.kind).toBe("ok");

    // the loop's submit with the stale version conflicts, then resyncs
    const result = await loop.submitMove(0);
    expect(["conflict", "rejected"]).toContain(result);
    expect(loop.store.version).toBeGreaterThan(before.version);
    expect(loop.store.versionsAreMonotone()).toBe(true);
  }, 30_000);

  it("two clients converge to the same final state hash", async () => {
    const api = new GameApi(BASE, fetch);
    const gameId = await api.createGame({
      board: { builder: "polygon:6" },
      sites: "random:12:7",
      players: ["human", "human"],
    });
    const one = new PlayLoop(api, gameId, 1, { intervalMs: 50 });
    const two = new PlayLoop(api, gameId, 2, { intervalMs: 50 });

    const first = (snapshot: { cells: { id: number; owner: number | null }[] }) =>
      snapshot.cells.find((c) => c.owner === null)!.id;

    // interleave both clients manually until someone wins
    for (let step = 0; step < 200; step++) {
      const a = await one.refresh();
      if (a && a.status !== "ongoing") {
        break;
      }
      if (a && a.turn === 1) {
        await one.submitMove(first(a));
      }
      const b = await two.refresh();
      if (b && b.status !== "ongoing") {
        break;
      }
      if (b && b.turn === 2) {
        await two.submitMove(first(b));
      }
    }
    await one.refresh();
    await two.refresh();
    expect(one.store.current?.status).toBe("won");
    expect(stableHash(one.store.current)).toBe(stableHash(two.store.current));
  }, 30_000);
});
