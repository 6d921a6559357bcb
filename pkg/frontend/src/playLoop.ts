// The client game loop: poll versioned snapshots, submit local moves, and
// recover from conflicts and network loss by resyncing to the server state.
// The loop never mutates game state locally; every board it shows came from
// an acknowledged server snapshot.

import { GameApi } from "./api.js";
import { GameSnapshot } from "./schema.js";
import { SnapshotStore } from "./store.js";

export interface PlayLoopOptions {
  intervalMs?: number;
  onUpdate?: (snapshot: GameSnapshot) => void;
  onError?: (error: unknown) => void;
}

export class PlayLoop {
  readonly store = new SnapshotStore();
  private timer: ReturnType<typeof setInterval> | null = null;
  private readonly intervalMs: number;
  consecutiveErrors = 0;

  constructor(
    private readonly api: GameApi,
    private readonly gameId: string,
    readonly localPlayer: number,
    private readonly options: PlayLoopOptions = {},
  ) {
    this.intervalMs = options.intervalMs ?? 500;
  }

  async refresh(): Promise<GameSnapshot | null> {
    try {
      const snapshot = await this.api.getState(this.gameId);
      this.consecutiveErrors = 0;
      if (this.store.accept(snapshot)) {
        this.options.onUpdate?.(snapshot);
      }
      return this.store.current;
    } catch (err) {
      // network loss: keep polling, version cursor makes resync safe
      this.consecutiveErrors += 1;
      this.options.onError?.(err);
      return null;
    }
  }

  async submitMove(cell: number): Promise<"ok" | "conflict" | "rejected"> {
    const current = this.store.current;
    if (current === null) {
      return "rejected";
    }
    const result = await this.api.postMove(this.gameId, {
      player: this.localPlayer,
      cell,
      expected_version: current.version,
    });
    if (result.kind === "ok") {
      if (this.store.accept(result.state)) {
        this.options.onUpdate?.(result.state);
      }
      return "ok";
    }
    // on conflict the board caught someone else's move first: resync
    await this.refresh();
    return result.kind;
  }

  get finished(): boolean {
    const s = this.store.current;
    return s !== null && s.status !== "ongoing";
  }

  start(): void {
    if (this.timer === null) {
      this.timer = setInterval(() => {
        void this.refresh();
        if (this.finished) {
          this.stop();
        }
      }, this.intervalMs);
    }
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  /** Drive a whole game without timers: poll, move when it is our turn. */
  async runScripted(
    chooseCell: (snapshot: GameSnapshot) => number,
    maxSteps = 500,
  ): Promise<GameSnapshot> {
    for (let step = 0; step < maxSteps; step++) {
      const snapshot = await this.refresh();
      if (snapshot === null) {
        continue;
      }
      if (snapshot.status !== "ongoing") {
        return snapshot;
      }
      if (snapshot.turn === this.localPlayer) {
        await this.submitMove(chooseCell(snapshot));
      }
    }
    throw new Error(`game did not finish within ${maxSteps} steps`);
  }
}
