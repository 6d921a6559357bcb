// Version cursor: the server is the single source of truth and snapshots
// only ever move forward.  A stale poll response (lower or equal version)
// is dropped so it can never overwrite a newer board.

import { GameSnapshot } from "./schema.js";

export class SnapshotStore {
  private snapshot: GameSnapshot | null = null;
  private listeners: Array<(s: GameSnapshot) => void> = [];
  readonly log: number[] = [];

  get current(): GameSnapshot | null {
    return this.snapshot;
  }

  get version(): number {
    return this.snapshot?.version ?? -1;
  }

  accept(snapshot: GameSnapshot): boolean {
    if (this.snapshot !== null && snapshot.version <= this.snapshot.version) {
      return false;
    }
    this.snapshot = snapshot;
    this.log.push(snapshot.version);
    for (const listener of this.listeners) {
      listener(snapshot);
    }
    return true;
  }

  subscribe(listener: (s: GameSnapshot) => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  versionsAreMonotone(): boolean {
    return this.log.every((v, i) => i === 0 || v > (this.log[i - 1] as number));
  }
}
