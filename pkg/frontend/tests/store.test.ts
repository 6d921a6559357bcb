import { describe, expect, it } from "vitest";

import { SnapshotStore } from "../src/store.js";
import { snapshotFixture } from "./fixtures.js";

function at(version: number) {
  const snap = snapshotFixture();
  snap.version = version;
  return snap;
}

describe("SnapshotStore", () => {
  it("accepts strictly increasing versions", () => {
    const store = new SnapshotStore();
    expect(store.accept(at(0))).toBe(true);
    expect(store.accept(at(2))).toBe(true);
    expect(store.version).toBe(2);
  });

  it("drops stale and duplicate versions", () => {
    const store = new SnapshotStore();
    store.accept(at(4));
    expect(store.accept(at(4))).toBe(false);
    expect(store.accept(at(3))).toBe(false);
    expect(store.version).toBe(4);
    expect(store.versionsAreMonotone()).toBe(true);
  });

  it("notifies subscribers only on accepted snapshots", () => {
    const store = new SnapshotStore();
    const seen: number[] = [];
    store.subscribe((s) => seen.push(s.version));
    store.accept(at(1));
    store.accept(at(0));
    store.accept(at(5));
    expect(seen).toEqual([1, 5]);
  });

  it("unsubscribe works", () => {
    const store = new SnapshotStore();
    const seen: number[] = [];
    const off = store.subscribe((s) => seen.push(s.version));
    store.accept(at(1));
    off();
    store.accept(at(2));
    expect(seen).toEqual([1]);
  });
});
