// @vitest-environment happy-dom
import { beforeEach, describe, expect, it } from "vitest";

import { render } from "../src/render.js";
import { snapshotFixture, wonFixture } from "./fixtures.js";

let container: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = "<div id='board'></div>";
  container = document.getElementById("board") as HTMLElement;
});

describe("render 2D", () => {
  it("draws one polygon per cell", () => {
    render(container, snapshotFixture(), { localPlayer: 1 });
    const polys = container.querySelectorAll("polygon.cell");
    expect(polys.length).toBe(3);
    const ids = [...polys].map((p) => p.getAttribute("data-cell-id"));
    expect(ids.sort()).toEqual(["0", "1", "2"]);
  });

  it("unclaimed cells are clickable only on the local player's turn", () => {
    render(container, snapshotFixture(), { localPlayer: 1 });
    expect(container.querySelectorAll(".cell.clickable").length).toBe(2);

    render(container, snapshotFixture(), { localPlayer: 2 });
    expect(container.querySelectorAll(".cell.clickable").length).toBe(0);
  });

  it("claimed cells are never clickable and carry the owner class", () => {
    render(container, snapshotFixture(), { localPlayer: 1 });
    const owned = container.querySelector("[data-cell-id='1']");
    expect(owned?.classList.contains("owned")).toBe(true);
    expect(owned?.classList.contains("clickable")).toBe(false);
  });

  it("click targets map to exactly one cell id", () => {
    const clicks: number[] = [];
    render(container, snapshotFixture(), {
      localPlayer: 1,
      onCellClick: (cell) => clicks.push(cell),
    });
    const target = container.querySelector(
      "[data-cell-id='2']",
    ) as unknown as SVGElement;
    target.dispatchEvent(new Event("click"));
    expect(clicks).toEqual([2]);
  });

  it("highlights the winning component and disables input", () => {
    render(container, wonFixture(), { localPlayer: 1 });
    const winning = container.querySelectorAll(".cell.winning");
    expect(winning.length).toBe(2);
    expect(container.querySelectorAll(".cell.clickable").length).toBe(0);
    const bar = container.querySelector(".status-bar");
    expect(bar?.textContent).toContain("player 1 wins");
  });

  it("shows the target legend", () => {
    render(container, snapshotFixture(), { localPlayer: 1 });
    const rows = container.querySelectorAll(".target-row");
    expect(rows.length).toBe(2);
    expect(rows[0]?.textContent).toContain("player 1");
  });
});

describe("render failures", () => {
  it("bad payload yields an error banner and no board", () => {
    render(container, { nonsense: true }, { localPlayer: 1 });
    expect(container.querySelectorAll(".error-banner").length).toBe(1);
    expect(container.querySelectorAll(".cell").length).toBe(0);
  });

  it("re-render replaces the previous board", () => {
    render(container, snapshotFixture(), { localPlayer: 1 });
    render(container, wonFixture(), { localPlayer: 1 });
    expect(container.querySelectorAll("svg.board-2d").length).toBe(1);
  });
});

describe("render 3D", () => {
  it("renders an exploded tile per cell with facet badges", () => {
    const snap = snapshotFixture();
    snap.dim = 3;
    for (const cell of snap.cells) {
      delete cell.polygon;
      cell.wireframe = [
        [[0, 0], [1, 0], [1, 1]],
        [[0, 0], [1, 1], [0, 1]],
      ];
      cell.site_projected = [0.3, 0.4];
    }
    render(container, snap, { localPlayer: 1 });
    expect(container.querySelectorAll(".cell-tile").length).toBe(3);
    expect(container.querySelectorAll(".facet-badge").length).toBe(6);
  });
});
