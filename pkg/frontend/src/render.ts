// SVG board rendering.  2D boards draw the Voronoi cells directly; 3D
// boards render an exploded list of per-cell wireframes with facet-contact
// badges.  Rendering is a pure function of the snapshot: ownership, turn,
// winner highlights and click targets are all recomputed from scratch.

import { CellInfo, GameSnapshot, SchemaError, validateSnapshot } from "./schema.js";

export const PLAYER_COLORS = [
  "#e84d4d", // player 1
  "#4d7de8", // player 2
  "#3fae5a", // player 3
  "#d8a23a", // player 4
];

export const UNCLAIMED = "#e8e4da";

export interface RenderOptions {
  localPlayer: number | null;
  onCellClick?: (cell: number) => void;
}

const SVG_NS = "http://www.w3.org/2000/svg";

export function playerColor(player: number): string {
  return PLAYER_COLORS[(player - 1) % PLAYER_COLORS.length] as string;
}

function clearChildren(node: Element): void {
  while (node.firstChild) {
    node.removeChild(node.firstChild);
  }
}

export function render(container: HTMLElement, payload: unknown, options: RenderOptions): void {
  let snapshot: GameSnapshot;
  try {
    snapshot = validateSnapshot(payload);
  } catch (err) {
    clearChildren(container);
    const banner = container.ownerDocument.createElement("div");
    banner.className = "error-banner";
    banner.textContent =
      err instanceof SchemaError ? `bad state payload - ${err.message}` : String(err);
    container.appendChild(banner);
    return;
  }
  clearChildren(container);
  container.appendChild(statusBar(container.ownerDocument, snapshot, options));
  if (snapshot.dim === 2) {
    container.appendChild(flatBoard(container.ownerDocument, snapshot, options));
  } else {
    container.appendChild(explodedBoard(container.ownerDocument, snapshot, options));
  }
  container.appendChild(targetLegend(container.ownerDocument, snapshot));
}

function statusBar(doc: Document, snap: GameSnapshot, options: RenderOptions): HTMLElement {
  const bar = doc.createElement("div");
  bar.className = "status-bar";
  if (snap.status === "won" && snap.winner !== null) {
    bar.classList.add("won");
    const pair = snap.winning_pair ?? [];
    bar.textContent =
      `player ${snap.winner} wins - connected facets ${pair.join(" and ")}`;
    (bar.style as CSSStyleDeclaration).color = playerColor(snap.winner);
  } else if (snap.status === "exhausted") {
    bar.textContent = "board exhausted without a winner (engine bug)";
  } else if (snap.turn === options.localPlayer) {
    bar.textContent = `your move, player ${snap.turn}`;
  } else {
    bar.textContent = `waiting for player ${snap.turn}`;
  }
  return bar;
}

function cellIsClickable(snap: GameSnapshot, cell: CellInfo, options: RenderOptions): boolean {
  return (
    snap.status === "ongoing" &&
    cell.owner === null &&
    options.localPlayer !== null &&
    snap.turn === options.localPlayer
  );
}

function decorate(el: Element, snap: GameSnapshot, cell: CellInfo, options: RenderOptions): void {
  el.classList.add("cell");
  el.setAttribute("data-cell-id", String(cell.id));
  if (cell.owner !== null) {
    el.classList.add("owned");
  }
  if (snap.winning_component.includes(cell.id)) {
    el.classList.add("winning");
  }
  if (cellIsClickable(snap, cell, options)) {
    el.classList.add("clickable");
    el.addEventListener("click", () => options.onCellClick?.(cell.id));
  }
}

function flatBoard(doc: Document, snap: GameSnapshot, options: RenderOptions): Element {
  const svg = doc.createElementNS(SVG_NS, "svg");
  svg.setAttribute("class", "board board-2d");
  let minX = Infinity, minY = Infinity, maxX = -Infinity, maxY = -Infinity;
  for (const cell of snap.cells) {
    for (const [x, y] of (cell.polygon ?? []) as [number, number][]) {
      minX = Math.min(minX, x); maxX = Math.max(maxX, x);
      minY = Math.min(minY, y); maxY = Math.max(maxY, y);
    }
  }
  const pad = 0.05 * Math.max(maxX - minX, maxY - minY, 1e-9);
  svg.setAttribute(
    "viewBox",
    `${minX - pad} ${minY - pad} ${maxX - minX + 2 * pad} ${maxY - minY + 2 * pad}`,
  );
  for (const cell of snap.cells) {
    const poly = doc.createElementNS(SVG_NS, "polygon");
    const points = (cell.polygon ?? [])
      .map(([x, y]) => `${x},${y}`)
      .join(" ");
    poly.setAttribute("points", points);
    poly.setAttribute("fill", cell.owner === null ? UNCLAIMED : playerColor(cell.owner));
    poly.setAttribute("stroke", "#555");
    poly.setAttribute("stroke-width", String(0.01 * (maxX - minX)));
    decorate(poly, snap, cell, options);
    if (snap.winning_component.includes(cell.id)) {
      poly.setAttribute("stroke", "#111");
      poly.setAttribute("stroke-width", String(0.03 * (maxX - minX)));
    }
    svg.appendChild(poly);
  }
  return svg;
}

function explodedBoard(doc: Document, snap: GameSnapshot, options: RenderOptions): HTMLElement {
  const grid = doc.createElement("div");
  grid.className = "board board-3d";
  for (const cell of snap.cells) {
    const tile = doc.createElement("div");
    decorate(tile, snap, cell, options);
    tile.classList.add("cell-tile");
    const svg = doc.createElementNS(SVG_NS, "svg");
    svg.setAttribute("viewBox", "-2.2 -2.2 4.4 4.4");
    svg.setAttribute("class", "wireframe");
    for (const face of cell.wireframe ?? []) {
      const poly = doc.createElementNS(SVG_NS, "polygon");
      poly.setAttribute("points", face.map(([x, y]) => `${x},${y}`).join(" "));
      poly.setAttribute(
        "fill",
        cell.owner === null ? UNCLAIMED : playerColor(cell.owner),
      );
      poly.setAttribute("fill-opacity", "0.35");
      poly.setAttribute("stroke", "#444");
      poly.setAttribute("stroke-width", "0.02");
      svg.appendChild(poly);
    }
    tile.appendChild(svg);
    const badges = doc.createElement("div");
    badges.className = "facet-badges";
    for (const f of cell.facet_contacts) {
      const facet = snap.facets.find((x) => x.id === f);
      const badge = doc.createElement("span");
      badge.className = "facet-badge";
      badge.textContent = facet ? facet.name : String(f);
      (badge.style as CSSStyleDeclaration).borderColor = facet
        ? playerColor(facet.color)
        : "#999";
      badges.appendChild(badge);
    }
    tile.appendChild(badges);
    grid.appendChild(tile);
  }
  return grid;
}

function targetLegend(doc: Document, snap: GameSnapshot): HTMLElement {
  const legend = doc.createElement("div");
  legend.className = "target-legend";
  for (const [player, target] of Object.entries(snap.targets)) {
    const row = doc.createElement("div");
    row.className = "target-row";
    const names = (ids: number[]) =>
      ids.map((f) => snap.facets.find((x) => x.id === f)?.name ?? String(f)).join(", ");
    row.textContent =
      `player ${player}: connect ${names([target.primary])} to ${names(target.others)}`;
    (row.style as CSSStyleDeclaration).color = playerColor(Number(player));
    legend.appendChild(row);
  }
  return legend;
}
