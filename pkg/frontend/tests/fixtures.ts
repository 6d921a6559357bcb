import { GameSnapshot } from "../src/schema.js";

export function snapshotFixture(): GameSnapshot {
  return {
    version: 0,
    dim: 2,
    polytope: "polygon(6)",
    num_players: 2,
    players: ["human", "bot:uniform-random"],
    turn: 1,
    status: "ongoing",
    winner: null,
    winning_component: [],
    winning_pair: null,
    facets: [
      { id: 0, name: "e0", color: 1 },
      { id: 1, name: "e1", color: 2 },
      { id: 2, name: "e2", color: 1 },
      { id: 3, name: "e3", color: 2 },
      { id: 4, name: "e4", color: 1 },
      { id: 5, name: "e5", color: 2 },
    ],
    targets: {
      "1": { primary: 0, others: [2, 4] },
      "2": { primary: 5, others: [1, 3] },
    },
    cells: [
      {
        id: 0,
        owner: null,
        facet_contacts: [0, 1],
        site: [0.5, 0.2],
        polygon: [[0, 0], [1, 0], [1, 1], [0, 1]],
      },
      {
        id: 1,
        owner: 2,
        facet_contacts: [2, 3],
        site: [-0.5, 0.2],
        polygon: [[-1, 0], [0, 0], [0, 1], [-1, 1]],
      },
      {
        id: 2,
        owner: null,
        facet_contacts: [4, 5],
        site: [0.0, -0.5],
        polygon: [[-1, -1], [1, -1], [1, 0], [-1, 0]],
      },
    ],
  };
}

export function wonFixture(): GameSnapshot {
  const snap = snapshotFixture();
  snap.version = 3;
  snap.status = "won";
  snap.turn = null;
  snap.winner = 1;
  snap.winning_component = [0, 2];
  snap.winning_pair = [0, 4];
  snap.cells[0]!.owner = 1;
  snap.cells[2]!.owner = 1;
  snap.cells[1]!.owner = 2;
  return snap;
}
