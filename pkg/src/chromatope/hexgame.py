"""The n-player connection game on a Voronoi-partitioned colored polytope.

A board fixes a properly n-colored simple polytope, a base vertex V (whose n
incident facets give each player their primary target), and a finite site set
whose Voronoi cells, clipped to the polytope, form the playing fields.  Player
i wins by owning a wall-connected set of cells that touches their primary
facet and any other facet of color i.  A finished board always has a winner;
a full board without one is recorded as "exhausted" and treated as a bug by
the no-tie harness, since the covering argument rules it out.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .coloring import Coloring, ColoringError, is_proper
from .geometry import ConvexRegion2, ConvexRegion3
from .polytopes import CombinatorialPolytope


class GameError(Exception):
    pass


@dataclass(frozen=True)
class Move:
    player: int
    cell: int


@dataclass
class BoardCell:
    index: int
    site: np.ndarray
    vertices: np.ndarray
    boundary: object  # ConvexRegion2 or ConvexRegion3, for rendering
    facet_contacts: frozenset[int]


class Board:
    """Voronoi cells clipped to the polytope, plus per-player targets."""

    def __init__(self, P: CombinatorialPolytope, h: Coloring, base_vertex: int,
                 sites: np.ndarray):
        geo = P.require_geometry()
        n = P.dim
        if n not in (2, 3):
            raise GameError("boards support dimension 2 and 3")
        if not is_proper(P, h) or h.colors_used() != set(range(1, n + 1)):
            raise ColoringError("board needs a proper coloring with exactly n colors")
        if not 0 <= base_vertex < P.num_vertices:
            raise GameError(f"no vertex {base_vertex}")
        sites = np.asarray(sites, dtype=float)
        if sites.ndim != 2 or sites.shape[1] != n:
            raise GameError(f"sites must be k x {n}")
        scale = geo.scale()
        self.tol = 1e-9 * max(scale, 1.0)
        for a in range(len(sites)):
            for b in range(a + 1, len(sites)):
                if np.linalg.norm(sites[a] - sites[b]) <= self.tol:
                    raise GameError(f"sites {a} and {b} coincide")
        for idx, s in enumerate(sites):
            if not geo.contains(s, tol=-1e-9):
                raise GameError(f"site {idx} is not in the polytope interior")

        self.polytope = P
        self.coloring = h
        self.base_vertex = base_vertex
        self.sites = sites
        self.num_players = n

        base_facets = sorted(P.vertex_facets[base_vertex])
        by_color = {h(f): f for f in base_facets}
        if set(by_color) != set(range(1, n + 1)):
            raise GameError("base vertex facets do not carry all n colors")
        self.targets: dict[int, tuple[int, tuple[int, ...]]] = {}
        for color in range(1, n + 1):
            primary = by_color[color]
            others = tuple(
                f for f in h.color_class(color) if f != primary
            )
            if not others:
                raise GameError(
                    f"color {color} has a single facet; the game would be undecidable"
                )
            self.targets[color] = (primary, others)

        self._build_cells(geo)
        self._build_adjacency(geo)

    def _polytope_region(self, geo):
        P = self.polytope
        if P.dim == 2:
            center = geo.coords.mean(axis=0)
            order = sorted(
                range(P.num_vertices),
                key=lambda v: np.arctan2(*(geo.coords[v] - center)[::-1]),
            )
            return ConvexRegion2([geo.coords[v] for v in order])
        faces = []
        for f in range(P.num_facets):
            verts = sorted(P.facet_vertices(f))
            pts = geo.coords[verts]
            center = pts.mean(axis=0)
            nrm = geo.normals[f]
            a = np.zeros(3)
            a[int(np.argmin(np.abs(nrm)))] = 1.0
            u = np.cross(nrm, a)
            u /= np.linalg.norm(u)
            v = np.cross(nrm, u)
            ang = np.arctan2((pts - center) @ v, (pts - center) @ u)
            faces.append([pts[i] for i in np.argsort(ang)])
        return ConvexRegion3(faces)

    def _bisector(self, i: int, j: int) -> tuple[np.ndarray, float]:
        """Halfspace of points at least as close to site i as to site j."""
        si, sj = self.sites[i], self.sites[j]
        normal = sj - si
        offset = float(sj @ sj - si @ si) / 2.0
        return normal, offset

    def _build_cells(self, geo):
        k = len(self.sites)
        self.cells: list[BoardCell] = []
        for i in range(k):
            region = self._polytope_region(geo)
            for j in range(k):
                if j != i:
                    nrm, off = self._bisector(i, j)
                    region = region.clip(nrm, off, 1e-12)
            verts = region.vertices()
            if len(verts) == 0:
                raise GameError(f"site {i} has an empty Voronoi cell")
            slack = geo.offsets[None, :] - verts @ geo.normals.T
            contacts = frozenset(
                np.nonzero(np.min(slack, axis=0) <= self.tol)[0].tolist()
            )
            self.cells.append(BoardCell(i, self.sites[i], verts, region, contacts))

    def _build_adjacency(self, geo):
        k = len(self.cells)
        n = self.polytope.dim
        # relative wall-measure threshold; degenerate contacts don't count
        wall_tol = (1e-9 * max(geo.scale(), 1.0)) ** (n - 1)
        self.neighbors: list[list[int]] = [[] for _ in range(k)]
        self.adjacency: list[tuple[int, int]] = []
        for i in range(k):
            for j in range(i + 1, k):
                nrm, off = self._bisector(i, j)
                region = self.cells[i].boundary
                if n == 2:
                    measure = region.measure_on_line(nrm, off, 1e-9 * max(np.linalg.norm(nrm), 1.0))
                else:
                    measure = region.measure_on_plane(nrm, off, 1e-9 * max(np.linalg.norm(nrm), 1.0))
                if measure > wall_tol:
                    self.adjacency.append((i, j))
                    self.neighbors[i].append(j)
                    self.neighbors[j].append(i)

    @property
    def num_cells(self) -> int:
        return len(self.cells)

    def terminal(self, player: int, facet: int) -> int:
        return self.num_cells + (player - 1) * self.polytope.num_facets + facet

    @property
    def num_nodes(self) -> int:
        return self.num_cells + self.num_players * self.polytope.num_facets


def random_sites(P: CombinatorialPolytope, count: int, seed: int) -> np.ndarray:
    """Rejection-sample distinct interior points, deterministically."""
    geo = P.require_geometry()
    rng = random.Random(f"sites:{seed}")
    lo = geo.coords.min(axis=0)
    hi = geo.coords.max(axis=0)
    margin = 0.02 * geo.scale()
    out: list[np.ndarray] = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 10000 * count:
            raise GameError("could not sample enough interior sites")
        p = np.array([rng.uniform(lo[d] + margin, hi[d] - margin) for d in range(P.dim)])
        if not geo.contains(p, tol=-margin):
            continue
        if any(np.linalg.norm(p - q) < margin for q in out):
            continue
        out.append(p)
    return np.array(out)


def build_board(P, h, base_vertex, sites) -> Board:
    return Board(P, h, base_vertex, np.asarray(sites, dtype=float))


# -- game state ------------------------------------------------------------------


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _union(parent: list[int], a: int, b: int):
    ra, rb = _find(parent, a), _find(parent, b)
    if ra != rb:
        parent[rb] = ra


@dataclass(frozen=True)
class GameState:
    board: Board
    ownership: tuple[int, ...]
    turn: int
    history: tuple[Move, ...]
    status: str  # ongoing | won | exhausted
    winner: Optional[int]
    winning_component: tuple[int, ...]
    winning_pair: Optional[tuple[int, int]]
    parent: tuple[int, ...]  # union-find forest over cells + facet terminals

    @property
    def version(self) -> int:
        return len(self.history)


def new_game(board: Board) -> GameState:
    return GameState(
        board=board,
        ownership=(0,) * board.num_cells,
        turn=1,
        history=(),
        status="ongoing",
        winner=None,
        winning_component=(),
        winning_pair=None,
        parent=tuple(range(board.num_nodes)),
    )


def legal_moves(state: GameState) -> list[int]:
    if state.status != "ongoing":
        return []
    return [c for c in range(state.board.num_cells) if state.ownership[c] == 0]


def apply_move(state: GameState, move: Move) -> GameState:
    board = state.board
    if state.status != "ongoing":
        raise GameError(f"game is over ({state.status})")
    if move.player != state.turn:
        raise GameError(f"it is player {state.turn}'s turn, not {move.player}")
    if not 0 <= move.cell < board.num_cells:
        raise GameError(f"no cell {move.cell}")
    if state.ownership[move.cell] != 0:
        raise GameError(f"cell {move.cell} is already claimed")

    p = move.player
    ownership = list(state.ownership)
    ownership[move.cell] = p
    parent = list(state.parent)
    for nb in board.neighbors[move.cell]:
        if ownership[nb] == p:
            _union(parent, move.cell, nb)
    h = board.coloring
    for f in board.cells[move.cell].facet_contacts:
        if h(f) == p:
            _union(parent, move.cell, board.terminal(p, f))

    primary, others = board.targets[p]
    root = _find(parent, board.terminal(p, primary))
    detected = any(
        _find(parent, board.terminal(p, f)) == root for f in others
    )

    history = state.history + (Move(p, move.cell),)
    if detected:
        # terminals can merge wall-disjoint components, so the certificate is
        # extracted by an exact scan (the detection guarantees one exists)
        component, winning_pair = _winning_component(board, ownership, p)
        return GameState(board, tuple(ownership), state.turn, history,
                         "won", p, component, winning_pair, tuple(parent))
    status = "ongoing" if 0 in ownership else "exhausted"
    next_turn = p % board.num_players + 1
    return GameState(board, tuple(ownership), next_turn, history,
                     status, None, (), None, tuple(parent))


def _winning_component(board: Board, ownership, p: int) -> tuple[tuple[int, ...], tuple[int, int]]:
    """First wall-connected component of player p touching the primary facet
    and another facet of p's color, with its facet pair."""
    primary, others = board.targets[p]
    cells = [c for c in range(board.num_cells) if ownership[c] == p]
    cellset = set(cells)
    seen: set[int] = set()
    for start in cells:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = [start]
        while queue:
            c = queue.pop()
            for nb in board.neighbors[c]:
                if nb in cellset and nb not in seen:
                    seen.add(nb)
                    comp.append(nb)
                    queue.append(nb)
        touched = set()
        for c in comp:
            touched |= board.cells[c].facet_contacts
        if primary in touched:
            for f in others:
                if f in touched:
                    return tuple(sorted(comp)), (primary, f)
    raise GameError("win detected but no winning component found; adjacency bug")


def winner(state: GameState) -> Optional[tuple[int, tuple[int, ...]]]:
    if state.winner is None:
        return None
    return state.winner, state.winning_component


def batch_winner(state: GameState) -> Optional[tuple[int, tuple[int, ...], tuple[int, int]]]:
    """From-scratch component scan; oracle for the incremental detector."""
    board = state.board
    h = board.coloring
    for p in range(1, board.num_players + 1):
        cells = [c for c in range(board.num_cells) if state.ownership[c] == p]
        cellset = set(cells)
        seen: set[int] = set()
        for start in cells:
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            queue = [start]
            while queue:
                c = queue.pop()
                for nb in board.neighbors[c]:
                    if nb in cellset and nb not in seen:
                        seen.add(nb)
                        comp.append(nb)
                        queue.append(nb)
            touched = set()
            for c in comp:
                touched |= board.cells[c].facet_contacts
            primary, others = board.targets[p]
            if primary in touched:
                for f in others:
                    if f in touched:
                        return p, tuple(sorted(comp)), (primary, f)
    return None


# -- bots and playouts -------------------------------------------------------------


def bot_move(state: GameState, policy: str, rng: Optional[random.Random] = None) -> Move:
    moves = legal_moves(state)
    if not moves:
        raise GameError("no legal moves")
    p = state.turn
    if policy == "uniform-random":
        rng = rng or random.Random(0)
        return Move(p, rng.choice(moves))
    if policy == "connectivity-greedy":
        board = state.board
        primary, others = board.targets[p]
        targets = {primary, *others}

        def score(cell: int) -> tuple:
            nxt = apply_move(state, Move(p, cell))
            if nxt.winner == p:
                return (2, 0, -cell)
            parent = list(nxt.parent)
            root = _find(parent, cell)
            touched = sum(
                1 for f in targets
                if _find(parent, board.terminal(p, f)) == root
            )
            size = sum(
                1 for c in range(board.num_cells)
                if nxt.ownership[c] == p and _find(parent, c) == root
            )
            return (1 if touched else 0, touched * 100 + size, -cell)

        return Move(p, max(moves, key=score))
    raise GameError(f"unknown bot policy {policy!r}")


def random_playout(board: Board, seed: int) -> GameState:
    rng = random.Random(f"playout:{seed}")
    state = new_game(board)
    while state.status == "ongoing" and legal_moves(state):
        state = apply_move(state, bot_move(state, "uniform-random", rng))
    return state


def no_tie_check(board: Board, trials: int, seed: int, out_dir: str = "fuzz-failures") -> dict:
    """Random complete playouts; every one must end with a winner."""
    report = {
        "trials": trials,
        "seed": seed,
        "ties": 0,
        "wins_by_player": {},
        "tie_files": [],
        "max_moves": 0,
    }
    for trial in range(trials):
        final = random_playout(board, seed * 100003 + trial)
        report["max_moves"] = max(report["max_moves"], len(final.history))
        if final.status == "won":
            key = str(final.winner)
            report["wins_by_player"][key] = report["wins_by_player"].get(key, 0) + 1
        else:
            report["ties"] += 1
            report["tie_files"].append(_export_tie(board, final, out_dir, seed, trial))
    return report


def _export_tie(board: Board, state: GameState, out_dir: str, seed: int, trial: int) -> str:
    import json
    import os

    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"tie-{seed}-{trial}.json")
    payload = {
        "polytope": board.polytope.name,
        "coloring": list(board.coloring.assignment),
        "base_vertex": board.base_vertex,
        "sites": [list(map(float, s)) for s in board.sites],
        "moves": [[m.player, m.cell] for m in state.history],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, sort_keys=True, indent=1)
    return path
