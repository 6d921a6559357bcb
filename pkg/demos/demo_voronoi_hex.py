"""The n-player Voronoi connection game, from board geometry to playouts.

Each player owns a color; player i wins by connecting the facet of color i
at the base vertex to any other facet of color i through owned cells.  A
completed board always has a winner.

Run:  python3 demos/demo_voronoi_hex.py
"""

import random

import chromatope as ct
from chromatope.hexgame import (
    Move,
    apply_move,
    batch_winner,
    bot_move,
    build_board,
    legal_moves,
    new_game,
    no_tie_check,
    random_playout,
    random_sites,
)

# ---------------------------------------------------------------------------
# A hexagonal board: 2 colors, 2 players, 18 random sites.
# ---------------------------------------------------------------------------
hexagon = ct.polygon(6)
h = ct.find_coloring(hexagon, 2)
print("edge colors:", h.assignment)

board = build_board(hexagon, h, 0, random_sites(hexagon, 18, seed=6))
print(f"{board.num_cells} Voronoi cells, {len(board.adjacency)} shared walls")
for player, (primary, others) in board.targets.items():
    print(f"player {player} connects facet {primary} to one of {list(others)}")

# ---------------------------------------------------------------------------
# Play a scripted opening, then let bots finish.
# ---------------------------------------------------------------------------
state = new_game(board)
state = apply_move(state, Move(1, legal_moves(state)[0]))
state = apply_move(state, Move(2, legal_moves(state)[0]))
print("after two moves:", len(legal_moves(state)), "cells free")

rng = random.Random(0)
while state.status == "ongoing" and legal_moves(state):
    policy = "connectivity-greedy" if state.turn == 1 else "uniform-random"
    state = apply_move(state, bot_move(state, policy, rng))

print(f"winner: player {state.winner} via facets {state.winning_pair}, "
      f"component {state.winning_component}")
print("batch rescan agrees:", batch_winner(state)[0] == state.winner)

# ---------------------------------------------------------------------------
# The no-tie property, empirically: complete playouts always end decided.
# ---------------------------------------------------------------------------
report = no_tie_check(board, trials=200, seed=1)
print(f"200 playouts: ties {report['ties']}, wins {report['wins_by_player']}")

# three players on a cube work the same way
cube = ct.cube(3)
board3 = build_board(cube, ct.opposite_facet_coloring(cube), 0,
                     random_sites(cube, 32, seed=2))
final = random_playout(board3, seed=3)
print(f"cube game: player {final.winner} won after {len(final.history)} moves")

# ---------------------------------------------------------------------------
# For human play, start the HTTP service and open the browser client:
#   chromatope hex serve --port 8000      (or: python3 -m chromatope.cli ...)
# then see frontend/README.md for the UI.
# ---------------------------------------------------------------------------
