"""Covering checkers: multiplicity, witnesses, and randomized falsification.

A cover with multiplicity at most n must contain a set whose component
touches two same-colored facets (colored polytopes), all n+1 colors
(specially colored ones), or n+1 facets (any simple polytope).  The checkers
search discretized covers for exactly these configurations; the fuzzer tries
to falsify them at scale and treats any absence as a bug to reproduce.

Run:  python3 demos/demo_covering_checks.py
"""

import chromatope as ct
from chromatope.cells import CellComplex
from chromatope.covers import (
    CoverInstance,
    check_colorful_kkm,
    check_colorful_lebesgue,
    check_general_polytope,
    check_karasev,
    multiplicity,
)
from chromatope.fuzz import fuzz_covers

# ---------------------------------------------------------------------------
# Discretize the cube into a 16^3 grid and cover it with three slabs.
# ---------------------------------------------------------------------------
cube = ct.cube(3)
cx = CellComplex(cube)
print(f"complex: {cx.num_cells} cells, {len(cx.points)} subdivision points")

sets = {}
for cell in cx.cells:
    sets.setdefault(f"slab{min(cell.grid_pos[0] // 6, 2)}", []).append(cell.index)
cover = CoverInstance.from_dict(cx, sets)
print("slab cover multiplicity:", multiplicity(cover))

h = ct.opposite_facet_coloring(cube)
w = check_colorful_lebesgue(cube, h, cover)
print(f"same-color witness: set {w.label!r} touches facets {w.facet_pair} "
      f"(both color {w.color})")

w = check_karasev(cube, cover)
print(f"many-facets witness: set {w.label!r} touches {len(w.facets)} facets")

# ---------------------------------------------------------------------------
# The all-colors statement needs a distinguished simplex color: truncate a
# corner and give the new triangle the fourth color.
# ---------------------------------------------------------------------------
T = ct.truncate_vertex(cube, 0)
ht = ct.Coloring(tuple(h.assignment) + (4,), 4)
cxt = CellComplex(T, 8)
cov_t = CoverInstance.from_dict(cxt, {"everything": list(range(cxt.num_cells))})
w = check_colorful_kkm(T, ht, cov_t)
print("all-colors witness facets:", w.facets)

# ---------------------------------------------------------------------------
# Non-simple input: reduce through the total truncation.  Two same-colored
# facets of the flag polytope pull back to two faces of equal dimension.
# ---------------------------------------------------------------------------
pyramid = ct.square_pyramid()
cxp = CellComplex(pyramid, 8)
cov_p = CoverInstance.from_dict(cxp, {"all": list(range(cxp.num_cells))})
w = check_general_polytope(pyramid, cov_p)
print(f"pyramid witness: two {w.face_dim}-faces with vertex sets "
      f"{w.face_vertex_sets}")

# ---------------------------------------------------------------------------
# Fuzzing: hundreds of random multiplicity-bounded covers, every one must
# produce a witness.  Reports are deterministic in the seed.
# ---------------------------------------------------------------------------
report = fuzz_covers(cube, h, "voronoi-merge", seed=7, trials=100,
                     checker="lebesgue", complex=cx)
print(f"fuzz: {report['accepted']} accepted, witnesses {report['witnesses']}, "
      f"absences {len(report['absences'])}")

report = fuzz_covers(cube, h, "shifted-bricks", seed=7, trials=50,
                     checker="lebesgue", complex=cx)
print(f"brick patterns: {report['rejected']} rejected by the multiplicity "
      f"filter, {report['accepted']} accepted, all witnessed: "
      f"{sum(report['witnesses'].values()) == report['accepted']}")
