"""Tour of the polytope catalog: builders, faces, colorings, the parity test.

Run:  python3 demos/demo_polytopes_and_colorings.py
"""

import chromatope as ct

# ---------------------------------------------------------------------------
# Builders produce a combinatorial polytope plus a geometric realization.
# ---------------------------------------------------------------------------
cube = ct.cube(3)
print(f"{cube.name}: {cube.num_facets} facets, {cube.num_vertices} vertices")
print("simple?", ct.validate_simple(cube) == [])

simplex = ct.simplex(3)
hexagon = ct.polygon(6)
prism5 = ct.prism(5)

for P in (simplex, hexagon, prism5):
    print(f"{P.name}: {P.num_facets} facets, {P.num_vertices} vertices")

# faces of every dimension, recovered from vertex-facet incidence
for k in range(3):
    faces = ct.enumerate_faces(cube, k)
    print(f"cube has {len(faces)} faces of dim {k}")

# ---------------------------------------------------------------------------
# Chromatic numbers.  A proper coloring gives adjacent facets distinct colors;
# n colors is the floor, and the n-colorable polytopes are the good citizens.
# ---------------------------------------------------------------------------
print("chromatic number of the pentagon:", ct.chromatic_number(ct.polygon(5)))
print("chromatic number of the hexagon:", ct.chromatic_number(hexagon))
print("chromatic number of the 3-simplex:", ct.chromatic_number(simplex))

# the parity criterion: n-colorable iff every 2-face has an even edge count
for P in (cube, simplex, prism5, ct.prism(6)):
    ok, offending = ct.joswig_colorable(P)
    verdict = "even 2-faces, n-colorable" if ok else \
        f"{len(offending)} odd 2-faces, needs more colors"
    print(f"{P.name}: {verdict}")

# ---------------------------------------------------------------------------
# Truncations.  Cutting a vertex of a simple polytope adds a simplex facet;
# cutting an odd number of pairwise non-adjacent vertices of a colored
# polytope is the workhorse source of specially (n+1)-colorable examples.
# ---------------------------------------------------------------------------
corners = ct.strongly_separated_vertices(cube, 3)
T = ct.truncate_vertices(cube, corners)
print(f"cube truncated at {corners}: {T.num_facets} facets, {T.num_vertices} vertices")

# total truncation: cut every proper face; the result is n-colorable by
# face dimension no matter how bad the input was
Q, facet_to_face, colors = ct.total_truncation(simplex)
print(f"total truncation of the simplex: {Q.num_facets} facets (one per proper "
      f"face), {Q.num_vertices} vertices (one per complete flag)")
h = ct.Coloring(colors, 3)
print("dimension coloring is proper:", ct.is_proper(Q, h))
print("and the flag polytope passes the parity test:", ct.joswig_colorable(Q)[0])
