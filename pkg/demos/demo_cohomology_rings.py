"""Exact ring arithmetic: characteristic matrices, normal forms, integration.

Run:  python3 demos/demo_cohomology_rings.py
"""

import chromatope as ct
from chromatope.ring import (
    CohomologyRing,
    RingElement,
    display_names,
    simplex_facets,
    simplicial_class,
    vertex_class,
)

V = RingElement.var

# ---------------------------------------------------------------------------
# The canonical ring of the colored cube.  Facet j contributes a degree-two
# generator; the quotient kills disjoint-facet monomials and one linear form
# per color.
# ---------------------------------------------------------------------------
cube = ct.cube(3)
h = ct.opposite_facet_coloring(cube)
lam = ct.canonical_characteristic(cube, h)
print("characteristic matrix of the cube (columns = facets):")
for row in lam.entries:
    print("  ", row)

ring = CohomologyRing(cube, lam)

# generators of the same color multiply to zero, and so do their squares
print("v1*v4 ->", ring.normal_form(V(0) * V(3)).pretty())
print("v1^2  ->", ring.normal_form(V(0) ** 2).pretty())

# the vertex class: the sum of the three facet variables at a corner
omega = vertex_class(cube, 0)
print("omega =", omega.pretty())
nf2 = ring.normal_form(omega**2)
print("omega^2 ->", nf2.pretty(), "(2! times the three two-subset monomials)")

# integration: coefficient against the top class, +1 on the corner monomial
print("integral of omega^3:", ring.integrate(omega**3, 0), "= 3!")

for n in (2, 4):
    P = ct.cube(n)
    R = CohomologyRing(P, ct.canonical_characteristic(P, ct.opposite_facet_coloring(P)))
    w = vertex_class(P, 0)
    print(f"cube({n}): integral of omega^{n} =", R.integrate(w**n, 0))

# ---------------------------------------------------------------------------
# The sign-vector ring of a truncated cube.  The three cut corners carry the
# distinguished fourth color; their columns all become (-1,-1,-1).
# ---------------------------------------------------------------------------
corners = ct.strongly_separated_vertices(cube, 3)
T = ct.truncate_vertices(cube, corners)
ht = ct.Coloring(tuple(h.assignment) + (4, 4, 4), 4)
lam_t = ct.special_characteristic(T, ht)
ring_t = CohomologyRing(T, lam_t)
names = display_names(T, ht)

ts = simplex_facets(T, ht)
t1 = V(ts[0])
print("t1^2 ->", ring_t.normal_form(t1**2).pretty(names),
      "(the square absorbs the adjacent facet)")

t = simplicial_class(T, ht)
ref = min(v for v, fs in enumerate(T.vertex_facets) if ts[0] in fs)
print("integral of (t1+t2+t3)^3:", ring_t.integrate(t**3, ref),
      "= number of cut corners")
print("integral of t1^3:", ring_t.integrate(t1**3, ref), "= 1 (top class)")
