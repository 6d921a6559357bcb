"""The ring-identity suite: the relations the covering proofs lean on.

Given a polytope with a canonical (n colors) or sign-vector (n+1 colors)
ring, checks every identity exactly: same-color products and squares vanish,
color-class sums vanish, the vertex-class power expansion with its factorial
coefficients, generator replacement within a color class, and for the
distinguished color the simplex-facet relations including the degree-n chain
and its integral.

Each entry reports pass/fail plus a short human-readable detail.  Everything
is exact integer arithmetic; there are no tolerances.
"""

from __future__ import annotations

import itertools
import math

from .coloring import Coloring
from .polytopes import CombinatorialPolytope
from .ring import (
    CohomologyRing,
    RingElement,
    adjacent_color_facet,
    simplex_facets,
    simplicial_class,
    vertex_class,
)

V = RingElement.var


def _record(results, name, holds, detail=""):
    results.append({"name": name, "holds": bool(holds), "detail": detail})


def _vertex_color_map(P, h, vertex):
    return {h(f): f for f in sorted(P.vertex_facets[vertex])}


def same_color_products_vanish(P, h, ring, results):
    ok = True
    bad = None
    for color in sorted(h.colors_used()):
        cls = h.color_class(color)
        for i, j in itertools.combinations(cls, 2):
            if not ring.is_zero(V(i) * V(j)):
                ok, bad = False, (i, j)
                break
    _record(results, "same-color products vanish", ok,
            "" if ok else f"v{bad[0] + 1}*v{bad[1] + 1} != 0")


def color_class_sums_vanish(P, h, ring, results):
    n = P.dim
    ok = True
    for color in range(1, n + 1):
        total = RingElement.zero()
        for f in h.color_class(color):
            total = total + V(f)
        if (P.dim + 1) in h.colors_used():
            # sign-vector rows: color-i sum equals the simplex-facet sum
            total = total - simplicial_class(P, h)
        if not ring.is_zero(total):
            ok = False
            break
    _record(results, "color-class sums vanish", ok)


def squares_vanish(P, h, ring, results):
    """Canonical rings only: every generator squares to zero, in one rewrite."""
    ok = True
    depth_ok = True
    for j in range(P.num_facets):
        if not ring.is_zero(V(j) ** 2):
            ok = False
            break
        sf, depth = ring.square_free_form(V(j) ** 2)
        if depth > 2:
            depth_ok = False
    _record(results, "generator squares vanish", ok)
    _record(results, "square elimination is single-step", depth_ok)


def vertex_power_expansion(P, h, ring, results, vertex=0):
    """omega^k = k! * sum of square-free color-subset monomials, nonzero."""
    n = P.dim
    at = _vertex_color_map(P, h, vertex)
    omega = vertex_class(P, vertex)
    ok = True
    nonzero_ok = True
    for k in range(1, n + 1):
        expected = RingElement.zero()
        for J in itertools.combinations(sorted(at), k):
            expected = expected + math.factorial(k) * RingElement.monomial(
                [at[c] for c in J]
            )
        if not ring.is_zero(omega**k - expected):
            ok = False
        if ring.is_zero(omega**k):
            nonzero_ok = False
    _record(results, "vertex-class powers expand with factorial coefficients", ok)
    _record(results, "vertex-class powers are nonzero up to the top degree", nonzero_ok)


def generator_replacement(P, h, ring, results):
    """Replacing a generator by minus the rest of its color class is invisible
    after multiplying by any face monomial."""
    n = P.dim
    special = (n + 1) in h.colors_used()
    ok = True
    for j1 in range(P.num_facets):
        rest = RingElement.zero()
        for j in h.color_class(h(j1)):
            if j != j1:
                rest = rest + V(j)
        if special and h(j1) <= n:
            rest = rest - simplicial_class(P, h)
        elif special:
            # distinguished color: the replacement comes from any other row
            for j in h.color_class(1):
                rest = rest - V(j)
        relation = V(j1) + rest
        for d in range(0, n - 1):
            for mu in ring.face_monomials(d):
                if not ring.is_zero(relation * RingElement.monomial(mu)):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            break
    _record(results, "generator replacement preserves normal forms", ok)


def simplex_facet_relations(P, h, ring, results):
    """Distinguished-color facets: pairwise products die, squares absorb the
    unique adjacent facet of each color, and the degree-n chain integrates to 1."""
    n = P.dim
    ts = simplex_facets(P, h)
    k = len(ts)
    ok_pairs = all(
        ring.is_zero(V(a) * V(b)) for a, b in itertools.combinations(ts, 2)
    )
    _record(results, "simplex-facet pairwise products vanish", ok_pairs)

    ok_sq = True
    for t in ts:
        for color in range(1, n + 1):
            vij = adjacent_color_facet(P, h, t, color)
            if not ring.is_zero(V(t) ** 2 - V(t) * V(vij)):
                ok_sq = False
    _record(results, "simplex-facet squares absorb the adjacent facet", ok_sq)

    ok_chain = True
    ok_unit = True
    for t in ts:
        chain = V(t)
        for color in range(1, n):
            chain = chain * V(adjacent_color_facet(P, h, t, color))
        if not ring.is_zero(V(t) ** n - chain):
            ok_chain = False
        ref = min(v for v, fs in enumerate(P.vertex_facets) if t in fs)
        if ring.integrate(V(t) ** n, ref) != 1 or ring.integrate(chain, ref) != 1:
            ok_unit = False
    _record(results, "degree-n simplex chain identity", ok_chain)
    _record(results, "simplex-facet top powers integrate to one", ok_unit)

    total = simplicial_class(P, h)
    ref = min(v for v, fs in enumerate(P.vertex_facets) if ts[0] in fs)
    _record(results, "sum of simplex classes integrates to the facet count",
            ring.integrate(total**n, ref) == k, f"expected {k}")


def run_identity_suite(P: CombinatorialPolytope, h: Coloring, ring: CohomologyRing) -> list[dict]:
    results: list[dict] = []
    special = (P.dim + 1) in h.colors_used()
    same_color_products_vanish(P, h, ring, results)
    color_class_sums_vanish(P, h, ring, results)
    if not special:
        squares_vanish(P, h, ring, results)
        vertex_power_expansion(P, h, ring, results)
    generator_replacement(P, h, ring, results)
    if special:
        simplex_facet_relations(P, h, ring, results)
    return results
