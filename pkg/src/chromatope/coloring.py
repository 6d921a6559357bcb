"""Proper facet colorings: exact search, chromatic number, Joswig criterion.

A coloring assigns each facet a color in 1..k such that facets with a common
vertex get distinct colors.  Search is deterministic backtracking over the
facet adjacency graph, branching on the smallest-index uncolored facet, so
results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .polytopes import (
    CombinatorialPolytope,
    Face,
    PolytopeError,
    adjacency_lists,
    enumerate_faces,
)


class ColoringError(Exception):
    pass


@dataclass(frozen=True)
class Coloring:
    """Map facet index -> color in 1..k."""

    assignment: tuple[int, ...]
    k: int

    def __call__(self, facet: int) -> int:
        return self.assignment[facet]

    def color_class(self, color: int) -> list[int]:
        return [j for j, c in enumerate(self.assignment) if c == color]

    def colors_used(self) -> set[int]:
        return set(self.assignment)


def is_proper(P: CombinatorialPolytope, h: Coloring) -> bool:
    if len(h.assignment) != P.num_facets:
        return False
    if not all(1 <= c <= h.k for c in h.assignment):
        return False
    for fs in P.vertex_facets:
        colors = [h.assignment[f] for f in fs]
        if len(set(colors)) != len(colors):
            return False
    return True


def require_proper(P: CombinatorialPolytope, h: Coloring, k: Optional[int] = None):
    if not is_proper(P, h):
        raise ColoringError("coloring is not proper for this polytope")
    if k is not None and len(h.colors_used()) != k:
        raise ColoringError(f"coloring must use exactly {k} colors")


def find_coloring(P: CombinatorialPolytope, k: int) -> Optional[Coloring]:
    """Deterministic backtracking search for a proper k-coloring, or None."""
    m = P.num_facets
    adj = adjacency_lists(P)
    assignment = [0] * m

    def admissible(f: int, c: int) -> bool:
        return all(assignment[g] != c for g in adj[f])

    def place(f: int) -> bool:
        if f == m:
            return True
        # symmetry break: facet f may only open one fresh color
        used = max(assignment[:f], default=0)
        for c in range(1, min(k, used + 1) + 1):
            if admissible(f, c):
                assignment[f] = c
                if place(f + 1):
                    return True
                assignment[f] = 0
        return False

    if place(0):
        return Coloring(tuple(assignment), k)
    return None


def chromatic_number(P: CombinatorialPolytope) -> int:
    """Minimal k admitting a proper coloring; k >= dim is used as a lower bound."""
    for k in range(P.dim, P.num_facets + 1):
        if find_coloring(P, k) is not None:
            return k
    raise ColoringError("unreachable: m colors always suffice")


def joswig_colorable(P: CombinatorialPolytope) -> tuple[bool, list[Face]]:
    """Even-edge-count test on 2-faces; equivalent to n-colorability.

    Returns the verdict and the offending 2-faces.  A 2-face of a simple
    polytope is a polygon, so its edge count equals its vertex count.
    """
    if P.dim < 2:
        raise PolytopeError("criterion needs dimension >= 2")
    if P.dim == 2:
        # the polygon is its own 2-face
        whole = Face(frozenset(), frozenset(range(P.num_vertices)), 2)
        offending = [] if P.num_facets % 2 == 0 else [whole]
        return not offending, offending
    offending = [G for G in enumerate_faces(P, 2) if len(G.vertex_set) % 2 != 0]
    return not offending, offending


def i_color_class(P: CombinatorialPolytope, h: Coloring, face: Face) -> set[int]:
    """Colors of the facets containing the face."""
    facets = {f for f in range(P.num_facets) if face.vertex_set <= P.facet_vertices(f)}
    if facets != face.facet_set:
        raise ColoringError("face does not belong to this polytope")
    return {h(f) for f in face.facet_set}


def opposite_facet_coloring(P: CombinatorialPolytope) -> Coloring:
    """Color cube-like facet lists produced by the cube builder: axis i gets color i+1."""
    n = P.dim
    if P.num_facets != 2 * n:
        raise ColoringError("opposite-facet coloring expects 2n facets")
    return Coloring(tuple((j % n) + 1 for j in range(2 * n)), n)
