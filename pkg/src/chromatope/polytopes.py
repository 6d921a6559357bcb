"""Combinatorial simple polytopes with optional geometric realizations.

A polytope is stored by its vertex-facet incidence: for each vertex, the set
of facets containing it.  For a simple n-polytope every vertex lies in exactly
n facets, and every k-face is recovered as the common vertex set of some
(n-k)-subset of facets.  Geometric realizations carry per-vertex coordinates
and per-facet outward halfspaces (normal . x <= offset) and are only required
by the cover and game layers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np


class PolytopeError(Exception):
    """Raised for structurally invalid polytope data or operations."""


@dataclass(frozen=True)
class GeometricRealization:
    """Vertex coordinates plus outward facet halfspaces normal.x <= offset."""

    coords: np.ndarray       # (num_vertices, dim)
    normals: np.ndarray      # (num_facets, dim), unit outward normals
    offsets: np.ndarray      # (num_facets,)
    tol: float = 1e-9

    def facet_slack(self, facet: int, point: np.ndarray) -> float:
        """Distance-like slack of a point inside the facet's halfspace."""
        return float(self.offsets[facet] - self.normals[facet] @ point)

    def contains(self, point: np.ndarray, tol: Optional[float] = None) -> bool:
        t = self.tol if tol is None else tol
        return bool(np.all(self.normals @ point <= self.offsets + t))

    def scale(self) -> float:
        """Diameter-ish scale used to make tolerances relative."""
        lo = self.coords.min(axis=0)
        hi = self.coords.max(axis=0)
        return float(np.max(hi - lo))

    def validate(self, vertex_facets: tuple[frozenset[int], ...]) -> list[str]:
        """Check vertex-on-hyperplane iff incident, and all inequalities."""
        problems = []
        tol = max(self.tol, 1e-7 * max(self.scale(), 1.0))
        for v, point in enumerate(self.coords):
            slacks = self.offsets - self.normals @ point
            if np.any(slacks < -tol):
                problems.append(f"vertex {v} violates facet inequality")
            on = set(np.nonzero(np.abs(slacks) <= tol)[0].tolist())
            if on != set(vertex_facets[v]):
                problems.append(
                    f"vertex {v}: on hyperplanes {sorted(on)} but incident to "
                    f"{sorted(vertex_facets[v])}"
                )
        return problems


@dataclass(frozen=True)
class CombinatorialPolytope:
    """Vertex-facet incidence model of a convex polytope."""

    dim: int
    facet_names: tuple[str, ...]
    vertex_facets: tuple[frozenset[int], ...]
    name: str = ""
    geometry: Optional[GeometricRealization] = None
    # caches, filled lazily; excluded from equality
    _facet_vertices: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.dim < 1:
            raise PolytopeError("dimension must be >= 1")
        m = len(self.facet_names)
        for v, fs in enumerate(self.vertex_facets):
            for f in fs:
                if not 0 <= f < m:
                    raise PolytopeError(f"vertex {v} references unknown facet {f}")

    @property
    def num_facets(self) -> int:
        return len(self.facet_names)

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_facets)

    def facet_vertices(self, facet: int) -> frozenset[int]:
        """Vertices incident to the given facet."""
        cached = self._facet_vertices.get(facet)
        if cached is None:
            cached = frozenset(
                v for v, fs in enumerate(self.vertex_facets) if facet in fs
            )
            self._facet_vertices[facet] = cached
        return cached

    def common_vertices(self, facets: Iterable[int]) -> frozenset[int]:
        facets = list(facets)
        if not facets:
            return frozenset(range(self.num_vertices))
        sets = sorted((self.facet_vertices(f) for f in facets), key=len)
        out = sets[0]
        for s in sets[1:]:
            out = out & s
            if not out:
                break
        return out

    def is_simple(self) -> bool:
        return not validate_simple(self)

    def require_geometry(self) -> GeometricRealization:
        if self.geometry is None:
            raise PolytopeError(f"polytope {self.name!r} has no geometric realization")
        return self.geometry


@dataclass(frozen=True)
class Face:
    """A k-face given by its full facet set and its vertex set."""

    facet_set: frozenset[int]
    vertex_set: frozenset[int]
    dim: int

    def sort_key(self) -> tuple:
        return (self.dim, tuple(sorted(self.vertex_set)))


def validate_simple(P: CombinatorialPolytope) -> list[str]:
    """Report every violation of the exactly-n-facets-per-vertex rule.

    Also flags duplicate facet vertex sets and empty facets; an empty report
    means the incidence data describes a simple polytope.
    """
    problems = []
    n = P.dim
    for v, fs in enumerate(P.vertex_facets):
        if len(fs) != n:
            problems.append(f"vertex {v} lies in {len(fs)} facets, expected {n}")
    seen: dict[frozenset[int], int] = {}
    for f in range(P.num_facets):
        verts = P.facet_vertices(f)
        if not verts:
            problems.append(f"facet {f} ({P.facet_names[f]}) has no vertices")
            continue
        if verts in seen:
            problems.append(f"facets {seen[verts]} and {f} have identical vertex sets")
        else:
            seen[verts] = f
    return problems


def facet_adjacency(P: CombinatorialPolytope) -> set[tuple[int, int]]:
    """Pairs (i, j), i < j, of facets sharing at least one vertex.

    For simple polytopes this is exactly nonempty intersection, which is
    always a codimension-2 contact.
    """
    if not P.is_simple():
        raise PolytopeError("facet adjacency is defined for simple polytopes")
    pairs: set[tuple[int, int]] = set()
    for fs in P.vertex_facets:
        for i, j in itertools.combinations(sorted(fs), 2):
            pairs.add((i, j))
    return pairs


def adjacency_lists(P: CombinatorialPolytope) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(P.num_facets)]
    for i, j in facet_adjacency(P):
        adj[i].add(j)
        adj[j].add(i)
    return adj


def enumerate_faces(P: CombinatorialPolytope, k: int) -> list[Face]:
    """All k-faces of a simple polytope, deduplicated by vertex set."""
    n = P.dim
    if not 0 <= k <= n - 1:
        raise PolytopeError(f"face dimension {k} out of range for dim {n}")
    if not P.is_simple():
        raise PolytopeError("face enumeration by facet subsets needs a simple polytope")
    codim = n - k
    by_vertex_set: dict[frozenset[int], Face] = {}
    for fs in P.vertex_facets:
        for sub in itertools.combinations(sorted(fs), codim):
            fsub = frozenset(sub)
            verts = P.common_vertices(fsub)
            if verts and verts not in by_vertex_set:
                by_vertex_set[verts] = Face(fsub, verts, k)
    return sorted(by_vertex_set.values(), key=Face.sort_key)


def all_proper_faces(P: CombinatorialPolytope) -> list[Face]:
    """Proper faces of any polytope, dims 0..n-1.

    Simple polytopes are handled combinatorially.  General polytopes need a
    geometric realization: faces are vertex sets closed under facet
    intersection, with dimension the affine rank of their coordinates.
    """
    if P.is_simple():
        faces = []
        for k in range(P.dim):
            faces.extend(enumerate_faces(P, k))
        return faces
    return _general_face_lattice(P)


def _affine_dim(coords: np.ndarray, tol: float = 1e-8) -> int:
    if len(coords) <= 1:
        return 0
    rel = coords[1:] - coords[0]
    s = np.linalg.svd(rel, compute_uv=False)
    scale = max(float(s[0]), 1.0) if len(s) else 1.0
    return int(np.sum(s > tol * scale))


def _general_face_lattice(P: CombinatorialPolytope) -> list[Face]:
    geo = P.require_geometry()
    m = P.num_facets
    # closure of facet-set intersections, keyed by vertex set
    frontier = {P.facet_vertices(f) for f in range(m)}
    seen: set[frozenset[int]] = set(frontier)
    while frontier:
        nxt = set()
        for verts in frontier:
            for f in range(m):
                inter = verts & P.facet_vertices(f)
                if inter and inter not in seen:
                    seen.add(inter)
                    nxt.add(inter)
        frontier = nxt
    faces = []
    for verts in seen:
        facet_set = frozenset(
            f for f in range(m) if verts <= P.facet_vertices(f)
        )
        dim = _affine_dim(geo.coords[sorted(verts)])
        if dim <= P.dim - 1:
            faces.append(Face(facet_set, verts, dim))
    return sorted(faces, key=Face.sort_key)


def vertex_figure_is_simplex(P: CombinatorialPolytope, facet: int) -> bool:
    """Whether a facet of a simple n-polytope is an (n-1)-simplex.

    An (n-1)-polytope is a simplex iff it has exactly n vertices.
    """
    return len(P.facet_vertices(facet)) == P.dim


def facet_neighbors(P: CombinatorialPolytope, facet: int) -> set[int]:
    out: set[int] = set()
    for fs in P.vertex_facets:
        if facet in fs:
            out |= set(fs)
    out.discard(facet)
    return out
