"""Constructors for the polytope catalog.

All builders return a CombinatorialPolytope carrying a geometric realization.
Truncations cut with hyperplanes at an explicit offset and are validated
numerically: every vertex must lie exactly on its incident facet hyperplanes
and strictly inside all others.
"""

from __future__ import annotations

import itertools
import math
from typing import Optional, Sequence

import numpy as np

from .polytopes import (
    CombinatorialPolytope,
    Face,
    GeometricRealization,
    PolytopeError,
    all_proper_faces,
    validate_simple,
)


def _make(dim, facet_names, vertex_facets, name, coords, normals, offsets,
          check_simple=True) -> CombinatorialPolytope:
    normals = np.asarray(normals, dtype=float)
    offsets = np.asarray(offsets, dtype=float)
    lengths = np.linalg.norm(normals, axis=1)
    normals = normals / lengths[:, None]
    offsets = offsets / lengths
    geo = GeometricRealization(
        coords=np.asarray(coords, dtype=float), normals=normals, offsets=offsets
    )
    P = CombinatorialPolytope(
        dim=dim,
        facet_names=tuple(facet_names),
        vertex_facets=tuple(frozenset(fs) for fs in vertex_facets),
        name=name,
        geometry=geo,
    )
    geo_problems = geo.validate(P.vertex_facets)
    if geo_problems:
        raise PolytopeError(f"{name}: bad realization: {geo_problems[:3]}")
    if check_simple:
        problems = validate_simple(P)
        if problems:
            raise PolytopeError(f"{name}: not simple: {problems[:3]}")
    return P


def cube(n: int) -> CombinatorialPolytope:
    """Unit cube [0,1]^n.  Facets 0..n-1 are x_i=0, facets n..2n-1 are x_i=1."""
    if n < 1:
        raise PolytopeError("cube dimension must be >= 1")
    names = [f"x{i}=0" for i in range(n)] + [f"x{i}=1" for i in range(n)]
    coords = np.array(list(itertools.product([0.0, 1.0], repeat=n)))
    vertex_facets = []
    for p in coords:
        fs = {i if p[i] == 0.0 else n + i for i in range(n)}
        vertex_facets.append(fs)
    normals = np.vstack([-np.eye(n), np.eye(n)])
    offsets = np.concatenate([np.zeros(n), np.ones(n)])
    return _make(n, names, vertex_facets, f"cube({n})", coords, normals, offsets)


def simplex(n: int) -> CombinatorialPolytope:
    """Standard simplex x_i >= 0, sum x_i <= 1.  Facet i is x_i=0, facet n the slant."""
    if n < 1:
        raise PolytopeError("simplex dimension must be >= 1")
    names = [f"x{i}=0" for i in range(n)] + ["sum=1"]
    coords = np.vstack([np.zeros(n), np.eye(n)])
    vertex_facets = [set(range(n))]
    for i in range(n):
        vertex_facets.append({j for j in range(n) if j != i} | {n})
    normals = np.vstack([-np.eye(n), np.ones((1, n))])
    offsets = np.concatenate([np.zeros(n), [1.0]])
    return _make(n, names, vertex_facets, f"simplex({n})", coords, normals, offsets)


def polygon(m: int) -> CombinatorialPolytope:
    """Regular m-gon with unit circumradius; edge j joins vertices j, j+1."""
    if m < 3:
        raise PolytopeError("polygon needs at least 3 edges")
    angles = [2 * math.pi * (k + 0.5) / m for k in range(m)]
    coords = np.array([[math.cos(a), math.sin(a)] for a in angles])
    names = [f"e{j}" for j in range(m)]
    vertex_facets = [{(k - 1) % m, k} for k in range(m)]
    normals = []
    offsets = []
    for j in range(m):
        mid = 0.5 * (coords[j] + coords[(j + 1) % m])
        nrm = mid / np.linalg.norm(mid)
        normals.append(nrm)
        offsets.append(nrm @ coords[j])
    return _make(2, names, vertex_facets, f"polygon({m})", coords, normals, offsets)


def product(P: CombinatorialPolytope, Q: CombinatorialPolytope) -> CombinatorialPolytope:
    """Cartesian product; facets are F x Q then P x G."""
    gp, gq = P.require_geometry(), Q.require_geometry()
    n = P.dim + Q.dim
    names = [f"{P.name}:{f}" for f in P.facet_names] + [f"{Q.name}:{f}" for f in Q.facet_names]
    mp = P.num_facets
    vertex_facets = []
    coords = []
    for vp, fsp in enumerate(P.vertex_facets):
        for vq, fsq in enumerate(Q.vertex_facets):
            vertex_facets.append(set(fsp) | {mp + f for f in fsq})
            coords.append(np.concatenate([gp.coords[vp], gq.coords[vq]]))
    normals = np.zeros((mp + Q.num_facets, n))
    normals[:mp, : P.dim] = gp.normals
    normals[mp:, P.dim:] = gq.normals
    offsets = np.concatenate([gp.offsets, gq.offsets])
    return _make(n, names, vertex_facets, f"({P.name}x{Q.name})", coords, normals, offsets)


def prism(m: int) -> CombinatorialPolytope:
    """m-gonal prism, polygon(m) x segment."""
    return product(polygon(m), cube(1))


def _edges_at_vertex(P: CombinatorialPolytope, v: int) -> list[tuple[frozenset[int], int]]:
    """For a simple polytope: (edge facet set, other endpoint) per edge at v."""
    n = P.dim
    fs = sorted(P.vertex_facets[v])
    out = []
    for sub in itertools.combinations(fs, n - 1):
        fsub = frozenset(sub)
        verts = P.common_vertices(fsub)
        others = [u for u in verts if u != v]
        if len(others) != 1:
            raise PolytopeError(f"edge at vertex {v} has vertex set {sorted(verts)}")
        out.append((fsub, others[0]))
    return out


def truncate_vertices(
    P: CombinatorialPolytope,
    vertices: Sequence[int],
    eps: Optional[float] = None,
) -> CombinatorialPolytope:
    """Cut the given (pairwise non-adjacent) vertices of a simple polytope.

    Each cut adds one simplex facet.  The cut hyperplane at v has normal equal
    to the sum of the unit normals of the facets at v, pushed inward by eps.
    Default eps is 1/8 of the smallest vertex-to-neighbor gap along that
    normal, which also keeps distinct cut regions strongly separated.
    """
    if not P.is_simple():
        raise PolytopeError("vertex truncation needs a simple polytope")
    geo = P.require_geometry()
    n = P.dim
    vs = list(dict.fromkeys(vertices))
    if len(vs) != len(vertices):
        raise PolytopeError("duplicate vertices in truncation list")
    for v in vs:
        if not 0 <= v < P.num_vertices:
            raise PolytopeError(f"no vertex {v}")
    edge_data = {v: _edges_at_vertex(P, v) for v in vs}
    for a, b in itertools.combinations(vs, 2):
        if any(other == b for _, other in edge_data[a]):
            raise PolytopeError(f"vertices {a} and {b} are adjacent; cuts would collide")

    m = P.num_facets
    names = list(P.facet_names) + [f"cut{v}" for v in vs]
    cut_index = {v: m + i for i, v in enumerate(vs)}

    cut_normals = {}
    cut_offsets = {}
    gaps = {}
    for v in vs:
        a = geo.normals[sorted(P.vertex_facets[v])].sum(axis=0)
        a = a / np.linalg.norm(a)
        gap = min(a @ (geo.coords[v] - geo.coords[u]) for _, u in edge_data[v])
        if gap <= 0:
            raise PolytopeError(f"degenerate cut direction at vertex {v}")
        cut_normals[v] = a
        gaps[v] = gap
    for v in vs:
        e = gaps[v] / 8.0 if eps is None else eps
        if not 0 < e < gaps[v]:
            raise PolytopeError(
                f"cut offset {e} infeasible at vertex {v} (max {gaps[v]})"
            )
        cut_offsets[v] = cut_normals[v] @ geo.coords[v] - e

    new_vertex_facets = []
    new_coords = []
    keep = [u for u in range(P.num_vertices) if u not in set(vs)]
    for u in keep:
        new_vertex_facets.append(set(P.vertex_facets[u]))
        new_coords.append(geo.coords[u])
    for v in vs:
        a, b = cut_normals[v], cut_offsets[v]
        for edge_fs, u in edge_data[v]:
            t = (a @ geo.coords[v] - b) / (a @ (geo.coords[v] - geo.coords[u]))
            point = geo.coords[v] + t * (geo.coords[u] - geo.coords[v])
            new_vertex_facets.append(set(edge_fs) | {cut_index[v]})
            new_coords.append(point)

    normals = np.vstack([geo.normals] + [cut_normals[v][None, :] for v in vs])
    offsets = np.concatenate([geo.offsets, [cut_offsets[v] for v in vs]])
    label = f"trunc({P.name};{','.join(map(str, vs))})"
    return _make(n, names, new_vertex_facets, label, new_coords, normals, offsets)


def truncate_vertex(P, v: int, eps: Optional[float] = None) -> CombinatorialPolytope:
    return truncate_vertices(P, [v], eps)


def strongly_separated_vertices(P: CombinatorialPolytope, count: int) -> list[int]:
    """Greedy choice of pairwise non-adjacent vertices, smallest indices first."""
    chosen: list[int] = []
    for v in range(P.num_vertices):
        if len(chosen) == count:
            break
        edges = _edges_at_vertex(P, v)
        if all(all(u != c for _, u in edges) for c in chosen):
            chosen.append(v)
    if len(chosen) < count:
        raise PolytopeError(f"cannot find {count} pairwise non-adjacent vertices")
    return chosen


def total_truncation(
    P: CombinatorialPolytope, eps: float = 0.05
) -> tuple[CombinatorialPolytope, dict[int, Face], tuple[int, ...]]:
    """Truncate over all proper faces, producing the flag polytope.

    Facets of the result are indexed by the proper faces K of P (original
    facets keep their hyperplanes; every face of dim d <= n-2 contributes a
    cut), vertices by complete flags K_0 < ... < K_{n-1}.  Returns the
    polytope, the facet->face map, and the n-coloring by face dimension.

    Cut depths are graded by dimension (deeper for lower-dimensional faces)
    and scaled down automatically until the realization matches the flag
    combinatorics.
    """
    geo = P.require_geometry()
    n = P.dim
    faces = all_proper_faces(P)
    faces.sort(key=Face.sort_key)
    names = []
    for i, K in enumerate(faces):
        names.append(f"dim{K.dim}:{','.join(map(str, sorted(K.vertex_set)))}")
    coloring = tuple(K.dim + 1 for K in faces)  # colors 1..n by face dimension

    by_dim: dict[int, list[int]] = {}
    for i, K in enumerate(faces):
        by_dim.setdefault(K.dim, []).append(i)

    # complete flags via DFS on containment (vertex sets are nested)
    face_sets = [K.vertex_set for K in faces]
    contains: dict[int, list[int]] = {i: [] for i in range(len(faces))}
    for d in range(n - 1):
        for i in by_dim.get(d, []):
            for j in by_dim.get(d + 1, []):
                if face_sets[i] < face_sets[j]:
                    contains[i].append(j)
    flags: list[tuple[int, ...]] = []

    def grow(chain: list[int]):
        if len(chain) == n:
            flags.append(tuple(chain))
            return
        for j in contains[chain[-1]]:
            chain.append(j)
            grow(chain)
            chain.pop()

    for i in by_dim.get(0, []):
        grow([i])
    flags.sort()

    vertex_facets = [set(flag) for flag in flags]

    facet_dirs = np.zeros((len(faces), n))
    facet_vals = np.zeros(len(faces))
    for i, K in enumerate(faces):
        if K.dim == n - 1:
            f = next(iter(K.facet_set))
            facet_dirs[i] = geo.normals[f]
            facet_vals[i] = geo.offsets[f]
        else:
            c = geo.normals[sorted(K.facet_set)].sum(axis=0)
            norm = np.linalg.norm(c)
            if norm < 1e-12:
                raise PolytopeError(f"degenerate cut direction for face {names[i]}")
            facet_dirs[i] = c / norm
            x = geo.coords[min(K.vertex_set)]
            facet_vals[i] = facet_dirs[i] @ x

    scale = geo.scale()
    base = eps * scale
    for attempt in range(10):
        depths = np.zeros(len(faces))
        for i, K in enumerate(faces):
            if K.dim <= n - 2:
                # lower-dimensional faces are cut strictly deeper, else the
                # cut of a face never meets the facets of the faces above it
                depths[i] = base * 0.25 ** K.dim
        offsets = facet_vals - depths
        coords = np.empty((len(flags), n))
        ok = True
        for vi, flag in enumerate(flags):
            A = facet_dirs[list(flag)]
            b = offsets[list(flag)]
            try:
                coords[vi] = np.linalg.solve(A, b)
            except np.linalg.LinAlgError:
                ok = False
                break
        if ok:
            tol = 1e-9 * max(scale, 1.0)
            slack = offsets[None, :] - coords @ facet_dirs.T
            for vi, flag in enumerate(flags):
                on = np.abs(slack[vi]) <= tol
                want = np.zeros(len(faces), dtype=bool)
                want[list(flag)] = True
                if np.any(slack[vi] < -tol) or not np.array_equal(on, want):
                    ok = False
                    break
        if ok:
            label = f"total_trunc({P.name})"
            Q = _make(n, names, vertex_facets, label, coords, facet_dirs, offsets)
            face_of_facet = dict(enumerate(faces))
            return Q, face_of_facet, coloring
        base /= 2.0
    raise PolytopeError(f"total truncation of {P.name}: no feasible cut offset found")


def square_pyramid() -> CombinatorialPolytope:
    """Pyramid over a square: the smallest non-simple 3-polytope."""
    coords = np.array([
        [-1.0, -1.0, 0.0],
        [1.0, -1.0, 0.0],
        [1.0, 1.0, 0.0],
        [-1.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
    ])
    names = ["base", "south", "east", "north", "west"]
    normals = np.array([
        [0.0, 0.0, -1.0],
        [0.0, -1.0, 1.0],
        [1.0, 0.0, 1.0],
        [0.0, 1.0, 1.0],
        [-1.0, 0.0, 1.0],
    ])
    offsets = np.array([0.0, 1.0, 1.0, 1.0, 1.0])
    vertex_facets = [
        {0, 1, 4},
        {0, 1, 2},
        {0, 2, 3},
        {0, 3, 4},
        {1, 2, 3, 4},
    ]
    return _make(3, names, vertex_facets, "square_pyramid", coords, normals, offsets,
                 check_simple=False)


def octahedron() -> CombinatorialPolytope:
    """Regular octahedron |x|+|y|+|z| <= 1; simplicial, not simple."""
    coords = np.vstack([np.eye(3), -np.eye(3)])
    signs = list(itertools.product([1.0, -1.0], repeat=3))
    names = ["".join("+" if s > 0 else "-" for s in sg) for sg in signs]
    normals = np.array(signs)
    offsets = np.ones(8)
    vertex_facets = []
    for v, p in enumerate(coords):
        fs = {
            i for i, sg in enumerate(signs)
            if abs(np.dot(sg, p) - 1.0) < 1e-12
        }
        vertex_facets.append(fs)
    return _make(3, names, vertex_facets, "octahedron", coords, normals, offsets,
                 check_simple=False)


def build(descriptor: str) -> CombinatorialPolytope:
    """Parse builder descriptors like cube:3, simplex:2, polygon:6, prism:5,
    product:cube:1/cube:1, truncate:cube:3/0, truncate:cube:3/0,2,5,
    total:simplex:3, pyramid, octahedron."""
    desc = descriptor.strip()
    head, _, rest = desc.partition(":")
    if head == "cube":
        return cube(int(rest))
    if head == "simplex":
        return simplex(int(rest))
    if head == "polygon":
        return polygon(int(rest))
    if head == "prism":
        return prism(int(rest))
    if head == "product":
        left, _, right = rest.partition("/")
        return product(build(left), build(right))
    if head == "truncate":
        inner, _, which = rest.rpartition("/")
        P = build(inner)
        verts = [int(x) for x in which.split(",")] if which else [0]
        return truncate_vertices(P, verts)
    if head == "total":
        Q, _, _ = total_truncation(build(rest))
        return Q
    if head == "pyramid" and not rest:
        return square_pyramid()
    if head == "octahedron" and not rest:
        return octahedron()
    raise PolytopeError(f"unknown builder descriptor {descriptor!r}")
