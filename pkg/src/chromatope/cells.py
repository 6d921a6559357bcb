"""Grid discretization of a realized polytope into closed convex cells.

The bounding box is split into resolution^n axis-aligned boxes and each box is
clipped to the polytope.  A cell's closure is box-and-polytope; cover sets are
closed unions of cells.  The complex precomputes everything the checkers
consume per cover: wall adjacency between cells, facet contact sets with a
delta tolerance of half the smallest cell width, and the pool of subdivision
vertices with point-in-closure incidence (as a sparse matrix, so covering
multiplicity is a single sparse product per cover).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .geometry import clip_region
from .polytopes import CombinatorialPolytope, PolytopeError


@dataclass
class Cell:
    index: int
    grid_pos: tuple[int, ...]
    lo: np.ndarray
    hi: np.ndarray
    vertices: np.ndarray  # vertices of box-and-polytope


class CellComplex:
    """Grid cells clipped to a polytope, with adjacency and facet contact."""

    def __init__(self, P: CombinatorialPolytope, resolution: int | None = None,
                 bounds: tuple[np.ndarray, np.ndarray] | None = None):
        geo = P.require_geometry()
        n = P.dim
        if resolution is None:
            resolution = 16 if n <= 3 else 8
        if bounds is None:
            lo = geo.coords.min(axis=0)
            hi = geo.coords.max(axis=0)
        else:
            lo, hi = np.asarray(bounds[0], float), np.asarray(bounds[1], float)
        self.polytope = P
        self.resolution = resolution
        self.lo = lo
        self.hi = hi
        self.widths = (hi - lo) / resolution
        self.scale = float(np.max(hi - lo))
        self.delta = 0.5 * float(np.min(self.widths))
        self._is_box = self._detect_box()
        if not self._is_box and n not in (2, 3):
            raise PolytopeError(
                f"grid discretization supports dim 2 and 3 (or boxes), got {n}"
            )
        self._build_cells()
        self._build_adjacency()
        self._build_contacts()
        self._build_points()

    # -- construction -------------------------------------------------------

    def _detect_box(self) -> bool:
        geo = self.polytope.geometry
        for nrm in geo.normals:
            if np.count_nonzero(np.abs(nrm) > 1e-12) != 1:
                return False
        return True

    def _box_bounds(self, pos) -> tuple[np.ndarray, np.ndarray]:
        pos = np.asarray(pos)
        return self.lo + pos * self.widths, self.lo + (pos + 1) * self.widths

    def _build_cells(self):
        P = self.polytope
        geo = P.geometry
        n = P.dim
        r = self.resolution
        self.cells: list[Cell] = []
        self.cell_at: dict[tuple[int, ...], int] = {}
        inner_vertices = [
            geo.coords[v] for v in range(P.num_vertices)
        ]
        for pos in itertools.product(range(r), repeat=n):
            lo, hi = self._box_bounds(pos)
            if self._is_box:
                corners = np.array([
                    [hi[i] if s else lo[i] for i, s in enumerate(bits)]
                    for bits in itertools.product((0, 1), repeat=n)
                ])
                verts = corners
            else:
                region = clip_region(n, lo, hi, geo.normals, geo.offsets)
                if region.is_empty():
                    continue
                verts = region.vertices()
                if len(verts) == 0:
                    continue
                if n == 3:
                    inside = [
                        p for p in inner_vertices
                        if np.all(p > lo - 1e-12) and np.all(p < hi + 1e-12)
                    ]
                    if inside:
                        verts = np.vstack([verts, np.array(inside)])
            idx = len(self.cells)
            self.cells.append(Cell(idx, pos, lo, hi, verts))
            self.cell_at[pos] = idx

    def _wall_measure(self, a: Cell, b: Cell, axis: int) -> float:
        geo = self.polytope.geometry
        n = self.polytope.dim
        plane = max(a.lo[axis], b.lo[axis])
        lo = np.maximum(a.lo, b.lo)
        hi = np.minimum(a.hi, b.hi)
        tol = 1e-9 * max(self.scale, 1.0)
        if n == 2:
            other = 1 - axis
            p = np.zeros(2)
            q = np.zeros(2)
            p[axis] = q[axis] = plane
            p[other], q[other] = lo[other], hi[other]
            t0, t1 = 0.0, 1.0
            d = q - p
            for nrm, off in zip(geo.normals, geo.offsets):
                denom = float(nrm @ d)
                num = float(off - nrm @ p)
                if abs(denom) < 1e-15:
                    if num < -tol:
                        return 0.0
                    continue
                t = num / denom
                if denom > 0:
                    t1 = min(t1, t)
                else:
                    t0 = max(t0, t)
            return max(0.0, (t1 - t0)) * float(np.linalg.norm(d))
        # n == 3: clip the shared rectangle by the polytope halfspaces
        axes = [i for i in range(3) if i != axis]
        quad = []
        for su, sv in ((0, 0), (1, 0), (1, 1), (0, 1)):
            p = np.zeros(3)
            p[axis] = plane
            p[axes[0]] = hi[axes[0]] if su else lo[axes[0]]
            p[axes[1]] = hi[axes[1]] if sv else lo[axes[1]]
            quad.append(p)
        from .geometry import clip_loop, polygon_area

        for nrm, off in zip(geo.normals, geo.offsets):
            quad = clip_loop(quad, nrm, off, 1e-12)
            if len(quad) < 3:
                return 0.0
        return polygon_area(quad)

    def _build_adjacency(self):
        n = self.polytope.dim
        tol = (1e-9 * max(self.scale, 1.0)) ** (n - 1)
        pairs: list[tuple[int, int]] = []
        for cell in self.cells:
            for axis in range(n):
                pos = list(cell.grid_pos)
                pos[axis] += 1
                other = self.cell_at.get(tuple(pos))
                if other is None:
                    continue
                b = self.cells[other]
                if self._is_box or self._wall_measure(cell, b, axis) > tol:
                    pairs.append((cell.index, other))
        self.adjacency = sorted(pairs)
        self.neighbors: list[list[int]] = [[] for _ in self.cells]
        for i, j in self.adjacency:
            self.neighbors[i].append(j)
            self.neighbors[j].append(i)

    def _build_contacts(self):
        geo = self.polytope.geometry
        contacts = []
        for cell in self.cells:
            slack = geo.offsets[None, :] - cell.vertices @ geo.normals.T
            near = np.min(slack, axis=0) <= self.delta
            contacts.append(frozenset(np.nonzero(near)[0].tolist()))
        self.cell_facets: list[frozenset[int]] = contacts
        self._face_contact_cache: dict[int, list[frozenset[int]]] = {}

    def _build_points(self):
        quant = 1e-6 * max(self.scale, 1.0)
        key_to_idx: dict[tuple[int, ...], int] = {}
        points: list[np.ndarray] = []
        for cell in self.cells:
            for p in cell.vertices:
                key = tuple(np.round(p / quant).astype(np.int64).tolist())
                if key not in key_to_idx:
                    key_to_idx[key] = len(points)
                    points.append(p)
        self.points = np.array(points)
        rows, cols = [], []
        tol = 1e-7 * max(self.scale, 1.0)
        for pi, p in enumerate(self.points):
            base = np.floor((p - self.lo) / self.widths - 0.5).astype(int)
            for offs in itertools.product((0, 1), repeat=self.polytope.dim):
                pos = tuple((base + np.array(offs)).tolist())
                ci = self.cell_at.get(pos)
                if ci is None:
                    continue
                cell = self.cells[ci]
                if np.all(p >= cell.lo - tol) and np.all(p <= cell.hi + tol):
                    rows.append(pi)
                    cols.append(ci)
        self.point_cells = sparse.csr_matrix(
            (np.ones(len(rows), dtype=np.int8), (rows, cols)),
            shape=(len(self.points), len(self.cells)),
        )

    # -- queries ------------------------------------------------------------

    @property
    def num_cells(self) -> int:
        return len(self.cells)

    def cell_face_contact(self, faces) -> list[frozenset[int]]:
        """Per cell: indices (into `faces`) of polytope faces within delta contact.

        A cell touches a face when some cell vertex is within delta of every
        defining facet hyperplane of that face.
        """
        geo = self.polytope.geometry
        out = []
        for cell in self.cells:
            slack = np.abs(geo.offsets[None, :] - cell.vertices @ geo.normals.T)
            hits = set()
            for fi, face in enumerate(faces):
                cols = sorted(face.facet_set)
                if np.any(np.max(slack[:, cols], axis=1) <= self.delta):
                    hits.add(fi)
            out.append(frozenset(hits))
        return out

    def restricted_to(self, Q: CombinatorialPolytope) -> tuple["CellComplex", dict[int, int]]:
        """Same grid layout, cells clipped to Q; returns (complex, old->new cell map)."""
        sub = CellComplex(Q, self.resolution, bounds=(self.lo, self.hi))
        mapping = {}
        for cell in self.cells:
            tgt = sub.cell_at.get(cell.grid_pos)
            if tgt is not None:
                mapping[cell.index] = tgt
        return sub, mapping
