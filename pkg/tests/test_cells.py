import random

import numpy as np
import pytest

from chromatope import builders
from chromatope.cells import CellComplex
from chromatope.polytopes import PolytopeError


@pytest.fixture(scope="module")
def hex_complex(hexagon):
    return CellComplex(hexagon, 8)


@pytest.fixture(scope="module")
def cube3_complex(cube3):
    return CellComplex(cube3, 8)


class TestConstruction:
    def test_cube_grid_is_full(self, cube3_complex):
        assert cube3_complex.num_cells == 8**3
        assert len(cube3_complex.adjacency) == 3 * 8 * 8 * 7

    def test_hexagon_drops_outside_boxes(self, hex_complex, hexagon):
        assert hex_complex.num_cells < 64
        geo = hexagon.geometry
        for cell in hex_complex.cells:
            center = (cell.lo + cell.hi) / 2
            if geo.contains(center):
                assert cell.index == hex_complex.cell_at[cell.grid_pos]

    def test_cells_cover_the_polytope(self, hex_complex, hexagon):
        # Monte Carlo: every interior sample lies in some cell's box
        geo = hexagon.geometry
        rng = random.Random(11)
        hits = 0
        for _ in range(2000):
            p = np.array([rng.uniform(-1, 1), rng.uniform(-1, 1)])
            if not geo.contains(p, tol=-1e-9):
                continue
            hits += 1
            pos = tuple(
                min(int((p[d] - hex_complex.lo[d]) / hex_complex.widths[d]),
                    hex_complex.resolution - 1)
                for d in range(2)
            )
            assert pos in hex_complex.cell_at
        assert hits > 1000

    def test_cell_vertices_inside_polytope(self, hex_complex, hexagon):
        geo = hexagon.geometry
        for cell in hex_complex.cells:
            for p in cell.vertices:
                assert geo.contains(p, tol=1e-7)

    def test_unsupported_dimension(self):
        with pytest.raises(PolytopeError):
            CellComplex(builders.simplex(4), 4)

    def test_cube4_box_fast_path(self):
        cx = CellComplex(builders.cube(4), 4)
        assert cx.num_cells == 4**4


class TestAdjacency:
    def test_symmetric_lists(self, hex_complex):
        for i, j in hex_complex.adjacency:
            assert j in hex_complex.neighbors[i]
            assert i in hex_complex.neighbors[j]

    def test_no_diagonal_adjacency(self, cube3_complex):
        for i, j in cube3_complex.adjacency:
            a = cube3_complex.cells[i].grid_pos
            b = cube3_complex.cells[j].grid_pos
            assert sum(abs(x - y) for x, y in zip(a, b)) == 1

    def test_sliver_walls_are_dropped(self, hexagon):
        # boundary boxes can share a wall entirely outside the polygon
        cx = CellComplex(hexagon, 8)
        geo = hexagon.geometry
        for i, j in cx.adjacency:
            a, b = cx.cells[i], cx.cells[j]
            mid = (np.maximum(a.lo, b.lo) + np.minimum(a.hi, b.hi)) / 2
            # the wall midpoint should be essentially inside
            assert geo.contains(mid, tol=np.min(cx.widths))


class TestContacts:
    def test_every_facet_is_touched(self, hex_complex, hexagon):
        touched = set()
        for fs in hex_complex.cell_facets:
            touched |= fs
        assert touched == set(range(hexagon.num_facets))

    def test_boundary_cells_touch_at_least_one_facet(self, cube3_complex):
        r = cube3_complex.resolution
        for cell in cube3_complex.cells:
            on_boundary = any(
                g in (0, r - 1) for g in cell.grid_pos
            )
            if on_boundary:
                assert cube3_complex.cell_facets[cell.index]

    def test_interior_cells_touch_nothing(self, cube3_complex):
        r = cube3_complex.resolution
        for cell in cube3_complex.cells:
            if all(0 < g < r - 1 for g in cell.grid_pos):
                assert not cube3_complex.cell_facets[cell.index]

    def test_contact_respects_delta(self, hex_complex, hexagon):
        geo = hexagon.geometry
        for cell, contacts in zip(hex_complex.cells, hex_complex.cell_facets):
            for f in contacts:
                dists = geo.offsets[f] - cell.vertices @ geo.normals[f]
                assert dists.min() <= hex_complex.delta + 1e-12


class TestPoints:
    def test_points_are_in_their_cells(self, hex_complex):
        pc = hex_complex.point_cells.tocoo()
        for pi, ci in zip(pc.row, pc.col):
            p = hex_complex.points[pi]
            cell = hex_complex.cells[ci]
            tol = 1e-6 * hex_complex.scale
            assert np.all(p >= cell.lo - tol) and np.all(p <= cell.hi + tol)

    def test_grid_corner_incidence_count(self, cube3_complex):
        # a strictly interior grid corner belongs to exactly 8 boxes
        counts = np.asarray(cube3_complex.point_cells.sum(axis=1)).ravel()
        r = cube3_complex.resolution
        interior = 0
        for pi, p in enumerate(cube3_complex.points):
            g = p / cube3_complex.widths
            if np.allclose(g, np.round(g)) and np.all(np.round(g) > 0) and np.all(
                np.round(g) < r
            ):
                interior += 1
                assert counts[pi] == 8
        assert interior == (r - 1) ** 3

    def test_restriction_keeps_grid_alignment(self, cube3):
        cx = CellComplex(cube3, 8)
        T = builders.truncate_vertex(cube3, 0)
        sub, mapping = cx.restricted_to(T)
        assert sub.resolution == cx.resolution
        assert np.allclose(sub.lo, cx.lo) and np.allclose(sub.widths, cx.widths)
        # every surviving cell keeps its grid position
        for old, new in mapping.items():
            assert cx.cells[old].grid_pos == sub.cells[new].grid_pos
        # the truncated corner loses volume but no interior box disappears
        assert sub.num_cells >= cx.num_cells - 2
