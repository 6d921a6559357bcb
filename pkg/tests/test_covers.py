import random

import numpy as np
import pytest

from chromatope import builders
from chromatope.cells import CellComplex
from chromatope.coloring import Coloring, find_coloring, opposite_facet_coloring
from chromatope.covers import (
    AllColors,
    CoverError,
    CoverInstance,
    HypothesisViolation,
    ManyFacets,
    SameColorPair,
    check_colorful_kkm,
    check_colorful_lebesgue,
    check_general_polytope,
    check_karasev,
    check_quantitative_kkm,
    check_quantitative_lebesgue,
    components,
    multiplicity,
    revalidate,
    touched_facets,
)


def oracle_multiplicity(cov: CoverInstance) -> int:
    """Direct point-in-closure count at every subdivision vertex."""
    cx = cov.complex
    worst = 0
    for p in cx.points:
        cnt = 0
        for _, cells in cov.sets:
            for c in cells:
                cell = cx.cells[c]
                if np.all(p >= cell.lo - 1e-9) and np.all(p <= cell.hi + 1e-9):
                    cnt += 1
                    break
        worst = max(worst, cnt)
    return worst


def oracle_components(cx, cells):
    """Brute-force BFS flood fill over the adjacency pairs."""
    cells = set(cells)
    pairs = [(i, j) for i, j in cx.adjacency if i in cells and j in cells]
    comps = []
    seen = set()
    for start in sorted(cells):
        if start in seen:
            continue
        comp = {start}
        frontier = [start]
        while frontier:
            c = frontier.pop()
            for i, j in pairs:
                for a, b in ((i, j), (j, i)):
                    if a == c and b not in comp:
                        comp.add(b)
                        frontier.append(b)
        seen |= comp
        comps.append(tuple(sorted(comp)))
    return comps


def slab_cover(cx, axis, cuts):
    sets = {}
    for cell in cx.cells:
        band = sum(1 for c in cuts if cell.grid_pos[axis] >= c)
        sets.setdefault(f"s{band}", []).append(cell.index)
    return CoverInstance.from_dict(cx, sets)


def brick_label(pos):
    x, y, z = pos
    bz = z // 4
    xs, ys = x - bz % 2, y - 2 * (bz % 2)
    by = ys // 4
    bx = (xs - 2 * (by % 2)) // 4
    return f"{bx}:{by}:{bz}"


@pytest.fixture(scope="module")
def cube2_cx(cube2):
    return CellComplex(cube2, 8)


@pytest.fixture(scope="module")
def cube3_cx(cube3):
    return CellComplex(cube3, 8)


@pytest.fixture(scope="module")
def hex_cx(hexagon):
    return CellComplex(hexagon, 8)


class TestCoverInstance:
    def test_requires_total_cover(self, cube2_cx):
        with pytest.raises(CoverError):
            CoverInstance.from_dict(cube2_cx, {"a": [0, 1]})

    def test_rejects_empty_label(self, cube2_cx):
        with pytest.raises(CoverError):
            CoverInstance.from_dict(
                cube2_cx, {"a": list(range(cube2_cx.num_cells)), "b": []}
            )

    def test_single_label_multiplicity_one(self, cube2_cx):
        cov = CoverInstance.from_dict(
            cube2_cx, {"all": list(range(cube2_cx.num_cells))}
        )
        assert multiplicity(cov) == 1

    def test_partition_counts_shared_walls(self, cube2_cx):
        cov = slab_cover(cube2_cx, 0, [4])
        assert multiplicity(cov) == 2
        assert oracle_multiplicity(cov) == 2

    def test_shifted_brick_tiling_multiplicity_four(self, cube3):
        # the staggered pattern achieves exactly n+1 at brick corner points
        cx = CellComplex(cube3, 8)
        sets = {}
        for cell in cx.cells:
            sets.setdefault(brick_label(cell.grid_pos), []).append(cell.index)
        cov = CoverInstance.from_dict(cx, sets)
        assert multiplicity(cov) == 4
        assert oracle_multiplicity(cov) == 4

    def test_multiplicity_matches_oracle_randomized(self, cube2_cx):
        rng = random.Random(2)
        for _ in range(5):
            sets = {}
            for cell in cube2_cx.cells:
                sets.setdefault(f"r{rng.randrange(4)}", []).append(cell.index)
            # overlap: one label also grabs a random strip
            extra = [c.index for c in cube2_cx.cells if c.grid_pos[0] == 3]
            sets.setdefault("r0", []).extend(extra)
            cov = CoverInstance.from_dict(cx := cube2_cx, sets)
            assert multiplicity(cov) == oracle_multiplicity(cov)


class TestComponents:
    def test_single_cell(self, cube2_cx):
        sets = {"a": [0], "rest": list(range(1, cube2_cx.num_cells))}
        cov = CoverInstance.from_dict(cube2_cx, sets)
        assert components(cov, "a") == [(0,)]

    def test_corner_touch_is_disconnected(self, cube2_cx):
        # two cells sharing only a grid corner, not a wall
        a = cube2_cx.cell_at[(0, 0)]
        b = cube2_cx.cell_at[(1, 1)]
        rest = [c for c in range(cube2_cx.num_cells) if c not in (a, b)]
        cov = CoverInstance.from_dict(cube2_cx, {"x": [a, b], "rest": rest})
        assert len(components(cov, "x")) == 2

    def test_random_labels_match_flood_fill(self, cube2_cx):
        rng = random.Random(7)
        for _ in range(10):
            cells = sorted(rng.sample(range(cube2_cx.num_cells), 20))
            rest = [c for c in range(cube2_cx.num_cells) if c not in cells]
            cov = CoverInstance.from_dict(cube2_cx, {"x": cells, "rest": rest})
            assert components(cov, "x") == oracle_components(cube2_cx, cells)


class TestLebesgue:
    def test_three_slabs_on_cube3(self, cube3, cube3_cx):
        h = opposite_facet_coloring(cube3)
        cov = slab_cover(cube3_cx, 0, [3, 6])
        w = check_colorful_lebesgue(cube3, h, cov)
        assert isinstance(w, SameColorPair)
        assert revalidate(cube3_cx, w)
        # slabs span axes 1 and 2 fully, so the witness pair is forced
        assert h(w.facet_pair[0]) == h(w.facet_pair[1]) == w.color

    def test_l_shapes_on_square(self, cube2, cube2_cx):
        h = opposite_facet_coloring(cube2)
        ls, rest = [], []
        for cell in cube2_cx.cells:
            x, y = cell.grid_pos
            (ls if x < 4 or y < 4 else rest).append(cell.index)
        cov = CoverInstance.from_dict(cube2_cx, {"L": ls, "rest": rest})
        w = check_colorful_lebesgue(cube2, h, cov)
        assert w is not None and revalidate(cube2_cx, w)

    def test_multiplicity_hypothesis_enforced(self, cube2, cube2_cx):
        h = opposite_facet_coloring(cube2)
        # every cell in every one of three labels: multiplicity 3 > 2
        allcells = list(range(cube2_cx.num_cells))
        cov = CoverInstance.from_dict(
            cube2_cx, {"a": allcells, "b": allcells, "c": allcells}
        )
        with pytest.raises(HypothesisViolation):
            check_colorful_lebesgue(cube2, h, cov)

    def test_improper_coloring_rejected(self, cube2, cube2_cx):
        bad = Coloring((1, 1, 2, 2), 2)
        cov = CoverInstance.from_dict(
            cube2_cx, {"all": list(range(cube2_cx.num_cells))}
        )
        with pytest.raises(HypothesisViolation):
            check_colorful_lebesgue(cube2, bad, cov)


class TestKKM:
    def test_identity_cover_is_its_own_witness(self, simplex3):
        cx = CellComplex(simplex3, 8)
        h = find_coloring(simplex3, 4)
        cov = CoverInstance.from_dict(cx, {"all": list(range(cx.num_cells))})
        w = check_colorful_kkm(simplex3, h, cov)
        assert isinstance(w, AllColors)
        assert len(w.facets) == 4

    def test_simplex2_neighborhood_cover(self):
        S = builders.simplex(2)
        cx = CellComplex(S, 8)
        h = find_coloring(S, 3)
        near, far = [], []
        for cell in cx.cells:
            (near if cell.grid_pos[0] + cell.grid_pos[1] < 6 else far).append(cell.index)
        cov = CoverInstance.from_dict(cx, {"corner": near, "rest": far})
        w = check_colorful_kkm(S, h, cov)
        assert w is not None and revalidate(cx, w)

    def test_three_set_cover_on_truncated_cube(self, trunc_cube3, trunc_cube3_coloring):
        cx = CellComplex(trunc_cube3, 8)
        sets = {}
        for cell in cx.cells:
            sets.setdefault(f"s{min(cell.grid_pos[2] // 3, 2)}", []).append(cell.index)
        cov = CoverInstance.from_dict(cx, sets)
        w = check_colorful_kkm(trunc_cube3, trunc_cube3_coloring, cov)
        assert w is not None
        # oracle: exhaustive scan confirms some label component reaches all colors
        h = trunc_cube3_coloring
        found = False
        for label, _ in cov.sets:
            for comp in components(cov, label):
                colors = {h(f) for f in touched_facets(cx, comp)}
                if colors == {1, 2, 3, 4}:
                    found = True
        assert found

    def test_non_special_coloring_rejected(self, cube3, cube3_cx):
        h4 = Coloring((4, 2, 3, 1, 2, 3), 4)  # distinguished facet is a square
        cov = CoverInstance.from_dict(
            cube3_cx, {"all": list(range(cube3_cx.num_cells))}
        )
        with pytest.raises(Exception):
            check_colorful_kkm(cube3, h4, cov)


class TestKarasev:
    def test_one_set_cover_cube3(self, cube3, cube3_cx):
        cov = CoverInstance.from_dict(
            cube3_cx, {"all": list(range(cube3_cx.num_cells))}
        )
        w = check_karasev(cube3, cov)
        assert isinstance(w, ManyFacets)
        assert len(w.facets) == 6

    def test_middle_slab_touches_four_sides(self, cube3, cube3_cx):
        cov = slab_cover(cube3_cx, 0, [3, 6])
        w = check_karasev(cube3, cov)
        assert w is not None and len(set(w.facets)) >= 4

    def test_hexagon_random_covers(self, hexagon, hex_cx):
        from chromatope.fuzz import generate_cover

        for trial in range(20):
            rng = random.Random(f"kara:{trial}")
            cov = generate_cover(hex_cx, "voronoi-merge", rng)
            w = check_karasev(hexagon, cov)
            assert w is not None and len(set(w.facets)) >= 3


class TestQuantitative:
    def test_empty_family_k0(self, cube3, cube3_cx):
        h = opposite_facet_coloring(cube3)
        w = check_quantitative_lebesgue(cube3, h, cube3_cx, {}, k=0)
        assert w is not None
        assert len(w.faces) >= 8  # all 2^3 vertices are reachable

    def test_small_ball_k2(self, cube3, cube3_cx):
        h = opposite_facet_coloring(cube3)
        ball = [
            c.index for c in cube3_cx.cells
            if all(3 <= g <= 4 for g in c.grid_pos)
        ]
        w = check_quantitative_lebesgue(cube3, h, cube3_cx, {"ball": ball}, k=2)
        assert w is not None
        assert len(w.color_set) == 1
        assert len(w.faces) >= 2

    def test_two_plates_k1_with_prescribed_vertex(self, cube3, cube3_cx):
        h = opposite_facet_coloring(cube3)
        plates = {}
        for name, xs in (("p1", {2}), ("p2", {5})):
            plates[name] = [
                c.index for c in cube3_cx.cells
                if c.grid_pos[0] in xs
                and c.grid_pos[1] <= 6 and c.grid_pos[2] <= 6
            ]
        w = check_quantitative_lebesgue(
            cube3, h, cube3_cx, plates, k=1, prescribed_vertex=0
        )
        assert w is not None
        assert len(w.faces) >= 4
        from chromatope.polytopes import enumerate_faces

        edges = enumerate_faces(cube3, 1)
        assert any(0 in edges[fi].vertex_set for fi in w.faces)

    def test_same_color_plate_rejected(self, cube3, cube3_cx):
        h = opposite_facet_coloring(cube3)
        # a full slab touches both facets of color 2 and 3
        slab = [c.index for c in cube3_cx.cells if c.grid_pos[0] == 3]
        with pytest.raises(HypothesisViolation):
            check_quantitative_lebesgue(cube3, h, cube3_cx, {"slab": slab}, k=1)

    def test_kkm_empty_family_simplex(self, simplex3):
        cx = CellComplex(simplex3, 8)
        h = find_coloring(simplex3, 4)
        w = check_quantitative_kkm(simplex3, h, cx, {}, k=1)
        assert w is not None
        assert len(w.skeleton_faces) == 3  # C(3, 2) edges of a triangle facet
        assert len(w.outside_faces) >= 3  # C(3, 1)

    def test_kkm_small_ball_truncated_cube(self, trunc_cube3, trunc_cube3_coloring):
        cx = CellComplex(trunc_cube3, 8)
        ball = [
            c.index for c in cx.cells if all(3 <= g <= 4 for g in c.grid_pos)
        ]
        w = check_quantitative_kkm(
            trunc_cube3, trunc_cube3_coloring, cx, {"ball": ball}, k=1
        )
        assert w is not None

    def test_kkm_hypothesis_violation_distinct(self, trunc_cube3, trunc_cube3_coloring):
        cx = CellComplex(trunc_cube3, 8)
        everything = [c.index for c in cx.cells]
        with pytest.raises(HypothesisViolation):
            check_quantitative_kkm(
                trunc_cube3, trunc_cube3_coloring, cx, {"all": everything}, k=3
            )


class TestGeneralPolytope:
    def test_pyramid_one_set(self):
        P = builders.square_pyramid()
        cx = CellComplex(P, 8)
        cov = CoverInstance.from_dict(cx, {"all": list(range(cx.num_cells))})
        w = check_general_polytope(P, cov)
        assert w is not None
        assert len(w.face_vertex_sets) == 2
        assert w.face_vertex_sets[0] != w.face_vertex_sets[1]

    def test_octahedron_three_slabs(self):
        P = builders.octahedron()
        cx = CellComplex(P, 8)
        sets = {}
        for cell in cx.cells:
            sets.setdefault(f"s{min(cell.grid_pos[0] // 3, 2)}", []).append(cell.index)
        cov = CoverInstance.from_dict(cx, sets)
        w = check_general_polytope(P, cov)
        assert w is not None
        # oracle: the two faces really are distinct same-dimension faces
        from chromatope.polytopes import all_proper_faces

        faces = {tuple(sorted(f.vertex_set)): f.dim for f in all_proper_faces(P)}
        a, b = w.face_vertex_sets
        assert faces[a] == faces[b] == w.face_dim

    def test_cube_consistency_with_lebesgue(self, cube3):
        cx = CellComplex(cube3, 8)
        sets = {}
        for cell in cx.cells:
            sets.setdefault(f"s{min(cell.grid_pos[1] // 3, 2)}", []).append(cell.index)
        cov = CoverInstance.from_dict(cx, sets)
        h = opposite_facet_coloring(cube3)
        direct = check_colorful_lebesgue(cube3, h, cov)
        via_truncation = check_general_polytope(cube3, cov)
        assert direct is not None and via_truncation is not None


class TestStability:
    def test_refinement_preserves_witness(self, cube2):
        h = opposite_facet_coloring(cube2)
        coarse = CellComplex(cube2, 8)
        fine = CellComplex(cube2, 16)
        cov_c = slab_cover(coarse, 0, [4])
        # same cover expressed on the finer grid
        sets = {}
        for cell in fine.cells:
            band = 0 if cell.grid_pos[0] < 8 else 1
            sets.setdefault(f"s{band}", []).append(cell.index)
        cov_f = CoverInstance.from_dict(fine, sets)
        assert check_colorful_lebesgue(cube2, h, cov_c) is not None
        assert check_colorful_lebesgue(cube2, h, cov_f) is not None

    def test_witness_monotone_under_growth(self, cube2, cube2_cx):
        h = opposite_facet_coloring(cube2)
        cov = slab_cover(cube2_cx, 0, [4])
        w = check_colorful_lebesgue(cube2, h, cov)
        grown = dict(cov.as_dict())
        other = [lab for lab in grown if lab != w.label][0]
        grown[w.label] = sorted(set(grown[w.label]) | set(grown[other][:4]))
        cov2 = CoverInstance.from_dict(cube2_cx, grown)
        w2 = check_colorful_lebesgue(cube2, h, cov2)
        assert w2 is not None
