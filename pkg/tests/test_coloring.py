import itertools

import pytest

from chromatope import builders
from chromatope.coloring import (
    Coloring,
    ColoringError,
    chromatic_number,
    find_coloring,
    i_color_class,
    is_proper,
    joswig_colorable,
    opposite_facet_coloring,
)
from chromatope.polytopes import adjacency_lists, enumerate_faces


def brute_force_colorable(P, k):
    """Independent oracle: try every assignment of k colors to the facets."""
    adj = adjacency_lists(P)
    m = P.num_facets
    for assignment in itertools.product(range(1, k + 1), repeat=m):
        if all(assignment[i] != assignment[j]
               for i in range(m) for j in adj[i] if i < j):
            return True
    return False


class TestSearch:
    def test_square_two_colors(self, cube2):
        h = find_coloring(cube2, 2)
        assert h is not None and is_proper(cube2, h)

    def test_pentagon_needs_three(self):
        P = builders.polygon(5)
        assert find_coloring(P, 2) is None
        assert chromatic_number(P) == 3

    def test_simplex_chromatic_number(self):
        for n in (2, 3, 4):
            assert chromatic_number(builders.simplex(n)) == n + 1

    def test_search_is_deterministic(self, cube3):
        a = find_coloring(cube3, 3)
        b = find_coloring(cube3, 3)
        assert a == b

    def test_found_coloring_is_proper(self, cube3):
        h = find_coloring(cube3, 3)
        adj = adjacency_lists(cube3)
        for i in range(cube3.num_facets):
            for j in adj[i]:
                assert h(i) != h(j)

    def test_same_color_means_disjoint(self, cube3):
        # contrapositive of the shared-vertex lemma
        h = find_coloring(cube3, 3)
        for i, j in itertools.combinations(range(cube3.num_facets), 2):
            if h(i) == h(j):
                assert not (cube3.facet_vertices(i) & cube3.facet_vertices(j))


class TestJoswig:
    def test_cubes_pass(self):
        for n in (2, 3, 4):
            ok, offending = joswig_colorable(builders.cube(n))
            assert ok and offending == []

    def test_simplex_fails_with_triangles(self, simplex3):
        ok, offending = joswig_colorable(simplex3)
        assert not ok
        assert all(len(f.vertex_set) == 3 for f in offending)

    def test_total_truncation_passes_and_search_agrees(self, simplex3):
        Q, _, _ = builders.total_truncation(simplex3)
        ok, _ = joswig_colorable(Q)
        assert ok
        # oracle: exhaustive search with 3 colors succeeds
        assert find_coloring(Q, 3) is not None

    def test_criterion_equals_search_on_small_catalog(self):
        catalog = [
            builders.cube(2),
            builders.cube(3),
            builders.simplex(2),
            builders.simplex(3),
            builders.polygon(5),
            builders.polygon(6),
            builders.prism(3),
            builders.prism(4),
        ]
        for P in catalog:
            ok, _ = joswig_colorable(P)
            assert ok == (find_coloring(P, P.dim) is not None), P.name

    def test_prisms_split_by_parity(self):
        for m in range(3, 9):
            ok, _ = joswig_colorable(builders.prism(m))
            assert ok == (m % 2 == 0)

    def test_product_of_joswig_is_joswig(self, cube2, hexagon):
        Q = builders.product(hexagon, cube2)
        ok, _ = joswig_colorable(Q)
        assert ok
        assert find_coloring(Q, Q.dim) is not None


class TestColorClasses:
    def test_cube3_edge_class_is_the_two_transverse_axes(self, cube3):
        h = opposite_facet_coloring(cube3)
        # an edge along axis 2 lies in one facet of color 1 and one of color 2
        for edge in enumerate_faces(cube3, 1):
            colors = i_color_class(cube3, h, edge)
            assert len(colors) == 2
        edge = next(
            e for e in enumerate_faces(cube3, 1)
            if e.facet_set == frozenset({0, 1})
        )
        assert i_color_class(cube3, h, edge) == {1, 2}

    def test_vertex_class_is_everything(self, cube3):
        h = opposite_facet_coloring(cube3)
        for v in enumerate_faces(cube3, 0):
            assert i_color_class(cube3, h, v) == {1, 2, 3}

    def test_facet_class_is_singleton(self, cube3):
        h = opposite_facet_coloring(cube3)
        for f in enumerate_faces(cube3, 2):
            assert len(i_color_class(cube3, h, f)) == 1

    def test_foreign_face_rejected(self, cube3, simplex3):
        h = opposite_facet_coloring(cube3)
        alien = enumerate_faces(simplex3, 1)[0]
        with pytest.raises(ColoringError):
            i_color_class(cube3, h, alien)


class TestProperness:
    def test_improper_detected(self, cube3):
        bad = Coloring((1, 1, 2, 3, 2, 3), 3)
        assert not is_proper(cube3, bad)

    def test_opposite_facet_coloring(self, cube3):
        h = opposite_facet_coloring(cube3)
        assert is_proper(cube3, h)
        assert h.colors_used() == {1, 2, 3}

    def test_brute_force_agreement_tiny(self):
        # cross-check the backtracking against full enumeration where feasible
        for P, k in [(builders.polygon(5), 2), (builders.polygon(5), 3),
                     (builders.simplex(2), 2), (builders.simplex(2), 3)]:
            assert (find_coloring(P, k) is not None) == brute_force_colorable(P, k)
