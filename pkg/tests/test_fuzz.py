import random

import pytest

from chromatope import builders
from chromatope.cells import CellComplex
from chromatope.coloring import find_coloring, opposite_facet_coloring
from chromatope.covers import multiplicity
from chromatope.fuzz import fuzz_covers, generate_cover
from chromatope.serialization import canonical_json


@pytest.fixture(scope="module")
def cube2_cx(cube2):
    return CellComplex(cube2, 8)


class TestGenerators:
    @pytest.mark.parametrize("profile", ["partition", "voronoi-merge", "random-growth"])
    def test_generated_covers_respect_the_bound(self, cube2, cube2_cx, profile):
        for trial in range(10):
            rng = random.Random(f"gen:{trial}")
            cov = generate_cover(cube2_cx, profile, rng)
            assert multiplicity(cov) <= cube2.dim

    def test_bricks_usually_exceed_the_bound(self, cube2, cube2_cx):
        over = 0
        for trial in range(20):
            rng = random.Random(f"bricks:{trial}")
            cov = generate_cover(cube2_cx, "shifted-bricks", rng)
            if multiplicity(cov) > cube2.dim:
                over += 1
        assert over > 0  # the n+1 filter has something to reject

    def test_generation_is_deterministic(self, cube2_cx):
        a = generate_cover(cube2_cx, "voronoi-merge", random.Random("x"))
        b = generate_cover(cube2_cx, "voronoi-merge", random.Random("x"))
        assert a.sets == b.sets

    def test_unknown_profile(self, cube2_cx):
        with pytest.raises(ValueError):
            generate_cover(cube2_cx, "nonsense", random.Random(0))


class TestHarness:
    def test_partition_always_witnesses(self, cube2):
        h = opposite_facet_coloring(cube2)
        rep = fuzz_covers(cube2, h, "partition", seed=7, trials=50,
                          checker="lebesgue", resolution=8)
        assert rep["accepted"] == 50
        assert rep["witnesses"] == {"SameColorPair": 50}
        assert rep["absences"] == []

    def test_zero_trials_empty_report(self, cube2):
        h = opposite_facet_coloring(cube2)
        rep = fuzz_covers(cube2, h, "partition", seed=1, trials=0, resolution=8)
        assert rep["trials"] == 0
        assert rep["accepted"] == 0 and rep["witnesses"] == {}

    def test_reports_are_byte_identical(self, cube2):
        h = opposite_facet_coloring(cube2)
        a = fuzz_covers(cube2, h, "voronoi-merge", seed=3, trials=20, resolution=8)
        b = fuzz_covers(cube2, h, "voronoi-merge", seed=3, trials=20, resolution=8)
        assert canonical_json(a) == canonical_json(b)

    def test_bricks_rejected_and_accepted_split(self, cube3):
        h = opposite_facet_coloring(cube3)
        rep = fuzz_covers(cube3, h, "shifted-bricks", seed=5, trials=30,
                          checker="lebesgue", resolution=8)
        assert rep["accepted"] + rep["rejected"] == 30
        assert rep["rejected"] > 0
        witnessed = sum(rep["witnesses"].values())
        assert witnessed == rep["accepted"]

    def test_kkm_fuzz_on_simplex(self):
        S = builders.simplex(2)
        h = find_coloring(S, 3)
        rep = fuzz_covers(S, h, "voronoi-merge", seed=2, trials=25,
                          checker="kkm", resolution=8)
        assert rep["witnesses"].get("AllColors", 0) == rep["accepted"] == 25

    def test_karasev_fuzz_on_hexagon(self, hexagon):
        rep = fuzz_covers(hexagon, None, "random-growth", seed=9, trials=25,
                          checker="karasev", resolution=8)
        assert rep["witnesses"].get("ManyFacets", 0) == 25
        assert rep["absences"] == []
