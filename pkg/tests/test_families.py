import math

import numpy as np
import pytest

import oracles
from hyperlab import check_metric, hausdorff_naive, induced_apply
from hyperlab.errors import BadParamsError, UnknownNameError
from hyperlab.families import (
    FamilySpec,
    generate,
    naturals,
    ortho_scaled,
    reciprocals,
    sequence,
    tangent_grid,
    uniform_random,
)


class TestNaturals:
    def test_isolation_constant_one(self):
        space = naturals(10).space
        assert all(space.isolation(k) == 1.0 for k in range(10))

    def test_labels_and_metric(self):
        space = naturals(4).space
        assert space.labels == ("1", "2", "3", "4")
        assert space.dist[0, 3] == 3.0


class TestReciprocals:
    def test_packing_radius_formula(self):
        for n in (5, 10, 50):
            got = reciprocals(n).space.packing_radius()
            assert got == pytest.approx(1 / (n * (n - 1)), abs=1e-12)

    def test_table_validates(self):
        assert check_metric(reciprocals(30).space.dist) == []


class TestTangentGrid:
    def test_point_count_and_symmetry(self):
        bundle = tangent_grid(4)
        assert bundle.space.n == 9
        assert bundle.space.labels[0] == "-4/5"
        assert bundle.space.labels[4] == "0"

    def test_companion_map_formula(self):
        # the blow-up x / (1 - |x|) sends 3/4 to 3 and -4/5 to -4
        bundle = tangent_grid(4)
        fmap = bundle.companion_map
        values = [-k / (k + 1) for k in range(4, 0, -1)] + [0.0] + [
            k / (k + 1) for k in range(1, 5)
        ]
        for idx, x in enumerate(values):
            expect = 0.0 if x == 0 else x / (1 - abs(x))
            image_value = float(fmap.codomain.labels[fmap.images[idx]])
            assert image_value == pytest.approx(expect, abs=1e-12)
        assert float(fmap.codomain.labels[fmap.images[values.index(3 / 4)]]) == 3.0
        assert float(fmap.codomain.labels[fmap.images[values.index(-4 / 5)]]) == -4.0

    def test_companion_is_bijection(self):
        assert tangent_grid(6).companion_map.invertible

    def test_blocks_nested(self):
        bundle = tangent_grid(8)
        blocks = sequence(bundle, "A_n")
        assert len(blocks) == 8
        for a, b in zip(blocks, blocks[1:]):
            assert a.issubset(b) and a != b

    def test_block_gaps_and_image_gaps(self):
        bundle = tangent_grid(8)
        blocks = sequence(bundle, "A_n")
        fmap = bundle.companion_map
        for j in range(7):
            h = hausdorff_naive(blocks[j], blocks[j + 1])
            n = j + 1
            assert h == pytest.approx(1 / ((n + 1) * (n + 2)), abs=1e-15)
            hp = hausdorff_naive(
                induced_apply(fmap, blocks[j]), induced_apply(fmap, blocks[j + 1])
            )
            assert hp == 1.0


class TestOrthoScaled:
    def test_distance_formulas(self):
        space = ortho_scaled(3, 3).space
        at = {label: i for i, label in enumerate(space.labels)}
        assert space.dist[at["e1/1"], at["e2/1"]] == math.sqrt(2)
        assert space.dist[at["e1/2"], at["e1/3"]] == pytest.approx(1 / 6, abs=1e-15)
        assert space.dist[at["e2/3"], at["0"]] == pytest.approx(1 / 3, abs=1e-15)

    def test_table_validates(self):
        assert check_metric(ortho_scaled(4, 6).space.dist) == []

    def test_pairs_all_at_distance_one(self):
        bundle = ortho_scaled(12, 1)
        pairs = sequence(bundle, "pair_0_en")
        for i in range(len(pairs)):
            for j in range(i + 1, len(pairs)):
                assert hausdorff_naive(pairs[i], pairs[j]) == 1.0

    def test_pair_distance_matches_oracle(self):
        bundle = ortho_scaled(5, 1)
        pairs = sequence(bundle, "pair_0_en")
        d = bundle.space.dist
        got = hausdorff_naive(pairs[0], pairs[3])
        assert got == oracles.hausdorff(d, pairs[0].indices(), pairs[3].indices())

    def test_walk_heads_toward_origin(self):
        bundle = ortho_scaled(2, 10)
        walk = sequence(bundle, "e1_over_n")
        origin = bundle.named_points["0"]
        gaps = [bundle.space.dist[i, origin] for i in walk.items]
        assert gaps == sorted(gaps, reverse=True)
        assert gaps[-1] == pytest.approx(0.1, abs=1e-15)


class TestUniformRandom:
    def test_seed_reproducibility(self):
        a = uniform_random(20, seed=7).space
        b = uniform_random(20, seed=7).space
        assert np.array_equal(a.dist, b.dist)

    def test_different_seeds_differ(self):
        a = uniform_random(20, seed=7).space
        b = uniform_random(20, seed=8).space
        assert not np.array_equal(a.dist, b.dist)

    def test_table_validates(self):
        assert check_metric(uniform_random(40, seed=1).space.dist) == []


class TestGenerateDispatch:
    def test_round_trips(self):
        bundle = generate(FamilySpec("NATURALS", {"N": 6}))
        assert bundle.space.n == 6
        bundle = generate(FamilySpec("ORTHO_SCALED", {"M": 2, "N": 3}))
        assert bundle.space.n == 7
        bundle = generate(FamilySpec("UNIFORM_RANDOM", {"n": 5}, seed=3))
        assert np.array_equal(bundle.space.dist, uniform_random(5, seed=3).space.dist)

    def test_kind_is_case_insensitive(self):
        assert generate(FamilySpec("naturals", {"N": 3})).space.n == 3

    def test_bad_params(self):
        with pytest.raises(BadParamsError):
            generate(FamilySpec("NATURALS", {}))
        with pytest.raises(BadParamsError):
            generate(FamilySpec("NO_SUCH_KIND", {"N": 3}))
        with pytest.raises(BadParamsError):
            naturals(0)
        with pytest.raises(BadParamsError):
            ortho_scaled(0, 3)

    def test_unknown_sequence_name(self):
        with pytest.raises(UnknownNameError):
            sequence(naturals(3), "A_n")
