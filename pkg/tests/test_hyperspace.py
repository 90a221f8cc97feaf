import numpy as np
import pytest

import oracles
from hyperlab import (
    CollectionSpec,
    FiniteMetricSpace,
    INFINITY,
    ModulusProfile,
    PointMap,
    check_modulus_transfer,
    cluster_members_check,
    enumerate_subsets,
    hausdorff_naive,
    hyper_atsuji_shadow,
    induced_apply,
    materialize,
    modulus_of_map,
    point_finite_multiplicity,
    singleton_embed,
    uniform_equivalence_profile,
    validate_metric,
)
from hyperlab.errors import MissingSingletonsError, TooLargeError
from hyperlab.families import naturals, reciprocals, tangent_grid, uniform_random


class TestEnumerate:
    def test_counts(self):
        assert len(enumerate_subsets(uniform_random(4, seed=0).space)) == 15
        single = validate_metric([[0.0]])
        assert len(enumerate_subsets(single)) == 1

    def test_ascending_bit_order(self, line_space):
        bits = [h.bits for h in enumerate_subsets(line_space)]
        assert bits == list(range(1, 16))

    def test_cap(self):
        space = naturals(21).space
        with pytest.raises(TooLargeError):
            enumerate_subsets(space)
        # caps are configuration, not contract constants
        assert len(enumerate_subsets(naturals(5).space, max_n=5)) == 31
        with pytest.raises(TooLargeError):
            enumerate_subsets(naturals(5).space, max_n=4)


class TestMaterialize:
    def test_two_point_space(self):
        space = FiniteMetricSpace.from_points([0.0, 1.0])
        view = materialize(space)
        assert [m.render() for m in view.members] == ["{0}", "{1}", "{0, 1}"]
        assert np.array_equal(
            view.space.dist, np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]], dtype=float)
        )
        assert view.validated

    def test_one_point_space(self):
        view = materialize(validate_metric([[0.0]]))
        assert view.space.dist.shape == (1, 1)
        assert view.space.dist[0, 0] == 0.0

    def test_singletons_reproduce_base_table(self):
        space = uniform_random(8, seed=2).space
        view = materialize(space, [space.singleton(i) for i in range(8)])
        assert np.array_equal(view.space.dist, space.dist)

    def test_table_values_match_oracle(self, rng):
        space = uniform_random(5, seed=7).space
        view = materialize(space)
        for p, a in enumerate(view.members):
            for q, b in enumerate(view.members):
                if p < q:
                    expect = oracles.hausdorff(space.dist, a.indices(), b.indices())
                    assert view.space.dist[p, q] == expect

    def test_rejects_duplicates(self, line_space):
        with pytest.raises(ValueError):
            materialize(line_space, [line_space.subset([0]), line_space.subset([0])])

    def test_member_cap(self, line_space):
        with pytest.raises(TooLargeError):
            materialize(line_space, max_members=3)

    def test_validation_policy(self):
        space = uniform_random(9, seed=1).space
        auto = materialize(space)  # 511 members > validate_members cap
        assert not auto.validated
        forced = materialize(space, validate=True)
        assert forced.validated


class TestSingletonEmbed:
    def test_flags_and_multiplicity(self):
        space = uniform_random(3, seed=0).space
        spec = singleton_embed(space)
        assert spec.includes_singletons
        assert spec.multiplicity == 1
        assert len(spec.members) == 3

    def test_isometry_on_random_spaces(self):
        for seed in range(6):
            space = uniform_random(2 + seed, seed=40 + seed).space
            view = materialize(space, singleton_embed(space).members)
            assert np.array_equal(view.space.dist, space.dist)


class TestInducedApply:
    def test_three_cycle(self):
        space = naturals(3).space
        f = PointMap(space, space, (1, 2, 0))
        assert induced_apply(f, space.subset([0, 2])).indices() == (0, 1)

    def test_constant_map(self, line_space):
        f = PointMap(line_space, line_space, (2, 2, 2, 2))
        for bits in range(1, 16):
            assert induced_apply(f, line_space.subset_from_bits(bits)).indices() == (2,)

    def test_identity(self, line_space):
        f = PointMap.identity(line_space)
        for bits in range(1, 16):
            a = line_space.subset_from_bits(bits)
            assert induced_apply(f, a) == a

    def test_union_distribution_and_monotonicity(self, rng):
        dom = uniform_random(7, seed=3).space
        cod = uniform_random(4, seed=4).space
        f = PointMap(dom, cod, tuple(int(v) for v in rng.integers(0, 4, 7)))
        for _ in range(30):
            a = dom.subset_from_bits(int(rng.integers(1, 128)))
            b = dom.subset_from_bits(int(rng.integers(1, 128)))
            assert induced_apply(f, a | b) == induced_apply(f, a) | induced_apply(f, b)
            if a.issubset(b):
                assert induced_apply(f, a).issubset(induced_apply(f, b))

    def test_bijection_lifts_to_bijection(self, rng):
        space = uniform_random(5, seed=9).space
        perm = tuple(int(v) for v in rng.permutation(5))
        f = PointMap(space, space, perm)
        assert f.invertible
        images = {induced_apply(f, a).bits for a in enumerate_subsets(space)}
        assert len(images) == 31

    def test_isometry_preserves_h_table(self):
        # relabeling the points permutes members but keeps all H values
        space = uniform_random(4, seed=5).space
        perm = (2, 0, 3, 1)
        relabeled = validate_metric(
            space.dist[np.ix_(perm, perm)], labels=[space.labels[i] for i in perm]
        )
        f = PointMap(space, relabeled, tuple(perm.index(j) for j in range(4)))
        for a in enumerate_subsets(space):
            for b in enumerate_subsets(space):
                assert hausdorff_naive(a, b) == hausdorff_naive(
                    induced_apply(f, a), induced_apply(f, b)
                )


class TestModulusProfile:
    def test_identity_profile(self):
        space = uniform_random(6, seed=8).space
        profile = modulus_of_map(PointMap.identity(space))
        for t, om in profile.samples:
            assert om == t

    def test_scaling_profile(self):
        base = naturals(6).space
        doubled = validate_metric(2.0 * base.dist)
        profile = modulus_of_map(PointMap(base, doubled, tuple(range(6))))
        for t, om in profile.samples:
            assert om == 2.0 * t

    def test_omega_nondecreasing_and_step_lookup(self, rng):
        dom = uniform_random(7, seed=10).space
        cod = uniform_random(7, seed=11).space
        f = PointMap(dom, cod, tuple(int(v) for v in rng.integers(0, 7, 7)))
        profile = modulus_of_map(f)
        omegas = [om for _, om in profile.samples]
        assert omegas == sorted(omegas)
        ts = profile.realized()
        assert profile.omega_at(ts[0] / 2) == 0.0
        assert profile.omega_at(ts[-1] + 1) == omegas[-1]

    def test_against_oracle(self, rng):
        dom = uniform_random(6, seed=12).space
        cod = uniform_random(5, seed=13).space
        images = tuple(int(v) for v in rng.integers(0, 5, 6))
        f = PointMap(dom, cod, images)
        pairs = [
            (dom.dist[i, j], cod.dist[images[i], images[j]])
            for i in range(6)
            for j in range(i + 1, 6)
        ]
        assert list(modulus_of_map(f).samples) == oracles.modulus(pairs)

    def test_tangent_grid_blowup_visible(self):
        bundle = tangent_grid(8)
        profile = modulus_of_map(bundle.companion_map)
        t_outer = bundle.space.dist[15, 16]  # gap between 7/8 and 8/9
        assert t_outer == pytest.approx(1 / 72, abs=1e-15)
        assert profile.omega_at(t_outer) >= 1.0

    def test_delta_star(self):
        profile = ModulusProfile(((0.25, 0.1), (0.5, 2.0)))
        assert profile.delta_star(0.1) == 0.5
        assert profile.delta_star(2.0) == INFINITY


class TestModulusTransfer:
    def test_identity_map(self):
        space = uniform_random(5, seed=14).space
        report = check_modulus_transfer(PointMap.identity(space))
        assert report.max_discrepancy == 0.0
        assert report.realized_match

    def test_random_bijection(self, rng):
        dom = uniform_random(6, seed=15).space
        cod = uniform_random(6, seed=16).space
        f = PointMap(dom, cod, tuple(int(v) for v in rng.permutation(6)))
        assert check_modulus_transfer(f).max_discrepancy == 0.0

    def test_three_cycle_uniform(self):
        space = validate_metric([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
        report = check_modulus_transfer(PointMap(space, space, (1, 2, 0)))
        assert report.max_discrepancy == 0.0

    def test_cap(self):
        space = uniform_random(11, seed=17).space
        with pytest.raises(TooLargeError):
            check_modulus_transfer(PointMap.identity(space))


class TestUniformEquivalence:
    def test_doubled_metric(self):
        base = uniform_random(5, seed=18).space
        doubled = validate_metric(2.0 * base.dist)
        report = uniform_equivalence_profile(base, doubled)
        for t, om in report.base_forward.samples:
            assert om == 2.0 * t
        for t, om in report.base_back.samples:
            assert om == 0.5 * t
        for t, om in report.hyper_forward.samples:
            assert om == 2.0 * t

    def test_same_metric_identity_profiles(self):
        space = uniform_random(4, seed=19).space
        report = uniform_equivalence_profile(space, space)
        for profile in (report.base_forward, report.hyper_forward,
                        report.base_back, report.hyper_back):
            assert all(om == t for t, om in profile.samples)

    def test_naturals_vs_reciprocals_delta_star(self):
        nat, rec = naturals(10).space, reciprocals(10).space
        report = uniform_equivalence_profile(nat, rec)
        # the pair (9, 10) sits at reciprocal distance 1/90 yet integer
        # distance 1, so the back direction needs delta at most 1/90
        assert report.base_back.delta_star(0.4) == pytest.approx(1 / 90, abs=1e-15)

    def test_requires_same_index_set(self):
        with pytest.raises(ValueError):
            uniform_equivalence_profile(naturals(3).space, naturals(4).space)


class TestCollections:
    def test_multiplicity_examples(self):
        space = uniform_random(5, seed=20).space
        singles = singleton_embed(space)
        assert point_finite_multiplicity(singles) == 1
        with_whole = CollectionSpec.from_members(
            list(singles.members) + [space.full_set()]
        )
        assert point_finite_multiplicity(with_whole) == 2
        chain = CollectionSpec.from_members(
            [space.subset(range(k + 1)) for k in range(5)]
        )
        assert point_finite_multiplicity(chain) == 5

    def test_includes_singletons_flag(self, line_space):
        spec = CollectionSpec.from_members(
            [line_space.singleton(i) for i in range(3)]
        )
        assert not spec.includes_singletons


class TestClusterMembersCheck:
    def test_disjoint_distant_family_vacuous(self):
        space = naturals(9).space
        members = [space.subset([k, k + 1]) for k in (0, 3, 6)]
        report = cluster_members_check(CollectionSpec.from_members(members), 0.5)
        assert report.flagged == ()
        assert report.ok

    def test_reciprocal_windows(self):
        space = reciprocals(20).space
        windows = [space.subset((k, k + 1)) for k in range(19)]
        spec = CollectionSpec.from_members(windows)
        assert spec.multiplicity == 2
        report = cluster_members_check(spec, 0.02)
        # crowding needs both adjacent windows within 0.02, which starts at
        # the window {1/8, 1/9}
        assert report.flagged == tuple(range(7, 19))
        assert report.ok

    def test_singletons_below_packing_vacuous(self):
        space = uniform_random(6, seed=21).space
        spec = singleton_embed(space)
        report = cluster_members_check(spec, 0.9 * space.packing_radius())
        assert report.flagged == ()

    def test_singletons_any_delta_no_violators(self):
        # a crowded singleton {x} always has a neighbor within delta, hence
        # isolation at most delta: violators are impossible
        for seed in range(5):
            space = uniform_random(7, seed=60 + seed).space
            spec = singleton_embed(space)
            for delta in (space.packing_radius(), space.diameter() / 2):
                assert cluster_members_check(spec, delta).ok


class TestHyperAtsujiShadow:
    def test_naturals_singletons(self):
        space = naturals(8).space
        profile = hyper_atsuji_shadow(singleton_embed(space), [0.125, 0.25, 0.5])
        assert (profile.table == 1.0).all()
        assert profile.min_isolation == 1.0

    def test_with_whole_space_member(self):
        space = naturals(8).space
        singles = singleton_embed(space)
        spec = CollectionSpec.from_members(list(singles.members) + [space.full_set()])
        profile = hyper_atsuji_shadow(spec, [0.5])
        assert profile.table[0, 0] > 0.0
        # H({k}, X) = max(k - 1, 8 - k) in point values
        view = materialize(space, spec.members)
        for k in range(8):
            assert view.space.dist[k, 8] == max(k, 7 - k)

    def test_missing_singleton_rejected(self):
        space = naturals(4).space
        spec = CollectionSpec.from_members([space.singleton(0), space.subset([1, 2])])
        with pytest.raises(MissingSingletonsError):
            hyper_atsuji_shadow(spec, [0.5])
