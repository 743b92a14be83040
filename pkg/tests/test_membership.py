"""Membership verdicts, Jordan profiles, approximants, openness radius."""

import numpy as np
import pytest

from reallog import (
    NotAnEigenvalue,
    NotInK,
    NotInKStar,
    Tag,
    UnsupportedJordanStructure,
    approximate_from_K,
    classify_spectrum,
    in_closure,
    in_K,
    in_K_star,
    jordan_profile,
    numerical_rank,
    openness_radius,
)
from reallog.membership import conservative_perturbation_radius, negative_invariant_split

from conftest import (
    blockdiag,
    conditioned_matrix,
    jordan_block,
    make_similar,
    random_jordan_structure,
    random_k_matrix,
    random_semisimple_kstar,
    rotation_block,
)


class TestClassifySpectrum:
    def test_positive_singletons(self):
        classes = classify_spectrum(np.diag([1.0, 2.0]))
        assert [c.tag for c in classes] == [Tag.POSITIVE_REAL, Tag.POSITIVE_REAL]
        assert sum(c.cluster_multiplicity for c in classes) == 2

    def test_example_image(self):
        classes = classify_spectrum(np.array([[0.0, -1.0], [-1.0, 0.0]]))
        tags = {round(c.value.real): c.tag for c in classes}
        assert tags == {-1: Tag.NEGATIVE_REAL, 1: Tag.POSITIVE_REAL}

    def test_rotation_pair(self):
        classes = classify_spectrum(rotation_block(1.0, np.pi / 3))
        assert len(classes) == 1
        assert classes[0].tag is Tag.NON_REAL_PAIR
        assert classes[0].cluster_multiplicity == 2
        assert classes[0].value.imag > 0

    def test_zero_band(self):
        classes = classify_spectrum(np.diag([0.0, 1.0]))
        assert {c.tag for c in classes} == {Tag.ZERO, Tag.POSITIVE_REAL}

    def test_multiplicities_sum_to_n(self, rng):
        for _ in range(25):
            n = int(rng.integers(1, 9))
            j, _ = random_jordan_structure(rng, n)
            a, _ = make_similar(rng, j, cond=10.0)
            classes = classify_spectrum(a)
            assert sum(c.cluster_multiplicity for c in classes) == n

    def test_defective_shadow_reclassified(self, rng):
        # a similarity of J_4(-1) splashes its eigenvalue off the axis by
        # ~eps**(1/4); the rank probe must still call it negative-real
        a, _ = make_similar(rng, jordan_block(-1.0, 4), cond=8.0)
        classes = classify_spectrum(a)
        assert all(c.tag is Tag.NEGATIVE_REAL for c in classes)


class TestJordanProfile:
    def test_semisimple_pair(self):
        prof = jordan_profile(np.diag([-1.0, -1.0]), -1.0)
        assert prof.block_counts == {1: 2}

    def test_single_defective_block(self):
        prof = jordan_profile(jordan_block(-1.0, 2), -1.0)
        assert prof.block_counts == {2: 1}

    def test_paired_defective_blocks(self):
        j = blockdiag([jordan_block(-1.0, 2), jordan_block(-1.0, 2)])
        prof = jordan_profile(j, -1.0)
        assert prof.block_counts == {2: 2}

    def test_not_an_eigenvalue(self):
        with pytest.raises(NotAnEigenvalue):
            jordan_profile(np.diag([1.0, 2.0]), -3.0)

    def test_consistency_invariant(self, rng):
        for _ in range(20):
            n = int(rng.integers(2, 9))
            j, _ = random_jordan_structure(rng, n, allow_zero=False)
            a, _ = make_similar(rng, j, cond=10.0)
            vals = sorted({round(v, 6) for v in np.diag(j)})
            for mu in vals:
                want = int(np.sum(np.isclose(np.diag(j), mu)))
                prof = jordan_profile(a, float(mu))
                assert prof.algebraic_multiplicity() == want

    def test_profile_matches_construction(self, rng):
        j = blockdiag(
            [jordan_block(-2.0, 3), jordan_block(-2.0, 1), jordan_block(1.0, 2)]
        )
        a, _ = make_similar(rng, j, cond=10.0)
        prof = jordan_profile(a, -2.0)
        assert prof.block_counts == {1: 1, 3: 1}


class TestMembership:
    def test_identity_in_k(self):
        assert in_K(np.eye(3)).in_set

    def test_negative_identity(self):
        v = in_K(-np.eye(2))
        assert not v.in_set and "negative" in v.witness
        assert in_K_star(-np.eye(2)).in_set
        assert in_closure(-np.eye(2)).in_set

    def test_rotation_in_k(self):
        assert in_K(rotation_block(1.0, 2 * np.pi / 3)).in_set

    def test_example_image_not_in_kstar(self):
        v = in_K_star(np.array([[0.0, -1.0], [-1.0, 0.0]]))
        assert not v.in_set
        assert "block size 1" in v.witness and "odd" in v.witness

    def test_paired_defective_in_kstar(self, rng):
        j = blockdiag([jordan_block(-1.0, 2), jordan_block(-1.0, 2)])
        a, _ = make_similar(rng, j, cond=10.0)
        assert in_K_star(a).in_set

    def test_mixed_sizes_not_in_kstar(self, rng):
        j = blockdiag([jordan_block(-1.0, 2), np.diag([-1.0]), np.diag([-1.0])])
        a, _ = make_similar(rng, j, cond=10.0)
        assert not in_K_star(a).in_set

    def test_singular_not_in_kstar(self):
        assert not in_K_star(np.diag([1.0, 0.0])).in_set

    def test_closure_examples(self):
        assert in_closure(np.zeros((3, 3))).in_set
        assert not in_closure(np.diag([-1.0, 1.0])).in_set

    def test_chain_property(self, rng):
        # in_K => in_K_star => invertible; in_K_star => in_closure
        for _ in range(150):
            n = int(rng.integers(1, 9))
            if rng.random() < 0.5:
                a = rng.standard_normal((n, n))
            else:
                j, _ = random_jordan_structure(rng, n)
                a, _ = make_similar(rng, j, cond=10.0)
            k = in_K(a).in_set
            ks = in_K_star(a).in_set
            cl = in_closure(a).in_set
            if k:
                assert ks
            if ks:
                assert numerical_rank(a) == n
                assert cl

    def test_oracle_equivalence_constructed(self, rng):
        for _ in range(120):
            n = int(rng.integers(2, 9))
            j, truth = random_jordan_structure(rng, n)
            a, _ = make_similar(rng, j, cond=20.0)
            assert in_K_star(a).in_set == truth, (np.diag(j), truth)

    def test_similarity_invariance(self, rng):
        for _ in range(40):
            n = int(rng.integers(2, 8))
            j, _ = random_jordan_structure(rng, n)
            a, _ = make_similar(rng, j, cond=10.0)
            s = conditioned_matrix(rng, n, 10.0)
            b = s @ a @ np.linalg.inv(s)
            assert in_K(a).in_set == in_K(b).in_set
            assert in_K_star(a).in_set == in_K_star(b).in_set

    def test_positive_scaling_invariance(self, rng):
        for _ in range(40):
            n = int(rng.integers(1, 8))
            j, _ = random_jordan_structure(rng, n)
            a, _ = make_similar(rng, j, cond=10.0)
            c = float(rng.uniform(0.2, 5.0))
            assert in_K(a).in_set == in_K(c * a).in_set
            assert in_K_star(a).in_set == in_K_star(c * a).in_set
            assert in_closure(a).in_set == in_closure(c * a).in_set


class TestOpennessRadius:
    def test_identity(self):
        assert openness_radius(np.eye(2)) == pytest.approx(0.5)

    def test_diag(self):
        assert openness_radius(np.diag([2.0, 3.0])) == pytest.approx(1.0)

    def test_rotation(self):
        assert openness_radius(rotation_block(1.0, np.pi / 2)) == pytest.approx(0.5)

    def test_not_in_k(self):
        with pytest.raises(NotInK):
            openness_radius(-np.eye(2))

    def test_openness_property(self, rng):
        # perturbations inside the conservative radius never leave K
        for _ in range(25):
            n = int(rng.integers(2, 7))
            cond = 8.0
            d = blockdiag(
                [rotation_block(1.5, 0.9)]
                + [np.diag([float(v)]) for v in rng.uniform(0.5, 3.0, n - 2)]
            )
            a, _ = make_similar(rng, d, cond=cond)
            assert in_K(a).in_set
            eta = conservative_perturbation_radius(a, cond)
            assert eta > 0
            for _ in range(20):
                e = rng.standard_normal((n, n))
                e *= rng.uniform(0.1, 1.0) * eta / np.linalg.norm(e)
                assert in_K(a + e).in_set


class TestApproximateFromK:
    def test_negative_identity(self):
        a = -np.eye(2)
        out = approximate_from_K(a, 0.1)
        assert np.linalg.norm(out - a) <= 0.1
        assert in_K(out).in_set

    def test_already_in_k(self):
        assert np.array_equal(approximate_from_K(np.eye(3), 0.5), np.eye(3))

    def test_spectator_untouched(self):
        a = np.diag([-2.0, -2.0, 5.0])
        out = approximate_from_K(a, 0.01)
        assert out[2, 2] == pytest.approx(5.0, abs=1e-12)
        assert np.linalg.norm(out - a) <= 0.01

    def test_rejects_non_kstar(self):
        with pytest.raises(NotInKStar):
            approximate_from_K(np.array([[0.0, -1.0], [-1.0, 0.0]]), 0.1)

    def test_rejects_defective(self, rng):
        j = blockdiag([jordan_block(-1.0, 2), jordan_block(-1.0, 2)])
        a, _ = make_similar(rng, j, cond=10.0)
        with pytest.raises(UnsupportedJordanStructure):
            approximate_from_K(a, 0.1)

    @pytest.mark.parametrize("eps", [1e-1, 1e-3, 1e-6])
    def test_distance_and_membership(self, rng, eps):
        for _ in range(15):
            n = int(rng.integers(2, 8))
            j, _ = random_semisimple_kstar(rng, n)
            a, _ = make_similar(rng, j, cond=12.0)
            out = approximate_from_K(a, eps)
            assert np.linalg.norm(out - a, "fro") <= eps
            assert in_K(out).in_set


class TestNegativeInvariantSplit:
    def test_no_negatives(self):
        assert negative_invariant_split(np.eye(3)) is None

    def test_block_structure(self, rng):
        j, negs = random_semisimple_kstar(rng, 6)
        a, _ = make_similar(rng, j, cond=10.0)
        split = negative_invariant_split(a)
        got = sorted(mu for mu, _ in split.negatives)
        assert got == pytest.approx(sorted(negs), abs=1e-8)
        coords = split.basis_inv @ a @ split.basis
        at = 0
        for mu, size in split.negatives:
            blk = coords[at : at + size, at : at + size]
            assert np.allclose(blk, mu * np.eye(size), atol=1e-8)
            at += size
