"""Matrix exponential / logarithm / square root and their roundtrips."""

import numpy as np
import pytest

from reallog import (
    LogKind,
    NegativeAxisEigenvalue,
    NotInK,
    NotInKStar,
    UnsupportedJordanStructure,
    eigenvalues,
    expm,
    logm_principal,
    real_log_paired,
    sqrtm_real,
)
from reallog.matfuncs import expm_series
from reallog.errors import Overflow

from conftest import (
    blockdiag,
    conditioned_matrix,
    jordan_block,
    make_similar,
    random_k_matrix,
    random_semisimple_kstar,
    rotation_block,
)


class TestExpm:
    def test_zero(self):
        assert np.allclose(expm(np.zeros((3, 3))), np.eye(3))

    def test_skew_generator_quarter_turn(self):
        j = np.array([[0.0, 1.0], [-1.0, 0.0]])
        theta = np.pi / 4
        got = expm(theta * j)
        c, s = np.cos(theta), np.sin(theta)
        assert np.allclose(got, [[c, s], [-s, c]], atol=1e-14)
        assert np.abs(got - expm_series(theta * j, 30)).max() <= 1e-14

    def test_diagonal(self):
        got = expm(np.diag([np.log(2.0), np.log(3.0)]))
        assert np.allclose(got, np.diag([2.0, 3.0]), atol=1e-13)

    def test_against_series_oracle_small_norm(self, rng):
        for _ in range(40):
            n = int(rng.integers(1, 9))
            x = rng.standard_normal((n, n))
            x /= max(1.0, np.linalg.norm(x, "fro"))
            e1 = expm(x)
            e2 = expm_series(x, 30)
            assert np.linalg.norm(e1 - e2) <= 1e-12 * np.linalg.norm(e1)

    def test_commuting_arguments_multiply(self, rng):
        for _ in range(15):
            n = int(rng.integers(2, 7))
            g = rng.standard_normal((n, n)) / n
            a = g @ g + 0.3 * g  # polynomials in g commute
            b = 0.5 * g - g @ g @ g
            lhs = expm(a + b)
            rhs = expm(a) @ expm(b)
            assert np.linalg.norm(lhs - rhs) <= 1e-11 * np.linalg.norm(lhs)

    def test_scaling_path_large_norm(self, rng):
        # norm well above the Pade threshold so squaring kicks in
        x = rng.standard_normal((5, 5)) * 4.0
        assert np.linalg.norm(x, 1) > 5.4
        e = expm(x)
        # spectral mapping: eigenvalues of e^X are e^lam
        got = np.sort_complex(np.linalg.eigvals(e))
        want = np.sort_complex(np.exp(np.linalg.eigvals(x)))
        scale = np.abs(want).max()
        assert np.abs(got - want).max() <= 1e-8 * scale

    def test_overflow(self):
        with pytest.raises(Overflow):
            expm(np.diag([800.0, 800.0]))


class TestSqrtm:
    def test_identity(self):
        assert np.allclose(sqrtm_real(np.eye(4)), np.eye(4))

    def test_diagonal(self):
        assert np.allclose(sqrtm_real(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))

    def test_repeated_diagonal_coupling(self):
        t = np.array([[4.0, 1.0], [0.0, 4.0]])
        assert np.allclose(sqrtm_real(t), [[2.0, 0.25], [0.0, 2.0]])

    def test_negative_axis(self):
        with pytest.raises(NegativeAxisEigenvalue):
            sqrtm_real(np.diag([-1.0, 1.0]))
        with pytest.raises(NegativeAxisEigenvalue):
            sqrtm_real(np.diag([0.0, 1.0]))

    def test_rejects_full_matrix(self, rng):
        with pytest.raises(ValueError):
            sqrtm_real(rng.standard_normal((4, 4)) + 9 * np.eye(4))

    def test_quasi_blocks(self, rng):
        from reallog import real_schur

        a = rng.standard_normal((8, 8)) + 6 * np.eye(8)
        t = real_schur(a).t_quasi
        x = sqrtm_real(t)
        assert np.linalg.norm(x @ x - t) <= 1e-10 * np.linalg.norm(t)
        assert all(v.real > 0 for v in eigenvalues(x).values)


class TestLogmPrincipal:
    def test_identity(self):
        res = logm_principal(np.eye(3))
        assert np.allclose(res.log_matrix, 0.0)
        assert res.kind is LogKind.PRINCIPAL
        assert res.roundtrip_residual <= 1e-15

    def test_scalar(self):
        res = logm_principal(5.0 * np.eye(2))
        assert np.allclose(res.log_matrix, np.log(5.0) * np.eye(2))

    def test_rotation(self):
        c, s = np.cos(np.pi / 2), np.sin(np.pi / 2)
        res = logm_principal(np.array([[c, -s], [s, c]]))
        want = (np.pi / 2) * np.array([[0.0, -1.0], [1.0, 0.0]])
        assert np.allclose(res.log_matrix, want, atol=1e-12)
        assert res.roundtrip_residual <= 1e-12

    def test_not_in_k(self):
        with pytest.raises(NotInK):
            logm_principal(-np.eye(2))
        with pytest.raises(NotInK):
            logm_principal(np.diag([1.0, 0.0]))

    def test_roundtrip_random(self, rng):
        for _ in range(60):
            n = int(rng.integers(1, 11))
            a = random_k_matrix(rng, n, spread=2.0)
            res = logm_principal(a)
            assert res.roundtrip_residual <= 1e-8
            vals = eigenvalues(res.log_matrix).values
            assert all(abs(v.imag) < np.pi for v in vals)

    def test_inverse_roundtrip(self, rng):
        for _ in range(40):
            n = int(rng.integers(1, 9))
            x = rng.standard_normal((n, n))
            nx = np.linalg.norm(x, "fro")
            if nx > 2.0:
                x *= 2.0 / nx
            if any(abs(v.imag) >= np.pi - 0.1 for v in eigenvalues(x).values):
                continue
            back = logm_principal(expm(x)).log_matrix
            assert np.linalg.norm(back - x) <= 1e-7 * max(1.0, np.linalg.norm(x))

    def test_similarity_equivariance(self, rng):
        for _ in range(15):
            n = int(rng.integers(2, 8))
            a = random_k_matrix(rng, n, spread=1.5)
            s = conditioned_matrix(rng, n, 15.0)
            sinv = np.linalg.inv(s)
            lhs = logm_principal(s @ a @ sinv).log_matrix
            rhs = s @ logm_principal(a).log_matrix @ sinv
            assert np.linalg.norm(lhs - rhs) <= 1e-7 * max(1.0, np.linalg.norm(rhs))


class TestRealLogPaired:
    def test_negative_identity(self):
        res = real_log_paired(-np.eye(2))
        assert res.kind is LogKind.PAIRED_NEGATIVE_SEMISIMPLE
        assert res.roundtrip_residual <= 1e-10
        # one valid choice is pi J; certify via the roundtrip and realness
        assert np.allclose(np.abs(res.log_matrix), np.pi * np.array([[0, 1], [1, 0]]))

    def test_mixed_diagonal(self):
        res = real_log_paired(np.diag([-2.0, -2.0, 3.0]))
        assert res.roundtrip_residual <= 1e-10
        assert np.allclose(res.log_matrix[2, 2], np.log(3.0))
        assert np.allclose(res.log_matrix[:2, :2].diagonal(), np.log(2.0))

    def test_identity_passthrough(self):
        res = real_log_paired(np.eye(2))
        assert np.allclose(res.log_matrix, 0.0)
        assert res.kind is LogKind.PRINCIPAL

    def test_not_in_kstar(self):
        with pytest.raises(NotInKStar):
            real_log_paired(np.array([[0.0, -1.0], [-1.0, 0.0]]))
        with pytest.raises(NotInKStar):
            real_log_paired(np.diag([1.0, 0.0]))

    def test_defective_negative_rejected(self, rng):
        j = blockdiag([jordan_block(-1.0, 2), jordan_block(-1.0, 2)])
        a, _ = make_similar(rng, j, cond=10.0)
        with pytest.raises(UnsupportedJordanStructure):
            real_log_paired(a)

    def test_random_semisimple_pairs(self, rng):
        for _ in range(30):
            n = int(rng.integers(2, 9))
            j, _ = random_semisimple_kstar(rng, n)
            a, _ = make_similar(rng, j, cond=15.0)
            res = real_log_paired(a)
            assert res.kind is LogKind.PAIRED_NEGATIVE_SEMISIMPLE
            assert np.isrealobj(res.log_matrix)
            assert res.roundtrip_residual <= 1e-8

    def test_rotated_pair_with_spectator(self, rng):
        j = blockdiag(
            [jordan_block(-1.5, 1), jordan_block(-1.5, 1), rotation_block(2.0, 1.1)]
        )
        a, _ = make_similar(rng, j, cond=12.0)
        res = real_log_paired(a)
        assert res.roundtrip_residual <= 1e-9
