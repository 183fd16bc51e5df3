"""Tests for the real/complex expansion operators and Gram-Schmidt QR."""

import numpy as np
import pytest

from bostbc.linalg import (
    RankDeficient,
    check_expand,
    cvec,
    gram_schmidt_qr,
    kron,
    tilde_vec,
    trace_inner_product,
    untilde_vec,
)


def _rand_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


class TestCheckExpand:
    def test_real_scalar(self):
        assert np.array_equal(check_expand([[1.0]]), np.eye(2))

    def test_imaginary_scalar(self):
        expected = np.array([[0.0, -1.0], [1.0, 0.0]])
        assert np.array_equal(check_expand([[1j]]), expected)

    def test_product_homomorphism(self, rng):
        # oracle: multiply in complex arithmetic first, then expand
        for _ in range(10):
            a = _rand_complex(rng, (2, 2))
            b = _rand_complex(rng, (2, 2))
            direct = check_expand(a @ b)
            assert np.abs(check_expand(a) @ check_expand(b) - direct).max() < 1e-12

    def test_sum_and_adjoint_homomorphism(self, rng):
        for _ in range(10):
            a = _rand_complex(rng, (3, 3))
            b = _rand_complex(rng, (3, 3))
            assert np.abs(check_expand(a + b)
                          - (check_expand(a) + check_expand(b))).max() < 1e-12
            assert np.abs(check_expand(a.conj().T) - check_expand(a).T).max() < 1e-12


class TestTildeVec:
    def test_single_entry(self):
        assert np.array_equal(tilde_vec([1 + 2j]), [1.0, 2.0])

    def test_two_entries(self):
        assert np.array_equal(tilde_vec([1j, 1]), [0.0, 1.0, 1.0, 0.0])

    def test_round_trip(self, rng):
        x = _rand_complex(rng, 4)
        assert np.abs(untilde_vec(tilde_vec(x)) - x).max() == 0.0

    def test_untilde_rejects_odd_length(self):
        with pytest.raises(ValueError, match="even"):
            untilde_vec([1.0, 2.0, 3.0])

    def test_matrix_vector_compatibility(self, rng):
        # tilde(M x) == check(M) tilde(x)
        m = _rand_complex(rng, (3, 2))
        x = _rand_complex(rng, 2)
        assert np.abs(tilde_vec(m @ x) - check_expand(m) @ tilde_vec(x)).max() < 1e-12


class TestKron:
    def test_identity_times_scalar(self):
        assert np.array_equal(kron(np.eye(2), [[5.0]]), np.diag([5.0, 5.0]))

    def test_swap_structure(self):
        swap = np.array([[0.0, 1.0], [1.0, 0.0]])
        out = kron(swap, np.eye(2))
        expected = np.zeros((4, 4))
        expected[0:2, 2:4] = np.eye(2)
        expected[2:4, 0:2] = np.eye(2)
        assert np.array_equal(out, expected)

    def test_against_index_formula(self, rng):
        a = rng.standard_normal((2, 2))
        b = rng.standard_normal((2, 2))
        out = kron(a, b)
        for i in range(4):
            for j in range(4):
                assert out[i, j] == a[i // 2, j // 2] * b[i % 2, j % 2]


class TestGramSchmidtQr:
    def test_identity(self):
        res = gram_schmidt_qr(np.eye(4))
        assert np.array_equal(res.q, np.eye(4))
        assert np.array_equal(res.r, np.eye(4))

    def test_orthogonal_columns_give_diagonal_r(self):
        h = np.zeros((4, 2))
        h[0, 0] = 2.0
        h[1, 1] = 3.0
        res = gram_schmidt_qr(h)
        assert np.allclose(res.r, np.diag([2.0, 3.0]))
        assert np.allclose(res.q, h / [2.0, 3.0])

    def test_reconstruction(self, rng):
        for _ in range(5):
            h = rng.standard_normal((8, 8))
            if np.linalg.cond(h) > 1e3:
                continue
            res = gram_schmidt_qr(h)
            rel = np.linalg.norm(res.q @ res.r - h) / np.linalg.norm(h)
            assert rel < 1e-10

    def test_q_orthonormal_and_r_shape(self, rng):
        h = rng.standard_normal((10, 6))
        res = gram_schmidt_qr(h)
        assert np.abs(res.q.T @ res.q - np.eye(6)).max() < 1e-10
        assert np.array_equal(np.tril(res.r, -1), np.zeros((6, 6)))
        assert (np.diag(res.r) > 0).all()

    def test_rank_deficient_raises(self, rng):
        h = rng.standard_normal((6, 3))
        h[:, 2] = 2 * h[:, 0] - h[:, 1]
        with pytest.raises(RankDeficient):
            gram_schmidt_qr(h)

    def test_wide_matrix_raises(self, rng):
        with pytest.raises(RankDeficient, match="rows >= cols"):
            gram_schmidt_qr(rng.standard_normal((3, 5)))


class TestTraceInnerProduct:
    def test_identity_weights_give_squared_norm(self, rng):
        h = _rand_complex(rng, (2, 2))
        eye = np.eye(2)
        expected = np.linalg.norm(h) ** 2
        assert abs(trace_inner_product(h, eye, eye) - expected) < 1e-12

    def test_hurwitz_radon_pair_is_orthogonal(self, rng):
        # Alamouti pair; oracle = explicit equivalent-channel columns
        a1 = np.eye(2, dtype=complex)
        a2 = np.array([[0, -1], [1, 0]], dtype=complex)
        h = _rand_complex(rng, (2, 2))
        col1 = tilde_vec(cvec(h @ a1))
        col2 = tilde_vec(cvec(h @ a2))
        assert abs(col1 @ col2) < 1e-12
        assert abs(trace_inner_product(h, a1, a2)) < 1e-12

    def test_equals_column_inner_product(self, rng):
        for _ in range(10):
            h = _rand_complex(rng, (2, 2))
            a = _rand_complex(rng, (2, 2))
            b = _rand_complex(rng, (2, 2))
            expected = tilde_vec(cvec(h @ a)) @ tilde_vec(cvec(h @ b))
            assert abs(trace_inner_product(h, a, b) - expected) < 1e-10

    def test_self_product_nonnegative(self, rng):
        for _ in range(10):
            h = _rand_complex(rng, (2, 2))
            a = _rand_complex(rng, (2, 2))
            assert trace_inner_product(h, a, a) >= 0.0
