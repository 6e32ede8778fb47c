"""Tests for roots of unity, the Fourier matrix, line sums, classification,
and the matrix JSON schema."""

import math

import numpy as np
import pytest

from xubirkhoff import (
    DimensionError,
    classify,
    dft_matrix,
    line_sums,
    matrix_from_json,
    matrix_to_json,
    root_of_unity,
    van_der_waerden,
)
from xubirkhoff.numerics import dumps_json, max_abs_diff


class TestRootOfUnity:
    def test_third_root_closed_form(self):
        assert abs(root_of_unity(3, 1) - (-0.5 + 1j * math.sqrt(3) / 2)) < 1e-15

    def test_fifth_root_closed_form(self):
        want = (math.sqrt(5) - 1) / 4 + 1j * math.sqrt(10 + 2 * math.sqrt(5)) / 4
        assert abs(root_of_unity(5, 1) - want) < 1e-15

    def test_zeroth_power_is_one(self):
        assert root_of_unity(4, 0) == 1.0

    def test_rejects_zero_order(self):
        with pytest.raises(DimensionError):
            root_of_unity(0, 1)

    @pytest.mark.parametrize("n", [2, 3, 5, 8, 13])
    def test_exponents_add(self, n):
        for a in (-7, 0, 3, n, 5 * n + 2):
            for b in (-1, 2, n - 1):
                lhs = root_of_unity(n, a) * root_of_unity(n, b)
                assert abs(lhs - root_of_unity(n, a + b)) < 1e-14

    def test_large_exponent_reduced_exactly(self):
        # mod-n reduction keeps w^(k*n) at exactly 1 for huge k
        assert root_of_unity(7, 7 * 10**9) == root_of_unity(7, 0)


class TestDftMatrix:
    def test_n1_is_scalar_one(self):
        assert np.allclose(dft_matrix(1), [[1.0]])

    def test_n3_display(self):
        w = root_of_unity(3, 1)
        want = np.array([[1, 1, 1], [1, w, w**2], [1, w**2, w]]) / math.sqrt(3)
        assert max_abs_diff(dft_matrix(3), want) < 1e-15

    @pytest.mark.parametrize("n", list(range(1, 33)))
    def test_unitary_up_to_32(self, n):
        f = dft_matrix(n)
        assert max_abs_diff(f.conj().T @ f, np.eye(n)) < 1e-12

    @pytest.mark.parametrize("n", [2, 3, 5, 7, 11, 13])
    def test_root_orthogonality(self, n):
        # sum over l of w^((l-1)(t-s)) = n * delta(s,t), the identity behind
        # the prime-dimension weight formula
        for s in range(1, n):
            for t in range(1, n):
                acc = sum(
                    root_of_unity(n, (l - 1) * (t - s)) for l in range(1, n + 1)
                )
                want = n if s == t else 0.0
                assert abs(acc - want) < 1e-10


class TestLineSums:
    def test_identity(self):
        rows, cols = line_sums(np.eye(3))
        assert np.allclose(rows, 1.0) and np.allclose(cols, 1.0)

    def test_flat_matrix(self):
        rows, cols = line_sums(van_der_waerden(3))
        assert np.allclose(rows, 1.0) and np.allclose(cols, 1.0)

    def test_rectangular_rejected(self):
        with pytest.raises(DimensionError):
            line_sums(np.ones((2, 3)))


class TestClassify:
    def test_identity_flags(self):
        c = classify(np.eye(4))
        assert c.is_unitary and c.is_xu and c.is_zu and c.is_circulant
        assert abs(c.line_sum - 1.0) < 1e-15

    def test_diagonal_phases_zu_not_xu(self):
        c = classify(np.diag([1.0, np.exp(1.0j), np.exp(-0.5j)]))
        assert c.is_zu and not c.is_xu
        assert c.line_sum is None

    def test_embedded_core_is_xu(self):
        # build F diag(1, u) F^-1 by hand for a rotation u
        t = 0.83
        u = np.array(
            [[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]],
            dtype=complex,
        )
        f = dft_matrix(3)
        d = np.zeros((3, 3), dtype=complex)
        d[0, 0] = 1.0
        d[1:, 1:] = u
        x = f @ d @ f.conj().T
        c = classify(x)
        assert c.is_xu and c.is_unitary
        assert abs(c.line_sum - 1.0) < 1e-12

    def test_xu_implies_unitary_and_unit_line_sum(self):
        from xubirkhoff import random_xu

        for seed in range(10):
            c = classify(random_xu(4, seed))
            assert c.is_xu
            assert c.is_unitary
            assert abs(c.line_sum - 1.0) <= 1e-10

    def test_anticirculant_flag(self):
        a = np.array([[1, 2, 3], [2, 3, 1], [3, 1, 2]], dtype=complex)
        c = classify(a)
        assert c.is_anticirculant and not c.is_circulant

    def test_circulant_flag(self):
        a = np.array([[1, 2, 3], [3, 1, 2], [2, 3, 1]], dtype=complex)
        c = classify(a)
        assert c.is_circulant and not c.is_anticirculant

    def test_tolerance_must_be_positive(self):
        with pytest.raises(ValueError):
            classify(np.eye(2), tol=0.0)

    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            classify(np.array([[np.nan, 0], [0, 1]], dtype=complex))


class TestMatrixJson:
    def test_round_trip_exact(self):
        from xubirkhoff import haar_unitary

        a = haar_unitary(5, seed=9)
        b = matrix_from_json(matrix_to_json(a))
        assert np.array_equal(a, b)

    def test_text_round_trip_exact(self):
        import json

        from xubirkhoff import haar_unitary

        a = haar_unitary(4, seed=2)
        text = dumps_json(matrix_to_json(a))
        b = matrix_from_json(json.loads(text))
        assert np.array_equal(a, b)

    def test_seventeen_digit_floats(self):
        text = dumps_json({"v": 1.0 / 3.0})
        assert "0.33333333333333331" in text

    def test_bad_schema_rejected(self):
        with pytest.raises(ValueError):
            matrix_from_json({"dim": 2, "entries": [[[1, 0]]]})
        with pytest.raises(ValueError):
            matrix_from_json({"entries": []})
