"""Tests for the decomposition engines, the product rule, and verification."""

import numpy as np
import pytest

from xubirkhoff import (
    DimensionError,
    MembershipError,
    Permutation,
    UnsupportedDimensionError,
    WeightedPermSum,
    circulant_xu_decompose,
    decompose_prime,
    decompose_prime_parts,
    decompose_recursive,
    decompose_unitary,
    decompose_xu,
    decompose_xu2,
    decompose_xu3,
    decompose_xu4,
    haar_unitary,
    lexicographic_permutations,
    perm_sum_from_json,
    perm_sum_to_json,
    product,
    random_circulant_xu,
    random_xu,
    verify,
)
from xubirkhoff.numerics import max_abs_diff


class TestProduct:
    def test_identity_neutral(self):
        s = circulant_xu_decompose(random_circulant_xu(4, seed=2))
        one = WeightedPermSum(4, [(Permutation.identity(4), 1.0)])
        t = product(one, s)
        for p, w in s.items():
            assert abs(t[p] - w) < 1e-15

    def test_weight_sum_multiplies(self):
        a = circulant_xu_decompose(random_circulant_xu(3, seed=5))
        b = circulant_xu_decompose(random_circulant_xu(3, seed=6))
        t = product(a, b)
        assert abs(t.weight_sum() - a.weight_sum() * b.weight_sum()) < 1e-12
        assert abs(t.weight_sum() - 1.0) < 1e-11

    def test_reconstructs_matrix_product(self):
        for seed in range(10):
            x = random_circulant_xu(4, 2 * seed)
            y = random_circulant_xu(4, 2 * seed + 1)
            t = product(
                circulant_xu_decompose(x), circulant_xu_decompose(y)
            )
            assert max_abs_diff(t.reconstruct(), x @ y) < 1e-10

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            product(WeightedPermSum(2), WeightedPermSum(3))


class TestXu2:
    def test_alpha_zero(self):
        s = decompose_xu2(np.eye(2))
        assert abs(s[Permutation((1, 2))] - 1.0) == 0.0
        assert abs(s[Permutation((2, 1))]) == 0.0

    def test_alpha_pi(self):
        swap = np.array([[0, 1], [1, 0]], dtype=complex)
        s = decompose_xu2(swap)
        assert abs(s[Permutation((1, 2))]) == 0.0
        assert abs(s[Permutation((2, 1))] - 1.0) == 0.0

    def test_alpha_half_pi(self):
        e = np.exp(1j * np.pi / 2)
        x = np.array([[1 + e, 1 - e], [1 - e, 1 + e]]) / 2
        s = decompose_xu2(x)
        m1 = s[Permutation((1, 2))]
        m2 = s[Permutation((2, 1))]
        assert abs(abs(m1) ** 2 - 0.5) < 1e-15
        assert abs(abs(m2) ** 2 - 0.5) < 1e-15

    def test_weights_match_closed_form(self):
        for alpha in np.linspace(-3.0, 3.0, 17):
            e = np.exp(1j * alpha)
            x = np.array([[1 + e, 1 - e], [1 - e, 1 + e]]) / 2
            s = decompose_xu2(x)
            assert abs(s[Permutation((1, 2))] - (1 + e) / 2) < 1e-15
            assert abs(s[Permutation((2, 1))] - (1 - e) / 2) < 1e-15

    def test_wrong_size(self):
        with pytest.raises(DimensionError):
            decompose_xu2(np.eye(3))


class TestXu3:
    def test_identity_p1(self):
        s = decompose_xu3(np.eye(3), p=1.0)
        for p, w in s.items():
            want = 1.0 if p == Permutation.identity(3) else 0.0
            assert abs(w - want) < 1e-15

    def test_p1_weight_formulas(self):
        # m_1 = (1 + U11 + U22)/3 and friends, the worked p=1 list
        from xubirkhoff import extract_core, root_of_unity

        x = random_xu(3, seed=14)
        u = extract_core(x)
        w = root_of_unity(3, 1)
        w2 = root_of_unity(3, 2)
        want = [
            (1 + u[0, 0] + u[1, 1]) / 3,
            (u[0, 1] + u[1, 0]) / 3,
            (w * u[0, 1] + w2 * u[1, 0]) / 3,
            (1 + w2 * u[0, 0] + w * u[1, 1]) / 3,
            (1 + w * u[0, 0] + w2 * u[1, 1]) / 3,
            (w2 * u[0, 1] + w * u[1, 0]) / 3,
        ]
        s = decompose_xu3(x, p=1.0)
        for perm, m in zip(lexicographic_permutations(3), want):
            assert abs(s[perm] - m) < 1e-13

    def test_reconstruction_any_p(self):
        x = random_xu(3, seed=3)
        for p in (1.0, 0.0, 0.5 + 0.5j, 2.0, -1.3 + 0.4j):
            s = decompose_xu3(x, p=p)
            assert max_abs_diff(s.reconstruct(), x) < 1e-13
            assert abs(s.weight_sum() - 1.0) < 1e-13

    def test_same_matrix_different_weights(self):
        x = random_xu(3, seed=4)
        s0 = decompose_xu3(x, p=0.0)
        s1 = decompose_xu3(x, p=1.0)
        assert max_abs_diff(s0.reconstruct(), s1.reconstruct()) < 1e-13
        diffs = [abs(s0[p] - s1[p]) for p, _ in s0.items()]
        assert max(diffs) > 0.1

    def test_sq_moduli_circle_law(self):
        x = random_xu(3, seed=5)
        rng = np.random.Generator(np.random.Philox(17))
        for _ in range(20):
            p = (1 + np.exp(2j * np.pi * rng.random())) / 2
            s = decompose_xu3(x, p=p)
            assert abs(s.sq_moduli_sum() - 1.0) < 1e-10
        for _ in range(20):
            p = complex(rng.standard_normal(), rng.standard_normal())
            s = decompose_xu3(x, p=p)
            want = 1.0 + (2 * p * np.conj(p) - p - np.conj(p)).real / 3
            assert abs(s.sq_moduli_sum() - want) < 1e-10


class TestPrime:
    def test_n2_n3_dispatch(self):
        x2 = random_xu(2, seed=1)
        assert max_abs_diff(decompose_prime(x2).reconstruct(), x2) < 1e-13
        x3 = random_xu(3, seed=1)
        s3 = decompose_prime(x3)
        assert max_abs_diff(s3.reconstruct(), x3) < 1e-13
        assert abs(s3.sq_moduli_sum() - 1.0) < 1e-12

    def test_identity_n5(self):
        s = decompose_prime(np.eye(5))
        assert s.term_count == 25
        assert max_abs_diff(s.reconstruct(), np.eye(5)) < 1e-14
        assert abs(s.weight_sum() - 1.0) < 1e-14
        assert abs(s.sq_moduli_sum() - 1.0) < 1e-14

    def test_term_counts_n5(self):
        c_part, d_part = decompose_prime_parts(random_xu(5, seed=8))
        assert c_part.term_count == 20
        assert d_part.term_count == 5
        assert decompose_prime(random_xu(5, seed=8)).term_count == 25

    def test_part_invariants(self):
        # the supercirculant part sums to 0 with squared moduli (n-1)/n;
        # the flat part reconstructs W_n
        from xubirkhoff import van_der_waerden

        for n in (5, 7, 11):
            x = random_xu(n, seed=n + 100)
            c_part, d_part = decompose_prime_parts(x)
            assert abs(c_part.weight_sum()) < 1e-9
            assert abs(c_part.sq_moduli_sum() - (n - 1) / n) < 1e-9
            assert abs(d_part.weight_sum() - 1.0) < 1e-12
            assert max_abs_diff(d_part.reconstruct(), van_der_waerden(n)) < 1e-12

    @pytest.mark.parametrize("n", [5, 7])
    def test_random_samples(self, n):
        for seed in range(10):
            x = random_xu(n, seed)
            s = decompose_prime(x)
            r = verify(s, x, tol=1e-9)
            assert r.reconstruction_ok
            assert r.weight_sum_ok
            assert r.sq_moduli_ok
            assert r.term_count == n * n

    def test_composite_rejected(self):
        with pytest.raises(UnsupportedDimensionError, match="open|composite"):
            decompose_prime(random_xu(6, seed=0))

    def test_non_xu_rejected(self):
        with pytest.raises(MembershipError):
            decompose_prime(haar_unitary(5, seed=0))


class TestXu4:
    def test_identity_pattern(self):
        s = decompose_xu4(np.eye(4))
        perms = list(lexicographic_permutations(4))
        want = {1: 0.75, 2: 0.25, 7: 0.25, 18: 0.25, 23: 0.25,
                10: -0.25, 17: -0.25, 19: -0.25}
        for j, perm in enumerate(perms, start=1):
            assert abs(s[perm] - want.get(j, 0.0)) < 1e-14
        assert abs(s.sq_moduli_sum() - 1.0) < 1e-14

    def test_constant_weights(self):
        perms = list(lexicographic_permutations(4))
        for seed in range(5):
            s = decompose_xu4(random_xu(4, seed))
            for j in (2, 7, 18, 23):
                assert abs(s[perms[j - 1]] - 0.25) < 1e-14

    def test_random_samples(self):
        for seed in range(20):
            x = random_xu(4, seed)
            s = decompose_xu4(x)
            r = verify(s, x, tol=1e-10)
            assert r.reconstruction_ok and r.weight_sum_ok and r.sq_moduli_ok

    def test_agrees_with_recursive_engine_reconstruction(self):
        x = random_xu(4, seed=44)
        a = decompose_xu4(x)
        b = decompose_recursive(x)
        assert max_abs_diff(a.reconstruct(), b.reconstruct()) < 1e-8


class TestRecursive:
    def test_identity_collapses(self):
        s = decompose_recursive(np.eye(4))
        assert s.term_count == 1
        assert abs(s[Permutation.identity(4)] - 1.0) < 1e-12

    def test_xu2_base_case(self):
        e = np.exp(0.9j)
        x = np.array([[1 + e, 1 - e], [1 - e, 1 + e]]) / 2
        s = decompose_recursive(x)
        assert s.term_count == 2
        assert abs(s[Permutation((1, 2))] - (1 + e) / 2) < 1e-14

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_random_samples(self, n):
        for seed in range(5):
            x = random_xu(n, seed)
            s = decompose_recursive(x)
            assert max_abs_diff(s.reconstruct(), x) < 1e-8
            assert abs(s.weight_sum() - 1.0) < 1e-8

    def test_agrees_with_prime_engine_reconstruction(self):
        x = random_xu(5, seed=21)
        a = decompose_prime(x)
        b = decompose_recursive(x)
        assert max_abs_diff(a.reconstruct(), b.reconstruct()) < 1e-8

    def test_non_xu_rejected(self):
        with pytest.raises(MembershipError):
            decompose_recursive(haar_unitary(4, seed=2))


class TestDecomposeXuFrontDoor:
    def test_auto_prefers_guaranteed_engines(self):
        assert decompose_xu(random_xu(5, seed=0)).engine == "prime"
        assert decompose_xu(random_xu(4, seed=0)).engine == "xu4"
        assert decompose_xu(random_xu(6, seed=0)).engine == "recursive"

    def test_explicit_method(self):
        x = random_xu(3, seed=9)
        assert decompose_xu(x, method="xu3").engine == "xu3"
        assert decompose_xu(x, method="recursive").engine == "recursive"

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            decompose_xu(np.eye(3), method="guess")


class TestDecomposeUnitary:
    def test_diagonal_single_term(self):
        u = np.diag(np.exp(1j * np.array([0.4, -1.2, 2.2])))
        cs = decompose_unitary(u)
        assert cs.term_count == 1
        t = cs.terms[0]
        assert t.perm == Permutation.identity(3)
        assert max_abs_diff(cs.reconstruct(), u) < 1e-12

    def test_xu_input_has_unit_phases(self):
        x = random_xu(3, seed=7)
        cs = decompose_unitary(x)
        for t in cs.terms:
            assert max(abs(ph - 1.0) for ph in t.phases) < 1e-12
        assert max_abs_diff(cs.reconstruct(), x) < 1e-9

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_haar_samples(self, n):
        for seed in range(5):
            u = haar_unitary(n, seed)
            cs = decompose_unitary(u)
            assert max_abs_diff(cs.reconstruct(), u) < 1e-8
            for t in cs.terms:
                assert max(abs(abs(ph) - 1.0) for ph in t.phases) < 1e-12

    def test_term_matrices_are_complex_permutations(self):
        u = haar_unitary(4, seed=13)
        cs = decompose_unitary(u)
        for t in cs.terms:
            m = t.matrix()
            nz = np.abs(m) > 1e-14
            assert np.array_equal(nz.sum(axis=0), np.ones(4, dtype=int))
            assert np.array_equal(nz.sum(axis=1), np.ones(4, dtype=int))
            mods = np.abs(m[nz])
            assert np.abs(mods - 1.0).max() < 1e-12

    def test_engine_label(self):
        assert decompose_unitary(haar_unitary(5, seed=1)).engine == "zxz+prime"
        assert decompose_unitary(haar_unitary(4, seed=1)).engine == "zxz+xu4"
        assert (
            decompose_unitary(haar_unitary(6, seed=1)).engine
            == "zxz+recursive"
        )


class TestVerify:
    def test_flags_pass_for_valid_decomposition(self):
        e = np.exp(0.4j)
        x = np.array([[1 + e, 1 - e], [1 - e, 1 + e]]) / 2
        r = verify(decompose_xu2(x), x, tol=1e-12)
        assert r.reconstruction_ok and r.weight_sum_ok
        assert r.sq_moduli_ok and r.line_sums_ok
        assert r.term_count == 2

    def test_perturbed_weight_fails_reconstruction(self):
        x = random_xu(3, seed=2)
        s = decompose_xu3(x)
        bad = WeightedPermSum(3, s.items())
        bad.add(Permutation.identity(3), 0.05)
        r = verify(bad, x, tol=1e-9)
        assert not r.reconstruction_ok
        assert not r.weight_sum_ok

    def test_report_recomputed_from_terms(self):
        x = random_xu(5, seed=6)
        s = decompose_prime(x)
        r = verify(s, x, tol=1e-9)
        assert r.reconstruction_error == max_abs_diff(s.reconstruct(), x)
        assert r.weight_sum == s.weight_sum()
        assert r.sq_moduli_sum == s.sq_moduli_sum()

    def test_sq_flag_informational_for_recursive(self):
        x = random_xu(6, seed=3)
        s = decompose_recursive(x)
        r = verify(s, x, tol=1e-8)
        assert r.reconstruction_ok and r.weight_sum_ok and r.line_sums_ok

    def test_complex_sum_weight_modulus(self):
        u = haar_unitary(3, seed=19)
        cs = decompose_unitary(u)
        r = verify(cs, u, tol=1e-8)
        assert r.reconstruction_ok
        assert r.weight_sum_ok
        assert abs(abs(r.weight_sum) - 1.0) < 1e-8

    def test_size_mismatch(self):
        with pytest.raises(DimensionError):
            verify(WeightedPermSum(2), np.eye(3))


class TestMergingAndJson:
    def test_duplicates_merge(self):
        p = Permutation((2, 1))
        s = WeightedPermSum(2, [(p, 0.25), (p, 0.5)])
        assert s.term_count == 1
        assert abs(s[p] - 0.75) < 1e-15

    def test_merging_preserves_reconstruction(self):
        x = random_xu(4, seed=17)
        s = decompose_xu4(x)
        doubled = WeightedPermSum(4)
        for p, w in s.items():
            doubled.add(p, w / 2)
            doubled.add(p, w / 2)
        assert max_abs_diff(doubled.reconstruct(), s.reconstruct()) < 1e-14

    def test_json_round_trip_real(self):
        s = decompose_prime(random_xu(5, seed=4))
        t = perm_sum_from_json(perm_sum_to_json(s))
        assert isinstance(t, WeightedPermSum)
        assert t.engine == s.engine
        assert max_abs_diff(t.reconstruct(), s.reconstruct()) == 0.0

    def test_json_round_trip_complex(self):
        cs = decompose_unitary(haar_unitary(3, seed=5))
        t = perm_sum_from_json(perm_sum_to_json(cs))
        assert max_abs_diff(t.reconstruct(), cs.reconstruct()) == 0.0
