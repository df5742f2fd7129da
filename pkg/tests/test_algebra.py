"""Tests for the RDMPF algebra: arithmetic, the power function, samplers"""

import random

import pytest
from pydantic import ValidationError

from conftest import make_params
from rdmpf.algebra import (
    LEFT,
    RIGHT,
    ExponentMatrix,
    GroupMatrix,
    gen_singular_base,
    mat_mul_exp,
    mod_pow,
    poly_eval_matrix,
    rdmpf,
)
from rdmpf.errors import DimensionError, ZeroPolynomialError
from rdmpf.params import PROFILES, Params, get_profile, get_profile_by_id, is_prime


def random_exponents(rng: random.Random, params: Params) -> ExponentMatrix:
    n, order = params.n, params.order
    return ExponentMatrix(
        tuple(tuple(rng.randrange(order) for _ in range(n)) for _ in range(n)), order
    )


def random_group(rng: random.Random, params: Params) -> GroupMatrix:
    n, p = params.n, params.p
    return GroupMatrix(tuple(tuple(rng.randint(1, p - 1) for _ in range(n)) for _ in range(n)), p)


def random_coeffs(rng: random.Random, params: Params):
    coeffs = [rng.randint(0, params.exp_max) for _ in range(params.d)]
    coeffs[0] = rng.randint(1, params.exp_max)
    return tuple(coeffs)


def naive_mul(a, b, mod):
    n = len(a)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                out[i][j] += a[i][k] * b[k][j]
            out[i][j] %= mod
    return tuple(tuple(row) for row in out)


# ============================================================================
# PROFILES
# ============================================================================

class TestProfiles:
    def test_registered_profiles_validate(self):
        assert set(PROFILES) == {"toy-997", "l5-n7", "micro"}
        toy = get_profile("toy-997")
        assert (toy.p, toy.n, toy.sigma, toy.R, toy.kappa, toy.exp_max) == (997, 5, 3, 1, 64, 9)

    def test_l5_uses_largest_32_bit_prime(self, l5):
        assert l5.p == 2**32 - 5
        assert is_prime(l5.p)
        assert not is_prime(2**32 - 3)
        assert l5.entry_bytes == 4

    def test_lookup_by_name_and_id(self):
        assert get_profile("TOY-997").name == "toy-997"
        assert get_profile_by_id(3).name == "micro"
        with pytest.raises(ValueError):
            get_profile("toy-999")
        with pytest.raises(ValueError):
            get_profile_by_id(99)

    @pytest.mark.parametrize("field, value", [
        ("p", 1000),
        ("p", 3),
        ("n", 0),
        ("R", 0),
        ("sigma", 996),
        ("kappa", 60),
        ("d", 6),
        ("exp_max", 0),
    ])
    def test_invalid_profiles_rejected(self, toy, field, value):
        fields = toy.model_dump()
        fields[field] = value
        with pytest.raises(ValidationError):
            Params(**fields)

    def test_params_are_frozen(self, toy):
        with pytest.raises(ValidationError):
            toy.p = 11


# ============================================================================
# ARITHMETIC
# ============================================================================

class TestModPow:
    def test_small_case(self):
        assert mod_pow(3, 4, 997) == 81

    def test_zero_exponent(self):
        assert mod_pow(123, 0, 997) == 1
        assert mod_pow(0, 0, 997) == 1

    def test_fermat(self):
        assert mod_pow(5, 996, 997) == 1

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            mod_pow(3, -1, 997)


class TestMatrices:
    def test_exponent_range_enforced(self):
        with pytest.raises(ValueError):
            ExponentMatrix(((0, 10), (1, 2)), 10)
        with pytest.raises(DimensionError):
            ExponentMatrix(((0, 1, 2), (1, 2, 3)), 10)

    def test_group_entries_nonzero(self):
        with pytest.raises(ValueError):
            GroupMatrix(((1, 0), (1, 1)), 11)

    def test_identity_and_zero_products(self):
        rng = random.Random(1)
        params = make_params(11, 3)
        m = random_exponents(rng, params)
        identity = ExponentMatrix.identity(3, params.order)
        zero = ExponentMatrix.zeros(3, params.order)
        assert mat_mul_exp(identity, m) == m
        assert mat_mul_exp(zero, m) == zero

    def test_product_matches_naive_loop(self):
        rng = random.Random(2)
        params = make_params(11, 2)
        for _ in range(20):
            a = random_exponents(rng, params)
            b = random_exponents(rng, params)
            assert mat_mul_exp(a, b).entries == naive_mul(a.entries, b.entries, params.order)

    def test_dimension_mismatch(self):
        a = ExponentMatrix.identity(2, 10)
        b = ExponentMatrix.identity(3, 10)
        with pytest.raises(DimensionError):
            mat_mul_exp(a, b)
        with pytest.raises(DimensionError):
            mat_mul_exp(a, ExponentMatrix.identity(2, 996))


# ============================================================================
# RDMPF
# ============================================================================

class TestRdmpf:
    def test_zero_exponents_give_ones(self, toy):
        rng = random.Random(3)
        zero = ExponentMatrix.zeros(5, toy.order)
        q = rdmpf(zero, random_group(rng, toy), random_exponents(rng, toy), toy)
        assert q == GroupMatrix.ones(5, toy.p)

    def test_all_ones_base(self, toy):
        rng = random.Random(4)
        q = rdmpf(random_exponents(rng, toy), GroupMatrix.ones(5, toy.p),
                  random_exponents(rng, toy), toy)
        assert q == GroupMatrix.ones(5, toy.p)

    def test_single_entry(self):
        params = make_params(997, 1, d=1)
        x = ExponentMatrix(((2,),), 996)
        w = GroupMatrix(((3,),), 997)
        y = ExponentMatrix(((4,),), 996)
        assert rdmpf(x, w, y, params).entries == ((pow(3, 24, 997),),)

    def test_one_hot_base(self):
        params = make_params(997, 3)
        rng = random.Random(5)
        g = 5
        w = GroupMatrix(((1, 1, 1), (g, 1, 1), (1, 1, 1)), 997)
        x = random_exponents(rng, params)
        y = random_exponents(rng, params)
        q = rdmpf(x, w, y, params)
        for i in range(3):
            for j in range(3):
                e = params.sigma * x.entries[i][1] * y.entries[0][j] % 996
                assert q.entries[i][j] == pow(g, e, 997)

    def test_doubling_an_exponent_squares_its_factor(self):
        params = make_params(997, 3)
        rng = random.Random(6)
        w = GroupMatrix(((1, 1, 1), (7, 1, 1), (1, 1, 1)), 997)
        x = random_exponents(rng, params)
        y = random_exponents(rng, params)
        rows = [list(r) for r in x.entries]
        rows[0][1] = rows[0][1] * 2 % 996
        doubled = ExponentMatrix(tuple(tuple(r) for r in rows), 996)

        before = rdmpf(x, w, y, params)
        after = rdmpf(doubled, w, y, params)
        for j in range(3):
            assert after.entries[0][j] == before.entries[0][j] ** 2 % 997
        assert after.entries[1:] == before.entries[1:]

    def test_output_in_unit_range(self, toy):
        rng = random.Random(7)
        for _ in range(10):
            q = rdmpf(random_exponents(rng, toy), random_group(rng, toy),
                      random_exponents(rng, toy), toy)
            assert all(1 <= v < toy.p for row in q.entries for v in row)

    def test_dimension_mismatch(self, toy, micro):
        rng = random.Random(8)
        with pytest.raises(DimensionError):
            rdmpf(random_exponents(rng, micro), random_group(rng, toy),
                  random_exponents(rng, toy), toy)


class TestCompositionLaw:
    @pytest.mark.parametrize("p, n", [(11, 2), (11, 3), (997, 5)])
    def test_commuting_instances_agree(self, p, n):
        params = make_params(p, n, d=min(3, n), exp_max=min(9, p - 2))
        rng = random.Random(p * 100 + n)
        for _ in range(100):
            left_base = random_exponents(rng, params)
            right_base = random_exponents(rng, params)
            U = poly_eval_matrix(random_coeffs(rng, params), left_base)
            X = poly_eval_matrix(random_coeffs(rng, params), left_base)
            V = poly_eval_matrix(random_coeffs(rng, params), right_base)
            Y = poly_eval_matrix(random_coeffs(rng, params), right_base)
            W = random_group(rng, params)

            assert rdmpf(U, rdmpf(X, W, Y, params), V, params) == \
                rdmpf(X, rdmpf(U, W, V, params), Y, params)

    @pytest.mark.parametrize("p, n", [(11, 2), (11, 3), (997, 5)])
    def test_generic_instances_disagree(self, p, n):
        params = make_params(p, n)
        rng = random.Random(p + n)
        violations = 0
        for _ in range(100):
            U, X, V, Y = (random_exponents(rng, params) for _ in range(4))
            W = random_group(rng, params)
            if rdmpf(U, rdmpf(X, W, Y, params), V, params) != \
                    rdmpf(X, rdmpf(U, W, V, params), Y, params):
                violations += 1
        assert violations >= 95


# ============================================================================
# POLYNOMIALS AND SINGULAR BASES
# ============================================================================

class TestPolynomials:
    def test_linear_coefficient_returns_base(self):
        rng = random.Random(9)
        params = make_params(11, 3)
        base = random_exponents(rng, params)
        assert poly_eval_matrix((1, 0, 0), base) == base

    def test_matches_repeated_products(self):
        rng = random.Random(10)
        params = make_params(11, 3)
        base = random_exponents(rng, params)
        square = mat_mul_exp(base, base)
        expected = ExponentMatrix.reduce(
            [[2 * a + 3 * b for a, b in zip(r1, r2)] for r1, r2 in zip(base.entries, square.entries)],
            params.order,
        )
        assert poly_eval_matrix((2, 3), base) == expected

    def test_outputs_commute(self):
        rng = random.Random(11)
        params = make_params(997, 5, d=3, exp_max=9)
        base = random_exponents(rng, params)
        for _ in range(20):
            q1 = poly_eval_matrix(random_coeffs(rng, params), base)
            q2 = poly_eval_matrix(random_coeffs(rng, params), base)
            assert mat_mul_exp(q1, q2) == mat_mul_exp(q2, q1)

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ZeroPolynomialError):
            poly_eval_matrix((0, 0), ExponentMatrix.identity(2, 10))


class TestSingularBase:
    def test_two_by_two_closing_row(self, micro):
        A = gen_singular_base(b"seed", LEFT, micro)
        (a, b), last = A.entries
        assert last == ((-a) % 10, (-b) % 10)
        assert A.column_sums() == (0, 0)

    def test_deterministic(self, toy):
        assert gen_singular_base(b"x", LEFT, toy) == gen_singular_base(b"x", LEFT, toy)
        assert gen_singular_base(b"x", LEFT, toy) != gen_singular_base(b"y", LEFT, toy)

    def test_right_side_null_vector(self, toy):
        B = gen_singular_base(b"seed", RIGHT, toy)
        assert B.is_right_null()
        assert B.dim == toy.n

    def test_polynomials_keep_null_vector(self):
        params = make_params(11, 3)
        rng = random.Random(12)
        for k in range(20):
            A = gen_singular_base(bytes([k]), LEFT, params)
            B = gen_singular_base(bytes([k]), RIGHT, params)
            coeffs = random_coeffs(rng, params)
            assert poly_eval_matrix(coeffs, A).is_left_null()
            assert poly_eval_matrix(coeffs, B).is_right_null()

    def test_bad_side(self, toy):
        with pytest.raises(ValueError):
            gen_singular_base(b"seed", "up", toy)
