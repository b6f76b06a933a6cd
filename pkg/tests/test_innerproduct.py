"""Weight truncation, the constant-term inner product, and Gram data."""

import math

import pytest
from gmpy2 import mpq

from bcortho.errors import DegeneracyError, DimensionError
from bcortho.hyperoctahedral import group_elements
from bcortho.innerproduct import (
    build_delta,
    cached_delta,
    coords_inner,
    default_truncation_order,
    gram_matrix,
    inner_product,
    monomial_pair_product,
    stability_probe,
)
from bcortho.laurent import LaurentPoly, symmetric_monomial, weyl_character
from bcortho.linsolve import solve


class TestBuild:
    def test_character_weight_rank_one(self, character_spec):
        # with both c-functions 1 the weight is (2 - z^2 - z^-2)/2 exactly
        d = cached_delta(character_spec, 1, 5)
        assert d.poly == LaurentPoly(
            1, {(0,): mpq(1), (2,): mpq(-1, 2), (-2,): mpq(-1, 2)}
        )

    def test_character_weight_exact_in_k(self, character_spec):
        assert build_delta(character_spec, 2, 5).poly == build_delta(
            character_spec, 2, 9
        ).poly

    def test_invariant_and_self_conjugate(self, hl_spec, kw_spec):
        for spec in (hl_spec, kw_spec):
            d = build_delta(spec, 2, 8)
            poly = d.poly
            assert poly.conjugate() == poly
            for w in group_elements(2):
                assert poly.transform(w) == poly

    def test_rejects_tiny_order(self, hl_spec):
        with pytest.raises(ValueError):
            build_delta(hl_spec, 1, 0)

    def test_default_truncation_order(self):
        assert default_truncation_order(1) == 30
        assert default_truncation_order(2) == 30
        assert default_truncation_order(3) == 12


class TestInnerProduct:
    def test_character_orthonormality(self, character_spec):
        # symplectic characters are an orthonormal system for the exact
        # M = 0 weight; this exercises the whole pipeline end to end
        d = cached_delta(character_spec, 2, 5)
        lams = [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (3, 1)]
        for lam in lams:
            for mu in lams:
                expected = 1 if lam == mu else 0
                got = inner_product(weyl_character(lam), weyl_character(mu), d)
                assert got == expected, (lam, mu)

    def test_symmetry(self, hl_spec):
        d = cached_delta(hl_spec, 2, 10)
        f = symmetric_monomial((2, 1))
        g = symmetric_monomial((1, 0)) + symmetric_monomial((1, 1)).scale(mpq(1, 3))
        assert inner_product(f, g, d) == inner_product(g, f, d)

    def test_bilinearity(self, hl_spec):
        d = cached_delta(hl_spec, 2, 10)
        f = symmetric_monomial((2, 0))
        g = symmetric_monomial((1, 1))
        h = symmetric_monomial((1, 0))
        assert inner_product(f + g, h, d) == inner_product(f, h, d) + inner_product(g, h, d)
        assert inner_product(f.scale(mpq(3, 7)), h, d) == mpq(3, 7) * inner_product(f, h, d)

    def test_dimension_mismatch(self, hl_spec):
        d = cached_delta(hl_spec, 2, 8)
        with pytest.raises(DimensionError):
            inner_product(symmetric_monomial((1,)), symmetric_monomial((1,)), d)

    def test_pair_product_matches_generic(self, kw_spec):
        d = cached_delta(kw_spec, 2, 10)
        for mu, nu in [((2, 1), (1, 0)), ((2, 2), (2, 2)), ((0, 0), (1, 1))]:
            direct = inner_product(
                symmetric_monomial(mu), symmetric_monomial(nu), d
            )
            assert monomial_pair_product(mu, nu, d) == direct

    def test_coords_inner_matches_laurent(self, hl_spec):
        d = cached_delta(hl_spec, 2, 10)
        ca = {(2, 1): mpq(1), (1, 0): mpq(-2, 3)}
        cb = {(1, 1): mpq(1, 2), (0, 0): mpq(5)}
        fa = symmetric_monomial((2, 1)) + symmetric_monomial((1, 0)).scale(mpq(-2, 3))
        fb = symmetric_monomial((1, 1)).scale(mpq(1, 2)) + symmetric_monomial((0, 0)).scale(mpq(5))
        assert coords_inner(ca, cb, d) == inner_product(fa, fb, d)

    def test_quadrature_oracle(self, hl_spec):
        # compare one exact inner product against floating quadrature of
        # the true (untruncated) weight on a fine grid
        numpy = pytest.importorskip("numpy")
        t, t0, t1 = 1 / 3, 1 / 2, -1 / 4
        grid = 2 * numpy.pi * (numpy.arange(4096) + 0.5) / 4096
        z = numpy.exp(1j * grid)

        def chat1(u):
            return (1 - t0 * u) * (1 - t1 * u)

        weight = (1 - z**2) * (1 - z**-2) / (2 * chat1(z) * chat1(1 / z))
        m1 = z + 1 / z
        approx = (weight * m1 * numpy.conj(m1)).mean().real
        d = cached_delta(hl_spec, 1, 40)
        exact = float(
            inner_product(symmetric_monomial((1,)), symmetric_monomial((1,)), d)
        )
        assert abs(approx - exact) < 1e-10


class TestGram:
    def test_symmetric_positive_diagonal(self, kw_spec):
        d = cached_delta(kw_spec, 2, 12)
        basis, rows = gram_matrix((2, 1), d)
        size = len(basis)
        for i in range(size):
            assert rows[i][i] > 0
            for j in range(size):
                assert rows[i][j] == rows[j][i]

    def test_basis_is_dominance_ideal(self, hl_spec):
        d = cached_delta(hl_spec, 2, 8)
        basis, _ = gram_matrix((2, 0), d)
        assert set(basis) == {(0, 0), (1, 0), (1, 1), (2, 0)}

    def test_stability_probe_small(self, hl_spec):
        report = stability_probe((2, 1), hl_spec, 2, 15)
        assert report.k == 15 and report.k_step == 10
        assert report.max_abs_diff < 1e-7


class TestSolve:
    def test_known_system(self):
        matrix = [[mpq(2), mpq(1)], [mpq(1), mpq(3)]]
        rhs = [mpq(5), mpq(10)]
        assert solve(matrix, rhs) == [mpq(1), mpq(3)]

    def test_rational_entries(self):
        matrix = [[mpq(1, 2), mpq(1, 3)], [mpq(1, 5), mpq(1, 4)]]
        rhs = [mpq(1), mpq(1)]
        x = solve(matrix, rhs)
        for i in range(2):
            assert matrix[i][0] * x[0] + matrix[i][1] * x[1] == rhs[i]

    def test_random_roundtrip(self):
        import random

        rng = random.Random(9)
        n = 6
        matrix = [
            [mpq(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)]
            for _ in range(n)
        ]
        x_true = [mpq(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(n)]
        rhs = [sum(matrix[i][j] * x_true[j] for j in range(n)) for i in range(n)]
        assert solve(matrix, rhs) == x_true

    def test_singular_names_column(self):
        matrix = [[mpq(1), mpq(2)], [mpq(2), mpq(4)]]
        with pytest.raises(DegeneracyError, match="column 1"):
            solve(matrix, [mpq(1), mpq(2)])
