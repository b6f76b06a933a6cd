"""Truncated series arithmetic and the three c-function families."""

import math

import pytest
from gmpy2 import mpq

from bcortho.cfuncs import (
    ExplicitPoly,
    HallLittlewood,
    Koornwinder,
    cspec_to_json,
    decay_budget,
    euler_pochhammer_series,
    min_modulus_on_circle,
    parse_cspec,
    pochhammer_inf_series,
    polynomial_degree,
    reciprocal_series,
    series,
    series_mul,
    series_one,
    taylor_c,
)
from bcortho.errors import DomainError


class TestSeries:
    def test_mul_matches_convolution(self):
        a = series([1, 2, 3])
        b = series([1, -1])
        assert series_mul(a, b, 3).coeffs == (1, 1, 1, -3)

    def test_reciprocal_identity_to_order_60(self):
        s = series([1] + [mpq(1, n + 1) for n in range(1, 61)])
        r = reciprocal_series(s, 60)
        prod = series_mul(s, r, 60)
        assert prod.coeffs == series_one(60).coeffs

    def test_reciprocal_requires_unit_constant(self):
        with pytest.raises(DomainError):
            reciprocal_series(series([2, 1]), 5)

    def test_truncate_pads(self):
        assert series([1, 2]).truncate(4).coeffs == (1, 2, 0, 0, 0)


class TestPochhammer:
    def test_matches_euler_formula_to_order_30(self):
        for a, q in [("1/2", "1/2"), ("-1/3", "1/4"), ("2/3", "1/3")]:
            lhs = pochhammer_inf_series(a, q, 30)
            rhs = euler_pochhammer_series(a, q, 30)
            assert lhs.coeffs == rhs.coeffs

    def test_first_coefficients(self):
        s = pochhammer_inf_series(mpq(1, 2), mpq(1, 2), 2)
        # coefficient of z is -a/(1-q); of z^2 is a^2 q/((1-q)(1-q^2))
        assert s.coeffs[0] == 1
        assert s.coeffs[1] == -1
        assert s.coeffs[2] == mpq(1, 3)

    def test_agrees_with_partial_products_numerically(self):
        a, q, z = 0.4, 0.5, 0.3
        prod = 1.0
        for j in range(200):
            prod *= 1 - a * q**j * z
        s = pochhammer_inf_series(mpq(2, 5), mpq(1, 2), 40)
        val = sum(float(c) * z**i for i, c in enumerate(s.coeffs))
        assert abs(val - prod) < 1e-12

    def test_rejects_large_q(self):
        with pytest.raises(DomainError):
            pochhammer_inf_series(mpq(1, 2), mpq(3, 2), 5)


class TestExplicitPoly:
    def test_degree_bound(self):
        assert ExplicitPoly((1,), (1,)).degree_bound == 0
        assert ExplicitPoly((1, -1), (1, 0, 2)).degree_bound == 1
        assert ExplicitPoly((1,), (1, 1)).degree_bound == 1

    def test_rejects_bad_constant(self):
        with pytest.raises(DomainError):
            ExplicitPoly((2,), (1,))

    def test_taylor_pads_with_zeros(self):
        spec = ExplicitPoly((1, -1), (1,))
        assert taylor_c(spec, 0, 4).coeffs == (1, -1, 0, 0, 0)


class TestHallLittlewood:
    def test_taylor_coefficients(self):
        spec = HallLittlewood("1/3", "1/2", "-1/4")
        assert taylor_c(spec, 0, 2).coeffs == (1, mpq(-1, 3), 0)
        assert taylor_c(spec, 1, 2).coeffs == (1, mpq(-1, 4), mpq(-1, 8))

    def test_degree_bound_is_one(self):
        assert HallLittlewood("1/3", "1/2", "-1/4").degree_bound == 1

    def test_rejects_parameters_outside_interval(self):
        with pytest.raises(DomainError):
            HallLittlewood("3/2", "1/2", "-1/4")


class TestKoornwinder:
    def test_t_equal_q_collapses_c0(self):
        spec = Koornwinder("1/2", "1/2", "1/2", "-1/3", "1/4", "-1/5")
        assert taylor_c(spec, 0, 10).coeffs == series_one(10).coeffs

    def test_c0_linear_coefficient(self):
        q, t = mpq(1, 2), mpq(1, 3)
        spec = Koornwinder(q, t, "1/2", "-1/3", "1/4", "-1/5")
        assert taylor_c(spec, 0, 1).coeffs[1] == (q - t) / (1 - q)

    def test_c1_squared_denominator(self):
        # with all t_r = 0 the c1 series is 1/(q z^2; q)_inf: only even
        # orders, matching the inverted series in the squared variable
        q = mpq(1, 2)
        spec = Koornwinder(q, "1/3", 0, 0, 0, 0)
        c1 = taylor_c(spec, 1, 8)
        half = reciprocal_series(pochhammer_inf_series(q, q, 4), 4)
        for i, c in enumerate(c1.coeffs):
            if i % 2:
                assert c == 0
            else:
                assert c == half.coeffs[i // 2]

    def test_rejects_q_out_of_range(self):
        with pytest.raises(DomainError):
            Koornwinder("0", "1/3", "1/2", "-1/3", "1/4", "-1/5")

    def test_bad_rational_names_field(self):
        with pytest.raises(DomainError, match="'q'"):
            Koornwinder("1/0", "1/3", "1/2", "-1/3", "1/4", "-1/5")


class TestBudgets:
    def test_polynomial_families(self):
        hl = HallLittlewood("1/3", "1/2", "-1/4")
        assert polynomial_degree(hl) == 1
        assert decay_budget(hl).is_exact
        assert decay_budget(hl).exact_degree == 1

    def test_q_family(self):
        kw = Koornwinder("1/2", "1/3", "1/2", "-1/3", "1/4", "-1/5")
        assert polynomial_degree(kw) is None
        budget = decay_budget(kw)
        assert not budget.is_exact
        assert budget.epsilon == pytest.approx(math.log(2))

    def test_min_modulus_trivial_spec(self):
        spec = ExplicitPoly((1,), (1,))
        assert min_modulus_on_circle(spec, 0) == pytest.approx(1.0)
        assert min_modulus_on_circle(spec, 1) == pytest.approx(1.0)

    def test_min_modulus_positive_for_samples(self):
        kw = Koornwinder("1/2", "1/3", "1/2", "-1/3", "1/4", "-1/5")
        assert min_modulus_on_circle(kw, 0) > 0.1
        assert min_modulus_on_circle(kw, 1) > 0.1


class TestSerialization:
    def test_roundtrip(self):
        specs = [
            Koornwinder("1/2", "1/3", "1/2", "-1/3", "1/4", "-1/5"),
            HallLittlewood("1/3", "1/2", "-1/4"),
            ExplicitPoly((1, "-1/2"), (1, 0, "1/4")),
        ]
        for spec in specs:
            assert parse_cspec(cspec_to_json(spec)) == spec

    def test_unknown_family(self):
        with pytest.raises(DomainError, match="family"):
            parse_cspec({"family": "jacobi"})

    def test_missing_field(self):
        with pytest.raises(DomainError, match="missing"):
            parse_cspec({"family": "koornwinder", "q": "1/2"})

    def test_zero_denominator_rejected(self):
        with pytest.raises(DomainError, match="'q'"):
            parse_cspec(
                {"family": "koornwinder", "q": "1/0", "t": "1/3",
                 "t_r": ["1/2", "-1/3", "1/4", "-1/5"]}
            )

    def test_not_an_object(self):
        with pytest.raises(DomainError):
            parse_cspec(["koornwinder"])
