"""Truncated weight-function approximation and the constant-term inner
product built from it.

The weight is 1/(|W| C(x) C(-x)) with C a product of one-dimensional
c-functions over the roots.  Each reciprocal reduced c-function is
truncated at Taylor order K; everything downstream is exact rational
arithmetic against that single approximation.

Internally the weight is stored with integer coefficients over one
common denominator: rational normalization (gcd at every operation) is
what dominates the cost otherwise, while integer products of the same
values are cheap.
"""

import math
from dataclasses import dataclass, field

from gmpy2 import lcm, mpq, mpz

from .cfuncs import CSpec, reciprocal_series, taylor_c, warn_if_nearly_singular
from .errors import DimensionError
from .hyperoctahedral import check_weight, orbit, weights_below
from .laurent import LaurentPoly


def default_truncation_order(n: int) -> int:
    """Desk-scale defaults: the weight support box grows like K per
    dimension, so N = 3 gets a smaller order."""
    return 30 if n <= 2 else 12


@dataclass
class DeltaApprox:
    """Order-K truncation of the weight function, stored as integer
    Laurent coefficients over a single common denominator, plus a
    heuristic tail magnitude for reporting."""

    n: int
    k: int
    spec: CSpec
    int_terms: dict
    denom: object  # mpz
    tail_hint: float
    _pair_cache: dict = field(default_factory=dict, repr=False)
    _poly: object = field(default=None, repr=False)

    @property
    def poly(self) -> LaurentPoly:
        """The weight as an ordinary rational Laurent polynomial."""
        if self._poly is None:
            self._poly = LaurentPoly(
                self.n, {e: mpq(c, self.denom) for e, c in self.int_terms.items()}
            )
        return self._poly


def _int_coeffs(values):
    """Common-denominator form: (integer numerators, denominator)."""
    den = mpz(1)
    for v in values:
        den = lcm(den, v.denominator)
    return [mpz(v.numerator) * (den // v.denominator) for v in values], den


def _one_sided(nums, pole_gap):
    """Integer coefficients of (1 - u^pole_gap) * R(u) as {order: int}."""
    out = {}
    for m, c in enumerate(nums):
        if c:
            out[m] = out.get(m, mpz(0)) + c
    for m, c in enumerate(nums):
        if c:
            out[m + pole_gap] = out.get(m + pole_gap, mpz(0)) - c
    return {m: c for m, c in out.items() if c}


def _two_sided(side):
    """Product of the u and 1/u copies as a univariate Laurent profile."""
    out = {}
    for a, ca in side.items():
        for b, cb in side.items():
            m = a - b
            s = out.get(m, mpz(0)) + ca * cb
            if s:
                out[m] = s
            elif m in out:
                del out[m]
    return out


def _along(n, direction, profile):
    """Embed {order: coeff} along an exponent direction."""
    return {tuple(m * d for d in direction): c for m, c in profile.items()}


def _dict_mul(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = {}
    zero = mpz(0)
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, zero) + ca * cb
    return {e: c for e, c in out.items() if c}


def build_delta(spec: CSpec, n: int, k: int) -> DeltaApprox:
    """Assemble the order-K weight approximation.

    For every root pair j < k the factor is
    (1 - z_j z_k)(1 - 1/(z_j z_k)) R0(z_j z_k) R0(1/(z_j z_k)) times the
    same in the direction z_j / z_k; each variable contributes
    (1 - z_j^2)(1 - z_j^-2) R1(z_j) R1(1/z_j).  R_p is the order-K
    reciprocal series of the reduced c-function.
    """
    if k < 1:
        raise ValueError("truncation order must be at least 1")
    warn_if_nearly_singular(spec)
    r0 = reciprocal_series(taylor_c(spec, 0, k), k).coeffs
    r1 = reciprocal_series(taylor_c(spec, 1, k), k).coeffs
    nums0, den0 = _int_coeffs(r0)
    nums1, den1 = _int_coeffs(r1)

    # one-sided univariate pieces: (1 - u) R0(u) and (1 - u^2) R1(u)
    pair_profile = _two_sided(_one_sided(nums0, 1))
    single_profile = _two_sided(_one_sided(nums1, 2))

    terms = {(0,) * n: mpz(1)}
    denom = mpz(1)
    for j in range(n):
        for l in range(j + 1, n):
            direction = [0] * n
            direction[j], direction[l] = 1, 1
            terms = _dict_mul(terms, _along(n, tuple(direction), pair_profile))
            direction[l] = -1
            terms = _dict_mul(terms, _along(n, tuple(direction), pair_profile))
            denom *= den0**4
    for j in range(n):
        direction = [0] * n
        direction[j] = 1
        terms = _dict_mul(terms, _along(n, tuple(direction), single_profile))
        denom *= den1**2
    denom *= 2**n * math.factorial(n)

    n_root_factors = n * (n - 1) + n
    tail = max(abs(float(r0[-1])), abs(float(r1[-1]))) * n_root_factors
    return DeltaApprox(
        n=n, k=k, spec=spec, int_terms=terms, denom=denom, tail_hint=tail
    )


_delta_cache: dict = {}


def cached_delta(spec: CSpec, n: int, k: int) -> DeltaApprox:
    """Session cache; weight construction dominates small experiments."""
    key = (spec, n, k)
    if key not in _delta_cache:
        _delta_cache[key] = build_delta(spec, n, k)
    return _delta_cache[key]


def inner_product(f: LaurentPoly, g: LaurentPoly, delta: DeltaApprox):
    """<f, g> = constant term of f * conj(g) * Delta_K, exact."""
    if f.n != delta.n or g.n != delta.n:
        raise DimensionError("polynomial dimension does not match the weight")
    fn, fd = _int_coeffs(list(f.terms.values()))
    gn, gd = _int_coeffs(list(g.terms.values()))
    fi = list(zip(f.terms.keys(), fn))
    gi = list(zip(g.terms.keys(), gn))
    if len(fi) > len(gi):
        # <f, g> = <g, f> for real coefficients
        fi, gi = gi, fi
    dterms = delta.int_terms
    get = dterms.get
    acc = mpz(0)
    for u, cu in fi:
        for v, cv in gi:
            d = get(tuple(b - a for a, b in zip(u, v)))
            if d is not None:
                acc += cu * cv * d
    return mpq(acc, fd * gd * delta.denom)


def _pair_int(mu, nu, delta: DeltaApprox):
    """Integer numerator of <m_mu, m_nu> over delta.denom.

    The weight is W-invariant, so the double orbit sum collapses to a
    single orbit scan scaled by the other orbit's size.
    """
    key = (mu, nu) if mu <= nu else (nu, mu)
    cached = delta._pair_cache.get(key)
    if cached is None:
        orb_mu, orb_nu = orbit(mu), orbit(nu)
        if len(orb_nu) < len(orb_mu):
            mu, orb_mu, orb_nu = nu, orb_nu, orb_mu
        get = delta.int_terms.get
        acc = mpz(0)
        for v in orb_nu:
            d = get(tuple(b - a for a, b in zip(mu, v)))
            if d is not None:
                acc += d
        cached = acc * len(orb_mu)
        delta._pair_cache[key] = cached
    return cached


def monomial_pair_product(mu, nu, delta: DeltaApprox):
    """<m_mu, m_nu>, exact."""
    return mpq(_pair_int(tuple(mu), tuple(nu), delta), delta.denom)


def coords_inner(coords_a: dict, coords_b: dict, delta: DeltaApprox):
    """Inner product of two invariant polynomials given in monomial
    coordinates; all accumulation happens over the integers."""
    an, ad = _int_coeffs(list(coords_a.values()))
    bn, bd = _int_coeffs(list(coords_b.values()))
    ai = list(zip(coords_a.keys(), an))
    bi = list(zip(coords_b.keys(), bn))
    acc = mpz(0)
    for mu, ca in ai:
        for nu, cb in bi:
            p = _pair_int(mu, nu, delta)
            if p:
                acc += ca * cb * p
    return mpq(acc, ad * bd * delta.denom)


def gram_matrix(lam, delta: DeltaApprox):
    """Gram matrix of the symmetric monomials below lam (dominance),
    as (basis, rows) with exact rational entries."""
    lam = check_weight(lam)
    basis = weights_below(lam)
    rows = [
        [monomial_pair_product(mu, nu, delta) for nu in basis] for mu in basis
    ]
    return basis, rows


@dataclass(frozen=True)
class StabilityReport:
    lam: tuple
    k: int
    k_step: int
    max_abs_diff: float
    entries: int


def stability_probe(lam, spec: CSpec, n: int, k: int, k_step: int = 10) -> StabilityReport:
    """Recompute the Gram matrix at order K and K + k_step and report the
    largest entrywise change (the single quantitative truncation probe)."""
    lam = check_weight(lam)
    basis, rows_a = gram_matrix(lam, cached_delta(spec, n, k))
    _, rows_b = gram_matrix(lam, cached_delta(spec, n, k + k_step))
    diff = 0.0
    for ra, rb in zip(rows_a, rows_b):
        for a, b in zip(ra, rb):
            diff = max(diff, abs(float(a - b)))
    return StabilityReport(
        lam=lam, k=k, k_step=k_step, max_abs_diff=diff, entries=len(basis) ** 2
    )
