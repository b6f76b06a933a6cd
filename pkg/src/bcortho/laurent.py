"""Sparse exact Laurent polynomials in N torus variables.

A term with exponent vector n stands for e^{i<n,x>}, written as the
monomial z^n with z_j = e^{i x_j}.  Coefficients are exact rationals and
stored zero coefficients are dropped eagerly, so equality of values is
equality of dicts.
"""

import heapq
from functools import lru_cache

from .errors import DimensionError, DivisibilityError, InvarianceError
from .hyperoctahedral import (
    check_weight,
    dominant_representative,
    is_dominant,
    orbit,
    rho,
    signed_orbit_maps,
)
from .rational import ONE, ZERO, rat


class LaurentPoly:
    """Finite map from integer exponent vectors to nonzero rationals."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None, *, _clean=True):
        self.n = n
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = {tuple(e): rat(c) for e, c in terms.items() if c != 0}
        else:
            self.terms = terms

    @classmethod
    def zero(cls, n):
        return cls(n, {}, _clean=False)

    @classmethod
    def one(cls, n):
        return cls(n, {(0,) * n: ONE}, _clean=False)

    @classmethod
    def monomial(cls, exponent, coeff=1):
        coeff = rat(coeff)
        exponent = tuple(int(e) for e in exponent)
        if coeff == 0:
            return cls.zero(len(exponent))
        return cls(len(exponent), {exponent: coeff}, _clean=False)

    def _check_dim(self, other):
        if self.n != other.n:
            raise DimensionError(
                f"polynomials in {self.n} and {other.n} variables"
            )

    def is_zero(self):
        return not self.terms

    def coefficient(self, exponent):
        return self.terms.get(tuple(exponent), ZERO)

    def constant_term(self):
        """Coefficient at the zero exponent; the normalized torus
        integral of the polynomial."""
        return self.terms.get((0,) * self.n, ZERO)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check_dim(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly(self.n, out, _clean=False)

    def __neg__(self):
        return LaurentPoly(
            self.n, {e: -c for e, c in self.terms.items()}, _clean=False
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = rat(c)
        if c == 0:
            return LaurentPoly.zero(self.n)
        return LaurentPoly(
            self.n, {e: c * v for e, v in self.terms.items()}, _clean=False
        )

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        self._check_dim(other)
        # iterate the smaller factor in the outer loop
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        get = out.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = get(e, ZERO) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly(self.n, out, _clean=False)

    __rmul__ = __mul__

    def conjugate(self):
        """Complex conjugation for real coefficients: negate exponents."""
        return LaurentPoly(
            self.n, {tuple(-x for x in e): c for e, c in self.terms.items()},
            _clean=False,
        )

    def transform(self, w):
        """Substitute x -> x_w, i.e. map each exponent n to the vector
        n' with n'_k = eps_{sigma^-1 k} * n_{sigma^-1 k}."""
        inv = w.inverse()
        sigma, eps = inv.sigma, inv.eps
        out = {}
        for e, c in self.terms.items():
            e2 = tuple(eps[j] * e[sigma[j]] for j in range(self.n))
            out[e2] = out.get(e2, ZERO) + c
        return LaurentPoly(self.n, out)

    def __repr__(self):
        if not self.terms:
            return "LaurentPoly(0)"
        bits = [f"{c}*z^{list(e)}" for e, c in sorted(self.terms.items())]
        return "LaurentPoly(" + " + ".join(bits) + ")"


def symmetric_monomial(lam) -> LaurentPoly:
    """Sum of z^mu over the distinct W-orbit of lam (all coefficients 1)."""
    lam = check_weight(lam)
    return LaurentPoly(len(lam), {e: ONE for e in orbit(lam)}, _clean=False)


def invariance_defect(f: LaurentPoly):
    """Return an exponent witnessing non-invariance, or None."""
    for e, c in f.terms.items():
        rep = tuple(sorted((abs(x) for x in e), reverse=True))
        for img in orbit(rep):
            if f.terms.get(img, ZERO) != c:
                return e
    return None


def is_invariant(f: LaurentPoly) -> bool:
    return invariance_defect(f) is None


def monomial_coordinates(f: LaurentPoly) -> dict:
    """Coordinates of a W-invariant polynomial on the symmetric-monomial
    basis: read off the coefficients at dominant exponents."""
    bad = invariance_defect(f)
    if bad is not None:
        raise InvarianceError(f"not W-invariant at exponent {bad}")
    return {e: c for e, c in f.terms.items() if is_dominant(e)}


def from_monomial_coordinates(coords: dict, n: int) -> LaurentPoly:
    out = LaurentPoly.zero(n)
    for mu, c in coords.items():
        out = out + symmetric_monomial(mu).scale(c)
    return out


@lru_cache(maxsize=None)
def weyl_denominator(n: int) -> LaurentPoly:
    """The alternating denominator, expanded with the paired-factor
    identity so that all exponents stay integral:

        prod_{j<k} (z_j + 1/z_j - z_k - 1/z_k) * prod_j (z_j - 1/z_j).

    Its lex-maximal term is z^rho with coefficient 1.
    """
    out = LaurentPoly.one(n)
    for j in range(n):
        for k in range(j + 1, n):
            f = LaurentPoly.zero(n)
            for idx, sign in ((j, 1), (j, -1), (k, 1), (k, -1)):
                e = [0] * n
                e[idx] = sign
                f = f + LaurentPoly.monomial(e, 1 if idx == j else -1)
            out = out * f
    for j in range(n):
        e = [0] * n
        e[j] = 1
        f = LaurentPoly.monomial(e, 1)
        e[j] = -1
        f = f + LaurentPoly.monomial(e, -1)
        out = out * f
    return out


def antisymmetrize(vec) -> LaurentPoly:
    """Sum of det(w) z^{w(vec)} over W; zero iff vec is singular."""
    vec = tuple(int(x) for x in vec)
    out = {}
    for det, sigma, eps in signed_orbit_maps(len(vec)):
        e = tuple(eps[j] * vec[sigma[j]] for j in range(len(vec)))
        s = out.get(e, 0) + det
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return LaurentPoly(len(vec), {e: rat(c) for e, c in out.items()}, _clean=False)


def antisymmetrized(f: LaurentPoly) -> LaurentPoly:
    """Sum of det(w) * f(x_w) over W, computed term by term."""
    out = {}
    get = out.get
    for det, sigma, eps in signed_orbit_maps(f.n):
        # exponent image under x -> x_w equals the action of w^-1 on n;
        # summing over the whole group, either convention is the same
        for e, c in f.terms.items():
            e2 = tuple(eps[j] * e[sigma[j]] for j in range(f.n))
            s = get(e2, ZERO) + (c if det > 0 else -c)
            if s:
                out[e2] = s
            else:
                del out[e2]
    return LaurentPoly(f.n, out, _clean=False)


def exact_divide(f: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Quotient q with q*d == f, by repeated cancellation of the
    lex-maximal remainder term against the lex-maximal term of d.

    Raises DivisibilityError when f is not an exact multiple of d.
    """
    f._check_dim(d)
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return LaurentPoly.zero(f.n)
    lead = max(d.terms)
    lead_c = d.terms[lead]
    d_items = list(d.terms.items())
    # the lex-minimal quotient exponent of a true factorization is
    # lexmin(f) - lexmin(d); anything lex-smaller signals a remainder
    lex_floor = tuple(a - b for a, b in zip(min(f.terms), min(d.terms)))

    rem = dict(f.terms)
    heap = [tuple(-x for x in e) for e in rem]
    heapq.heapify(heap)
    quot = {}
    budget = 10**7  # hard stop for runaway non-exact divisions
    while heap:
        budget -= 1
        if budget < 0:
            raise DivisibilityError("division did not terminate; not an exact multiple")
        e = tuple(-x for x in heapq.heappop(heap))
        c = rem.get(e)
        if not c:
            continue  # stale heap entry
        qe = tuple(a - b for a, b in zip(e, lead))
        if qe < lex_floor:
            raise DivisibilityError("nonzero remainder in exact division")
        qc = c / lead_c
        quot[qe] = qc
        for de, dc in d_items:
            te = tuple(a + b for a, b in zip(qe, de))
            s = rem.get(te, ZERO) - qc * dc
            if s:
                if te not in rem:
                    heapq.heappush(heap, tuple(-x for x in te))
                rem[te] = s
            else:
                rem.pop(te, None)
    if any(rem.values()):
        raise DivisibilityError("nonzero remainder in exact division")
    return LaurentPoly(f.n, quot, _clean=False)


@lru_cache(maxsize=None)
def weyl_character(mu) -> LaurentPoly:
    """Character chi_mu = antisymmetrize(mu + rho) / weyl_denominator.

    W-invariant, monic at m_mu, supported on the monomials below mu.
    Cached per (rank, mu).
    """
    mu = check_weight(mu)
    n = len(mu)
    shifted = tuple(m + r for m, r in zip(mu, rho(n)))
    return exact_divide(antisymmetrize(shifted), weyl_denominator(n))


@lru_cache(maxsize=None)
def weyl_character_coords(mu):
    """Monomial coordinates of chi_mu, as a cached dict."""
    return monomial_coordinates(weyl_character(tuple(mu)))
