"""Gram-Schmidt polynomials over the partially ordered monomial basis,
truncated asymptotic functions, and the empirical theorem checks."""

import math
import statistics
from dataclasses import dataclass
from typing import Optional

from gmpy2 import isqrt, mpq

from .cfuncs import CSpec, polynomial_degree, taylor_c
from .errors import DegeneracyError
from .hyperoctahedral import (
    check_weight,
    dominant_representative,
    min_gap,
    rho,
    weights_below,
    weights_lex_below,
)
from .innerproduct import DeltaApprox, coords_inner, monomial_pair_product
from .laurent import (
    LaurentPoly,
    antisymmetrized,
    exact_divide,
    from_monomial_coordinates,
    monomial_coordinates,
    weyl_character_coords,
    weyl_denominator,
)
from .linsolve import solve
from .rational import ONE, ZERO, rat

DOMINANCE = "dominance"
LEXICOGRAPHIC = "lexicographic"


@dataclass(frozen=True)
class MonicOrthoPoly:
    """Monic Gram-Schmidt polynomial: coords over the expansion basis
    with coords[lam] == 1, and its exact squared norm.  The unit-norm
    polynomial of the underlying theory is coords / sqrt(norm_sq)."""

    lam: tuple
    coords: dict
    norm_sq: object
    ordering: str
    k: int

    def to_laurent(self, n: int) -> LaurentPoly:
        return from_monomial_coordinates(self.coords, n)


@dataclass(frozen=True)
class AsymptoticPoly:
    """Truncation-level-m polynomial approximation of the asymptotic
    function, in monomial coordinates."""

    lam: tuple
    m: int
    coords: dict

    def to_laurent(self, n: int) -> LaurentPoly:
        return from_monomial_coordinates(self.coords, n)


def expansion_basis(lam, ordering: str):
    if ordering == DOMINANCE:
        return weights_below(lam)
    if ordering == LEXICOGRAPHIC:
        return weights_lex_below(lam)
    raise ValueError(f"unknown ordering {ordering!r}")


def monic_orthogonal(lam, delta: DeltaApprox, ordering: str = DOMINANCE) -> MonicOrthoPoly:
    """Solve the exact linear system <P, m_mu> = 0 for every mu strictly
    below lam in the chosen ordering, with P monic at m_lam.

    In the dominance ordering both the constraints and the expansion run
    over the weights comparable to lam; weights incomparable to lam do
    not participate.
    """
    lam = check_weight(lam)
    basis = expansion_basis(lam, ordering)
    below = [mu for mu in basis if mu != lam]
    coords = {lam: ONE}
    if below:
        matrix = [
            [monomial_pair_product(mu, nu, delta) for nu in below] for mu in below
        ]
        rhs = [-monomial_pair_product(mu, lam, delta) for mu in below]
        try:
            solution = solve(matrix, rhs)
        except DegeneracyError as exc:
            raise DegeneracyError(
                f"Gram system for {lam} ({ordering}) is singular -- "
                f"truncation order K={delta.k} too small or degenerate "
                f"parameters ({exc})"
            ) from exc
        for mu, c in zip(below, solution):
            if c:
                coords[mu] = c
    norm_sq = monomial_pair_product(lam, lam, delta)
    for mu in below:
        c = coords.get(mu)
        if c:
            norm_sq += c * monomial_pair_product(lam, mu, delta)
    if norm_sq <= 0:
        raise DegeneracyError(
            f"nonpositive squared norm for {lam}: weight approximation is "
            f"not positive definite at K={delta.k}"
        )
    return MonicOrthoPoly(
        lam=lam, coords=coords, norm_sq=norm_sq, ordering=ordering, k=delta.k
    )


def _truncated_chat(spec: CSpec, m: int, n: int) -> LaurentPoly:
    """The product of truncated reduced c-functions evaluated at the
    negative root monomials: c0 keeps orders <= m, c1 orders <= 2m."""
    c0 = taylor_c(spec, 0, m).coeffs if m > 0 else (ONE,)
    c1 = taylor_c(spec, 1, 2 * m).coeffs if m > 0 else (ONE,)

    def at_direction(coeffs, direction):
        terms = {}
        for order, c in enumerate(coeffs):
            if c:
                terms[tuple(order * d for d in direction)] = c
        return LaurentPoly(n, terms, _clean=False)

    out = LaurentPoly.one(n)
    for j in range(n):
        for k in range(j + 1, n):
            d = [0] * n
            d[j], d[k] = -1, -1
            out = out * at_direction(c0, tuple(d))
            d[k] = 1
            out = out * at_direction(c0, tuple(d))
    for j in range(n):
        d = [0] * n
        d[j] = -1
        out = out * at_direction(c1, tuple(d))
    return out


def truncated_asymptotic(lam, m: int, spec: CSpec, method: str = "divide") -> AsymptoticPoly:
    """Expand the level-m truncated asymptotic function in monomial
    coordinates.

    method "divide": antisymmetrize the full truncated product shifted
    by lam + rho and divide exactly by the Weyl denominator.

    method "characters": classify each product term by the dominant
    representative of lam + rho - n, drop singular ones, and accumulate
    signed Weyl characters.  Both paths agree exactly; "divide" is the
    cheaper one at large m.
    """
    lam = check_weight(lam)
    if m < 0:
        raise ValueError("truncation level must be nonnegative")
    n = len(lam)
    chat = _truncated_chat(spec, m, n)
    shift = tuple(a + b for a, b in zip(lam, rho(n)))

    if method == "divide":
        shifted = LaurentPoly(
            n,
            {
                tuple(e_i + s_i for e_i, s_i in zip(e, shift)): c
                for e, c in chat.terms.items()
            },
            _clean=False,
        )
        numerator = antisymmetrized(shifted)
        quotient = exact_divide(numerator, weyl_denominator(n))
        coords = monomial_coordinates(quotient)
    elif method == "characters":
        coords = {}
        for e, c in chat.terms.items():
            nu = tuple(e_i + s_i for e_i, s_i in zip(e, shift))
            rep = dominant_representative(nu)
            if rep.singular:
                continue
            mu = tuple(a - b for a, b in zip(rep.rep, rho(n)))
            contribution = c if rep.parity > 0 else -c
            for w, cc in weyl_character_coords(mu).items():
                s = coords.get(w, ZERO) + contribution * cc
                if s:
                    coords[w] = s
                else:
                    del coords[w]
        coords = {w: c for w, c in coords.items() if c}
    else:
        raise ValueError(f"unknown method {method!r}")
    return AsymptoticPoly(lam=lam, m=m, coords=coords)


def _inv_sqrt(x, digits: int = 60):
    """Rational approximation of 1/sqrt(x) with ~digits correct digits."""
    x = rat(x)
    if x <= 0:
        raise ValueError("inverse square root of a nonpositive value")
    scale = 10**digits
    num, den = x.numerator, x.denominator
    root = isqrt(num * den * scale * scale)  # floor of sqrt(num*den)*scale
    return mpq(den * scale, root)


def default_reference_level(spec: CSpec, m: int) -> int:
    """Stand-in level for the full asymptotic function: polynomial
    families are exact from their cutoff degree on; q-series families
    get ten extra orders so the stand-in error is subdominant."""
    deg = polynomial_degree(spec)
    if deg is not None:
        return max(deg, m)
    return m + 10


@dataclass(frozen=True)
class ErrorReport:
    lam: tuple
    m_used: int
    m_ref: int
    err_norm_sq: object  # high-precision rational; exact when exact_zero
    err_norm: float
    exact_zero: bool
    n_lambda: float
    asym_norm: float
    k: int
    tail_hint: float


def asymptotic_error(
    lam,
    spec: CSpec,
    delta: DeltaApprox,
    m: int,
    m_ref: Optional[int] = None,
) -> ErrorReport:
    """Distance in the weighted norm between the unit-normalized
    Gram-Schmidt polynomial and the level-m_ref truncated asymptotic
    function, plus the leading-coefficient and asymptotic norms."""
    lam = check_weight(lam)
    if m_ref is None:
        m_ref = default_reference_level(spec, m)
    if m_ref < m:
        raise ValueError("reference level must be at least the truncation level")
    ortho = monic_orthogonal(lam, delta)
    asym = truncated_asymptotic(lam, m_ref, spec)

    norm_sq = ortho.norm_sq
    cross = coords_inner(ortho.coords, asym.coords, delta)
    asym_sq = coords_inner(asym.coords, asym.coords, delta)

    # err^2 = 1 - 2*cross/sqrt(norm_sq) + asym_sq, in QQ(sqrt(norm_sq));
    # nonnegativity and exact vanishing are decided without rounding
    exact_zero = cross > 0 and (1 + asym_sq) ** 2 * norm_sq == 4 * cross**2
    if cross > 0:
        assert (1 + asym_sq) ** 2 * norm_sq >= 4 * cross**2, "negative squared error"
    if exact_zero:
        err_sq = ZERO
    else:
        err_sq = 1 + asym_sq - 2 * cross * _inv_sqrt(norm_sq)
        if err_sq < 0:
            # only round-off of the 60-digit surd approximation
            err_sq = ZERO
    return ErrorReport(
        lam=lam,
        m_used=m,
        m_ref=m_ref,
        err_norm_sq=err_sq,
        err_norm=math.sqrt(float(err_sq)),
        exact_zero=exact_zero,
        n_lambda=math.sqrt(float(norm_sq)),
        asym_norm=math.sqrt(float(asym_sq)),
        k=delta.k,
        tail_hint=delta.tail_hint,
    )


@dataclass(frozen=True)
class ExactCheckReport:
    lam: tuple
    cutoff_degree: int
    max_coord_dev: float
    norm_checked: bool
    norm_dev: float
    passed: bool


def verify_exact(lam, spec: CSpec, delta: DeltaApprox, tol: float = 1e-8) -> ExactCheckReport:
    """For polynomial c-function families with cutoff degree M and
    min_gap(lam) >= M - 1, the Gram-Schmidt polynomial must equal the
    level-M asymptotic function up to its leading coefficient; for
    min_gap(lam) >= M its norm must additionally be 1."""
    lam = check_weight(lam)
    deg = polynomial_degree(spec)
    if deg is None:
        raise ValueError("verify_exact needs a polynomial c-function family")
    gap = min_gap(lam)
    if gap < deg - 1:
        raise ValueError(
            f"min_gap({lam}) = {gap} < M - 1 = {deg - 1}: outside the exactness range"
        )
    asym = truncated_asymptotic(lam, deg, spec)
    lead = asym.coords.get(lam)
    if not lead:
        raise DegeneracyError(f"vanishing leading coefficient for {lam}")
    ortho = monic_orthogonal(lam, delta)
    keys = set(asym.coords) | set(ortho.coords)
    max_dev = 0.0
    for mu in keys:
        dev = abs(float(asym.coords.get(mu, ZERO) / lead - ortho.coords.get(mu, ZERO)))
        max_dev = max(max_dev, dev)
    norm_checked = gap >= deg
    norm_dev = 0.0
    if norm_checked:
        asym_sq = coords_inner(asym.coords, asym.coords, delta)
        norm_dev = abs(math.sqrt(float(asym_sq)) - 1.0)
    passed = max_dev <= tol and (not norm_checked or norm_dev <= tol)
    return ExactCheckReport(
        lam=lam,
        cutoff_degree=deg,
        max_coord_dev=max_dev,
        norm_checked=norm_checked,
        norm_dev=norm_dev,
        passed=passed,
    )


@dataclass(frozen=True)
class BiorthogonalityReport:
    lam: tuple
    m: int
    m_eval: int  # series depth of the stand-in for the full function
    values: dict  # mu -> exact <stand-in, m_mu>
    max_deviation: float


def biorthogonality_check(lam, m: int, delta: DeltaApprox, spec: CSpec) -> BiorthogonalityReport:
    """Check <P_lam, m_mu> = delta_{lam,mu} for every mu below lam, where
    P_lam is the full asymptotic function.

    P_lam itself is an infinite series, so it is stood in for by a deep
    truncation: exactly P_lam for polynomial families (depth = cutoff
    degree), and depth ceil(K/2) for q-series families, where the series
    tail is of the same order as the weight's own truncation error.  The
    reported deviation then shrinks as K grows, with both error sources
    kept in lockstep.
    """
    lam = check_weight(lam)
    if m > min_gap(lam):
        raise ValueError(f"level {m} exceeds min_gap({lam}) = {min_gap(lam)}")
    deg = polynomial_degree(spec)
    if deg is not None:
        m_eval = max(m, deg)
    else:
        m_eval = max(m, (delta.k + 1) // 2)
    asym = truncated_asymptotic(lam, m_eval, spec)
    values = {}
    max_dev = 0.0
    for mu in weights_below(lam):
        v = coords_inner(asym.coords, {mu: ONE}, delta)
        values[mu] = v
        target = ONE if mu == lam else ZERO
        max_dev = max(max_dev, abs(float(v - target)))
    return BiorthogonalityReport(
        lam=lam, m=m, m_eval=m_eval, values=values, max_deviation=max_dev
    )


@dataclass(frozen=True)
class DecayFit:
    slope: float
    intercept: float
    residual: float
    used: tuple  # (x, err) pairs entering the fit
    exact_zero_points: tuple  # x values with err == 0, excluded


def decay_fit(points) -> DecayFit:
    """Least-squares line through (x, log err); exact zeros cannot enter
    a log fit and are reported separately."""
    used, zeros = [], []
    for x, err in points:
        if err < 0:
            raise ValueError(f"negative error value at x={x}")
        if err == 0:
            zeros.append(x)
        else:
            used.append((x, err))
    if len(used) < 3:
        raise ValueError("need at least three positive points for a decay fit")
    xs = [float(x) for x, _ in used]
    ys = [math.log(float(e)) for _, e in used]
    slope, intercept = statistics.linear_regression(xs, ys)
    residual = math.sqrt(
        sum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys)) / len(xs)
    )
    return DecayFit(
        slope=slope,
        intercept=intercept,
        residual=residual,
        used=tuple(used),
        exact_zero_points=tuple(zeros),
    )


@dataclass(frozen=True)
class OrthogonalityScan:
    weights: tuple
    deviations: dict  # (lam, mu) -> float |<P_lam, P_mu>| for lam != mu
    max_deviation: float


def orthogonality_scan(weights, delta: DeltaApprox, ordering: str = DOMINANCE) -> OrthogonalityScan:
    """Pairwise unit-normalized inner products over a weight box,
    including pairs that are incomparable in the dominance order."""
    weights = tuple(check_weight(w) for w in weights)
    polys = {w: monic_orthogonal(w, delta, ordering) for w in weights}
    inv_norms = {w: _inv_sqrt(polys[w].norm_sq) for w in weights}
    deviations = {}
    max_dev = 0.0
    for i, lam in enumerate(weights):
        for mu in weights[i + 1 :]:
            raw = coords_inner(polys[lam].coords, polys[mu].coords, delta)
            dev = abs(float(raw * inv_norms[lam] * inv_norms[mu]))
            deviations[(lam, mu)] = dev
            max_dev = max(max_dev, dev)
    return OrthogonalityScan(
        weights=weights, deviations=deviations, max_deviation=max_dev
    )
