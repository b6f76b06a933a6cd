"""Reduced c-function families and their truncated Taylor expansions.

Three families are supported:

* ExplicitPoly  -- both reduced c-functions given as polynomials,
* HallLittlewood -- the degree-one case (1 - t z) and (1 - t0 z)(1 - t1 z),
* Koornwinder   -- the q-series case built from infinite q-shifted
  factorials.

All coefficients are exact rationals; parameters must be rational.
"""

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Optional, Union

from .errors import DomainError
from .rational import ONE, ZERO, rat, rat_str


@dataclass(frozen=True)
class TruncSeries:
    """The first K+1 Taylor coefficients of a power series."""

    coeffs: tuple

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant term")

    def truncate(self, k: int) -> "TruncSeries":
        c = self.coeffs[: k + 1]
        return TruncSeries(c + (ZERO,) * (k + 1 - len(c)))


def series(coeffs) -> TruncSeries:
    return TruncSeries(tuple(rat(c) for c in coeffs))


def series_one(k: int) -> TruncSeries:
    return TruncSeries((ONE,) + (ZERO,) * k)


def series_mul(a: TruncSeries, b: TruncSeries, k: int) -> TruncSeries:
    out = [ZERO] * (k + 1)
    for i, ca in enumerate(a.coeffs[: k + 1]):
        if not ca:
            continue
        for j, cb in enumerate(b.coeffs[: k + 1 - i]):
            if cb:
                out[i + j] += ca * cb
    return TruncSeries(tuple(out))


def reciprocal_series(s: TruncSeries, k: int) -> TruncSeries:
    """Inverse power series: r_0 = 1, r_n = -sum_{j=1..n} s_j r_{n-j}."""
    if s.coeffs[0] != 1:
        raise DomainError("reciprocal requires constant coefficient 1")
    c = s.truncate(k).coeffs
    r = [ONE] + [ZERO] * k
    for n in range(1, k + 1):
        acc = ZERO
        for j in range(1, n + 1):
            if c[j]:
                acc += c[j] * r[n - j]
        r[n] = -acc
    return TruncSeries(tuple(r))


def pochhammer_inf_series(a, q, k: int) -> TruncSeries:
    """Taylor coefficients of (a z; q)_infinity up to order k.

    The infinite product f(z) = prod_{j>=0} (1 - a q^j z) satisfies
    f(z) = (1 - a z) f(q z), which pins the coefficients down exactly:
    c_0 = 1 and c_n = -a q^{n-1} c_{n-1} / (1 - q^n).  (No finite
    truncation of the product itself has the right coefficients; every
    dropped factor still contributes at order one.)
    """
    a, q = rat(a), rat(q)
    if abs(q) >= 1:
        raise DomainError(f"|q| must be < 1, got {rat_str(q)}")
    coeffs = [ONE]
    for n in range(1, k + 1):
        coeffs.append(-a * q ** (n - 1) * coeffs[-1] / (ONE - q**n))
    return TruncSeries(tuple(coeffs))


def euler_pochhammer_series(a, q, k: int) -> TruncSeries:
    """Independent oracle for (a z; q)_infinity: Euler's expansion with
    n-th coefficient (-a)^n q^{n(n-1)/2} / ((1-q)(1-q^2)...(1-q^n))."""
    a, q = rat(a), rat(q)
    if abs(q) >= 1:
        raise DomainError(f"|q| must be < 1, got {rat_str(q)}")
    coeffs = [ONE]
    qfac = ONE
    for n in range(1, k + 1):
        qfac *= ONE - q**n
        coeffs.append((-a) ** n * q ** (n * (n - 1) // 2) / qfac)
    return TruncSeries(tuple(coeffs))


def _rat_field(name, value):
    try:
        return rat(value)
    except (ZeroDivisionError, ValueError) as exc:
        raise DomainError(f"field {name!r} is not a valid rational: {value!r}") from exc


@dataclass(frozen=True)
class ExplicitPoly:
    """Polynomial reduced c-functions, given by their coefficient lists
    (constant terms must be 1; degrees at most M and 2M)."""

    c0: tuple
    c1: tuple

    def __post_init__(self):
        object.__setattr__(self, "c0", tuple(_rat_field("c0", c) for c in self.c0))
        object.__setattr__(self, "c1", tuple(_rat_field("c1", c) for c in self.c1))
        if not self.c0 or not self.c1 or self.c0[0] != 1 or self.c1[0] != 1:
            raise DomainError("reduced c-functions must have constant term 1")

    @property
    def degree_bound(self) -> int:
        """Smallest M with deg c0 <= M and deg c1 <= 2M."""
        d0 = _true_degree(self.c0)
        d1 = _true_degree(self.c1)
        return max(d0, (d1 + 1) // 2)


def _true_degree(coeffs) -> int:
    deg = 0
    for i, c in enumerate(coeffs):
        if c:
            deg = i
    return deg


@dataclass(frozen=True)
class HallLittlewood:
    """Degree-one family: c0 = 1 - t z, c1 = (1 - t0 z)(1 - t1 z)."""

    t: object
    t0: object
    t1: object

    def __post_init__(self):
        for name in ("t", "t0", "t1"):
            v = _rat_field(name, getattr(self, name))
            object.__setattr__(self, name, v)
            if not -1 < v < 1:
                raise DomainError(f"{name} must lie in (-1, 1), got {rat_str(v)}")

    @property
    def degree_bound(self) -> int:
        return 1


@dataclass(frozen=True)
class Koornwinder:
    """q-series family: c0 = (t z; q)_inf / (q z; q)_inf and
    c1 = prod_r (t_r z; q)_inf / (q z^2; q)_inf."""

    q: object
    t: object
    t0: object
    t1: object
    t2: object
    t3: object

    def __post_init__(self):
        q = _rat_field("q", self.q)
        object.__setattr__(self, "q", q)
        if not 0 < q < 1:
            raise DomainError(f"q must lie in (0, 1), got {rat_str(q)}")
        for name in ("t", "t0", "t1", "t2", "t3"):
            v = _rat_field(name, getattr(self, name))
            object.__setattr__(self, name, v)
            if not -1 < v < 1:
                raise DomainError(f"{name} must lie in (-1, 1), got {rat_str(v)}")

    @property
    def t_params(self):
        return (self.t0, self.t1, self.t2, self.t3)


CSpec = Union[ExplicitPoly, HallLittlewood, Koornwinder]


def taylor_c(spec: CSpec, p: int, k: int) -> TruncSeries:
    """Truncated Taylor expansion of the reduced c-function c_p."""
    if p not in (0, 1):
        raise DomainError("p must be 0 or 1")
    if isinstance(spec, ExplicitPoly):
        return series(spec.c0 if p == 0 else spec.c1).truncate(k)
    if isinstance(spec, HallLittlewood):
        if p == 0:
            return series((ONE, -spec.t)).truncate(k)
        return series(
            (ONE, -(spec.t0 + spec.t1), spec.t0 * spec.t1)
        ).truncate(k)
    if isinstance(spec, Koornwinder):
        q = spec.q
        if p == 0:
            num = pochhammer_inf_series(spec.t, q, k)
            den = pochhammer_inf_series(q, q, k)
            return series_mul(num, reciprocal_series(den, k), k)
        num = series_one(k)
        for tr in spec.t_params:
            num = series_mul(num, pochhammer_inf_series(tr, q, k), k)
        # denominator (q z^2; q)_inf: a series in z^2; invert in the
        # squared variable, then interleave with zeros
        half = pochhammer_inf_series(q, q, k // 2)
        half_inv = reciprocal_series(half, k // 2)
        interleaved = [ZERO] * (k + 1)
        for i, c in enumerate(half_inv.coeffs):
            interleaved[2 * i] = c
        return series_mul(num, TruncSeries(tuple(interleaved)), k)
    raise TypeError(f"unknown c-function family {type(spec).__name__}")


@dataclass(frozen=True)
class DecayBudget:
    """Decay-rate budget of the Taylor coefficients: a geometric rate
    epsilon for q-series families, or an exact cutoff degree for
    polynomial families."""

    epsilon: Optional[float]
    exact_degree: Optional[int]

    @property
    def is_exact(self) -> bool:
        return self.exact_degree is not None


def decay_budget(spec: CSpec) -> DecayBudget:
    if isinstance(spec, Koornwinder):
        return DecayBudget(epsilon=math.log(1 / float(spec.q)), exact_degree=None)
    return DecayBudget(epsilon=None, exact_degree=spec.degree_bound)


def polynomial_degree(spec: CSpec) -> Optional[int]:
    """The exactness degree M for polynomial families, else None."""
    if isinstance(spec, Koornwinder):
        return None
    return spec.degree_bound


def min_modulus_on_circle(spec: CSpec, p: int, samples: int = 512) -> float:
    """Sample |c_p| on the unit circle (double precision).

    A value near zero flags parameters violating the zero-free
    hypothesis; this is a diagnostic, not a certificate.
    """
    if isinstance(spec, Koornwinder):
        q = float(spec.q)
        depth = max(60, int(math.ceil(-50 / math.log10(q))) if q > 0 else 60)

        def poch(a: complex, z: complex) -> complex:
            out = 1.0 + 0j
            for j in range(depth):
                out *= 1 - a * q**j * z
            return out

        if p == 0:
            f = lambda z: poch(float(spec.t), z) / poch(q, z)
        else:
            def f(z):
                num = 1.0 + 0j
                for tr in spec.t_params:
                    num *= poch(float(tr), z)
                return num / poch(q, z * z)
    else:
        coeffs = [float(c) for c in (spec.c0 if p == 0 else spec.c1)] \
            if isinstance(spec, ExplicitPoly) else None
        if coeffs is None:
            s = taylor_c(spec, p, 2 * spec.degree_bound)
            coeffs = [float(c) for c in s.coeffs]
        f = lambda z: sum(c * z**i for i, c in enumerate(coeffs))
    lo = math.inf
    for j in range(samples):
        z = cmath.exp(2j * math.pi * j / samples)
        lo = min(lo, abs(f(z)))
    return lo


def warn_if_nearly_singular(spec: CSpec, threshold: float = 1e-6):
    for p in (0, 1):
        lo = min_modulus_on_circle(spec, p)
        if lo < threshold:
            warnings.warn(
                f"reduced c-function p={p} nearly vanishes on the unit "
                f"circle (min |c| = {lo:.3e}); the weight may be degenerate",
                stacklevel=2,
            )


def parse_cspec(obj: dict) -> CSpec:
    """Build a CSpec from its JSON object form."""
    if not isinstance(obj, dict) or "family" not in obj:
        raise DomainError("c-function spec must be an object with a 'family' key")
    family = obj["family"].lower()
    try:
        if family == "koornwinder":
            t_r = obj["t_r"]
            if len(t_r) != 4:
                raise DomainError("koornwinder needs exactly four t_r values")
            return Koornwinder(obj["q"], obj["t"], *t_r)
        if family in ("hall-littlewood", "hall_littlewood", "halllittlewood"):
            return HallLittlewood(obj["t"], obj["t0"], obj["t1"])
        if family in ("explicit", "explicit-poly", "explicitpoly"):
            return ExplicitPoly(tuple(obj["c0"]), tuple(obj["c1"]))
    except KeyError as exc:
        raise DomainError(f"c-function spec is missing field {exc}") from exc
    except ZeroDivisionError as exc:
        raise DomainError(f"invalid rational in c-function spec: {exc}") from exc
    raise DomainError(f"unknown c-function family {obj['family']!r}")


def cspec_to_json(spec: CSpec) -> dict:
    if isinstance(spec, Koornwinder):
        return {
            "family": "koornwinder",
            "q": rat_str(spec.q),
            "t": rat_str(spec.t),
            "t_r": [rat_str(v) for v in spec.t_params],
        }
    if isinstance(spec, HallLittlewood):
        return {
            "family": "hall-littlewood",
            "t": rat_str(spec.t),
            "t0": rat_str(spec.t0),
            "t1": rat_str(spec.t1),
        }
    return {
        "family": "explicit",
        "c0": [rat_str(c) for c in spec.c0],
        "c1": [rat_str(c) for c in spec.c1],
    }
