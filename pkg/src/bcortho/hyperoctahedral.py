"""Signed permutations, dominant weights and the dominance order.

The group W is the semidirect product of the symmetric group on N
letters with N sign flips (order 2^N * N!).  Dominant weights are
weakly decreasing tuples of nonnegative integers; they index every
polynomial in the package.
"""

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import DimensionError

Weight = tuple  # weakly decreasing tuple of nonnegative ints
IntVector = tuple


class OrderResult(Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def is_dominant(v) -> bool:
    return all(int(x) == x and x >= 0 for x in v) and all(
        v[j] >= v[j + 1] for j in range(len(v) - 1)
    )


def check_weight(lam):
    lam = tuple(int(x) for x in lam)
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not a dominant weight")
    return lam


def _perm_sign(sigma) -> int:
    sign = 1
    seen = [False] * len(sigma)
    for start in range(len(sigma)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = sigma[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class GroupElement:
    """A signed permutation (sigma, eps); sigma is 0-based."""

    sigma: tuple
    eps: tuple

    def __post_init__(self):
        n = len(self.sigma)
        if sorted(self.sigma) != list(range(n)):
            raise ValueError(f"{self.sigma} is not a permutation of 0..{n-1}")
        if len(self.eps) != n or any(e not in (1, -1) for e in self.eps):
            raise ValueError("eps must be a matching tuple of +/-1 signs")

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls(tuple(range(n)), (1,) * n)

    @property
    def n(self) -> int:
        return len(self.sigma)

    @property
    def det(self) -> int:
        return _perm_sign(self.sigma) * math.prod(self.eps)

    def compose(self, other: "GroupElement") -> "GroupElement":
        """Return self o other, so that act(self o other, v) ==
        act(self, act(other, v))."""
        if self.n != other.n:
            raise DimensionError("group elements of different rank")
        sigma = tuple(other.sigma[s] for s in self.sigma)
        eps = tuple(self.eps[j] * other.eps[self.sigma[j]] for j in range(self.n))
        return GroupElement(sigma, eps)

    def inverse(self) -> "GroupElement":
        inv = [0] * self.n
        for j, s in enumerate(self.sigma):
            inv[s] = j
        eps = tuple(self.eps[inv[j]] for j in range(self.n))
        return GroupElement(tuple(inv), eps)


def act(w: GroupElement, v) -> IntVector:
    """Coordinate action: result_j = eps_j * v[sigma_j]."""
    if len(v) != w.n:
        raise DimensionError(f"vector of length {len(v)} under rank-{w.n} element")
    return tuple(w.eps[j] * v[w.sigma[j]] for j in range(w.n))


@lru_cache(maxsize=None)
def group_elements(n: int) -> tuple:
    """All 2^n * n! elements of W, in a fixed deterministic order."""
    out = []
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            out.append(GroupElement(perm, signs))
    return tuple(out)


@lru_cache(maxsize=None)
def signed_orbit_maps(n: int) -> tuple:
    """(det, sigma, eps) triples for fast orbit loops."""
    return tuple((w.det, w.sigma, w.eps) for w in group_elements(n))


def compare_dominance(lam, mu) -> OrderResult:
    """Dominance order: compare all leading partial sums."""
    if len(lam) != len(mu):
        raise DimensionError("weights of different length")
    ge = le = True
    s_l = s_m = 0
    for a, b in zip(lam, mu):
        s_l += a
        s_m += b
        if s_l < s_m:
            ge = False
        if s_l > s_m:
            le = False
    if ge and le:
        return OrderResult.EQUAL
    if ge:
        return OrderResult.GREATER
    if le:
        return OrderResult.LESS
    return OrderResult.INCOMPARABLE


def dominates(lam, mu) -> bool:
    return compare_dominance(lam, mu) in (OrderResult.GREATER, OrderResult.EQUAL)


def min_gap(lam) -> int:
    """Minimal consecutive gap of lam, with an implicit trailing zero."""
    lam = tuple(lam)
    ext = lam + (0,)
    return min(ext[j] - ext[j + 1] for j in range(len(lam)))


def stabilizer_order(lam) -> int:
    """Order of the stabilizer of lam in W, computed from part
    multiplicities: equal nonzero parts may be permuted, zero parts may
    be permuted and sign-flipped."""
    lam = tuple(lam)
    zeros = sum(1 for x in lam if x == 0)
    order = 2**zeros * math.factorial(zeros)
    for value, group in itertools.groupby(sorted(x for x in lam if x != 0)):
        order *= math.factorial(sum(1 for _ in group))
    return order


@lru_cache(maxsize=65536)
def orbit(lam) -> tuple:
    """Distinct images of lam under W (full loop, deduplicated)."""
    lam = tuple(lam)
    seen = set()
    for _det, sigma, eps in signed_orbit_maps(len(lam)):
        seen.add(tuple(eps[j] * lam[sigma[j]] for j in range(len(lam))))
    return tuple(sorted(seen))


@dataclass(frozen=True)
class DominantRep:
    rep: tuple
    parity: int
    singular: bool


def dominant_representative(v) -> DominantRep:
    """Sort |v| descending; parity is the det of a signed permutation
    achieving it.  Vectors with a zero or a repeated absolute value are
    singular (the parity is then meaningless and reported as +1)."""
    v = tuple(v)
    absvals = [abs(x) for x in v]
    rep = tuple(sorted(absvals, reverse=True))
    if 0 in rep or len(set(rep)) < len(rep):
        return DominantRep(rep, 1, True)
    flips = sum(1 for x in v if x < 0)
    # permutation sign of the descending sort = parity of inversions
    inversions = 0
    for j in range(len(absvals)):
        for k in range(j + 1, len(absvals)):
            if absvals[j] < absvals[k]:
                inversions += 1
    parity = (-1) ** (flips + inversions)
    return DominantRep(rep, parity, False)


def _partitions_in_box(max_part: int, n: int):
    """Weakly decreasing tuples of length n with parts in [0, max_part]."""
    if n == 0:
        yield ()
        return
    for first in range(max_part, -1, -1):
        for rest in _partitions_in_box(first, n - 1):
            yield (first,) + rest


def dominant_weights_in_box(n: int, max_part: int) -> tuple:
    """All dominant weights of length n with largest part <= max_part."""
    return tuple(sorted(_partitions_in_box(max_part, n)))


def weights_below(lam) -> tuple:
    """All dominant mu with mu <= lam in dominance order.

    Brute-force scan of the box [0, lam_1]^N; the count is bounded by
    (1 + lam_1)^N.
    """
    lam = check_weight(lam)
    top = lam[0] if lam else 0
    return tuple(
        mu for mu in dominant_weights_in_box(len(lam), top) if dominates(lam, mu)
    )


def weights_lex_below(lam) -> tuple:
    """All dominant mu in the box [0, lam_1]^N with mu lex-smaller than
    (or equal to) lam."""
    lam = check_weight(lam)
    top = lam[0] if lam else 0
    return tuple(mu for mu in dominant_weights_in_box(len(lam), top) if mu <= lam)


def rho(n: int) -> Weight:
    """The staircase weight (N, N-1, ..., 1)."""
    if n < 1:
        raise ValueError("rank must be positive")
    return tuple(range(n, 0, -1))


def lex_compare(lam, mu) -> int:
    """Lexicographic comparison: -1, 0 or +1.  Refines dominance."""
    if len(lam) != len(mu):
        raise DimensionError("weights of different length")
    lam, mu = tuple(lam), tuple(mu)
    return (lam > mu) - (lam < mu)
