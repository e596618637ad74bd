"""Closed-form sizes and lower/upper bounds for sumsets, as integer functions.

Bounds that depend on a concrete set of integers (the Lev, Freiman and
extended bounds) require normalized input: ``0 = a_0 < ... < a_{k-1}`` with
gcd 1. They raise :class:`~gensumset.core.DomainError` otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .core import DomainError, IntSet, divisors, is_normalized, positive_remainder
from .engine import iterated_sumset, restricted_sumset

__all__ = [
    "is_prime",
    "GoldenLinear",
    "THETA",
    "BoundReport",
    "classic_lower_bounds",
    "cd_bound",
    "dsh_bound",
    "gen_lower_bound",
    "ekp_mu",
    "bajnok_size",
    "main_size",
    "mu_ge_upper",
    "lev_lower_bound",
    "lev_restricted_lower",
    "freiman_2A_lower",
    "FreimanCover",
    "freiman_cover_check",
    "extended_bound_ge",
    "extended_bound_r2",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % q for q in range(2, math.isqrt(n) + 1))


@dataclass(frozen=True)
class GoldenLinear:
    """The real number ``a + b*theta`` with rational a, b and theta = (1 + sqrt 5)/2.

    Comparisons and :func:`math.ceil` are exact.
    """

    a: Fraction
    b: Fraction

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __add__(self, other):
        other = _as_golden(other)
        return GoldenLinear(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return GoldenLinear(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-_as_golden(other))

    def __rsub__(self, other):
        return _as_golden(other) - self

    def __mul__(self, n):
        if isinstance(n, GoldenLinear):
            # theta^2 = theta + 1
            a, b, c, d = self.a, self.b, n.a, n.b
            return GoldenLinear(a * c + b * d, a * d + b * c + b * d)
        return GoldenLinear(self.a * n, self.b * n)

    __rmul__ = __mul__

    def sign(self) -> int:
        # a + b*theta = (x + y*sqrt(5)) / 2
        x, y = 2 * self.a + self.b, self.b
        sx, sy = _sgn(x), _sgn(y)
        if sy == 0 or sx == sy:
            return sx
        if sx == 0:
            return sy
        return sx if x * x > 5 * y * y else sy

    def _cmp(self, other) -> int:
        return (self - _as_golden(other)).sign()

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * (1 + math.sqrt(5)) / 2

    def __floor__(self):
        n = math.floor(float(self))
        # float is only a starting guess; settle exactly
        while self < n:
            n -= 1
        while self >= n + 1:
            n += 1
        return n

    def __ceil__(self):
        n = math.floor(self)
        return n if self == n else n + 1


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _as_golden(x) -> GoldenLinear:
    if isinstance(x, GoldenLinear):
        return x
    if isinstance(x, (int, Fraction)):
        return GoldenLinear(x, 0)
    raise TypeError(f"cannot combine GoldenLinear with {type(x).__name__}")


THETA = GoldenLinear(0, 1)


@dataclass(frozen=True)
class BoundReport:
    """A bound together with the size actually observed for some witness."""

    bound: int
    observed: int | None = None
    context: str = ""

    @property
    def attained(self) -> bool:
        return self.observed is not None and self.observed == self.bound


def _check_prime(p: int):
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")


def _check_normalized(A: IntSet, min_size: int = 3):
    if len(A) < min_size:
        raise DomainError(f"need |A| >= {min_size}, got {len(A)}")
    if not is_normalized(A):
        raise DomainError(f"{A} is not normalized (need a_0 = 0 and gcd 1)")


def classic_lower_bounds(k: int, h: int) -> tuple[int, int | None]:
    """(hk - h + 1, hk - h^2 + 1); the restricted bound is None for h > k."""
    if k < 1 or h < 1:
        raise DomainError(f"need k, h >= 1, got k={k}, h={h}")
    restricted = h * k - h * h + 1 if h <= k else None
    return h * k - h + 1, restricted


def cd_bound(p: int, k: int, h: int) -> int:
    _check_prime(p)
    if not 1 <= k <= p:
        raise DomainError(f"need 1 <= k <= p, got k={k}, p={p}")
    return min(p, h * k - h + 1)


def dsh_bound(p: int, k: int, h: int) -> int:
    _check_prime(p)
    if not 1 <= h <= k <= p:
        raise DomainError(f"need 1 <= h <= k <= p, got h={h}, k={k}, p={p}")
    return min(p, h * k - h * h + 1)


def gen_lower_bound(k: int, h: int, r: int, p: int | None = None) -> int:
    """h(k-1) - r(r-1) + 1, capped at p for subsets of Z_p.

    Over Z the bound is stated for ``h >= max(r, 2)``.
    """
    if not 1 <= r <= k:
        raise DomainError(f"need 1 <= r <= k, got r={r}, k={k}")
    if h < r:
        raise DomainError(f"need h >= r, got h={h}, r={r}")
    value = h * (k - 1) - r * (r - 1) + 1
    if p is None:
        if h < 2:
            raise DomainError("integer bound needs h >= 2")
        return value
    _check_prime(p)
    if k > p:
        raise DomainError(f"k={k} exceeds p={p}")
    return min(p, value)


def ekp_mu(m: int, k: int, h: int) -> int:
    """Minimum of |hA| over k-subsets A of Z_m."""
    if not 1 <= k <= m:
        raise DomainError(f"need 1 <= k <= m, got k={k}, m={m}")
    return min((h * (-(-k // d)) - h + 1) * d for d in divisors(m))


def _check_divisor(m: int, d: int):
    if d < 1 or m % d:
        raise DomainError(f"{d} does not divide {m}")


def bajnok_size(m: int, k: int, h: int, d: int) -> int:
    """Exact size of the restricted h-fold sumset of A_d(m, k)."""
    _check_divisor(m, d)
    if not 1 <= k <= m or h < 1:
        raise DomainError(f"need 1 <= k <= m and h >= 1, got k={k}, m={m}, h={h}")
    if h == k:
        return 1
    if h > k:
        return 0
    v = positive_remainder(k, d).v
    w = positive_remainder(h, d).v
    generic = h * k - h * h + 1
    if h <= min(v, d - 1):
        return min(m, (h * (-(-k // d)) - h + 1) * d, generic)
    if w < v:
        delta = (v - w) * w - (d - 1)
    elif v < w < d:
        delta = (d - w) * (w - v) - (d - 1)
    elif v == w == d:
        delta = d - 1
    else:
        delta = 0
    return min(m, generic - delta)


def main_size(m: int, k: int, h: int, r: int, d: int) -> int:
    """Exact size of h^(>=r) A_d(m, k) for h > r."""
    _check_divisor(m, d)
    if not 1 <= r <= k <= m:
        raise DomainError(f"need 1 <= r <= k <= m, got r={r}, k={k}, m={m}")
    if h <= r:
        raise DomainError(f"need h > r, got h={h}, r={r}; use bajnok_size for h = r")
    v = positive_remainder(k, d).v
    w = positive_remainder(r, d).v
    generic = h * (k - 1) - r * (r - 1) + 1
    if r <= min(v, d - 1):
        return min(m, (h * (-(-k // d)) - h + 1) * d, generic)
    if w < v:
        delta = (h - r) * (v - 1) + w * (v - w) - (d - 1)
    elif v < w < d:
        delta = (h - r) * (v - 1) + (d - w) * (w - v) - (d - 1)
    else:
        delta = (h - r) * (v - 1) - (d - 1)
    return min(m, generic - delta)


def mu_ge_upper(m: int, k: int, h: int, r: int) -> tuple[int, int]:
    """Smallest main_size over the divisors of m, with the (least) divisor attaining it."""
    return min((main_size(m, k, h, r, d), d) for d in divisors(m))


def lev_lower_bound(A: IntSet, h: int) -> int:
    """|(h-1)A| + min(a_{k-1}, h(k-2) + 1), a lower bound for |hA|."""
    _check_normalized(A)
    if h < 2:
        raise DomainError(f"need h >= 2, got {h}")
    k = len(A)
    return len(iterated_sumset(A, h - 1)) + min(A.max, h * (k - 2) + 1)


def _lev_restricted_value(A: IntSet) -> int:
    k, top = len(A), A.max
    if top <= 2 * k - 5:
        return top + k - 2
    return math.ceil((THETA + 1) * k - 6)


def lev_restricted_lower(A: IntSet) -> int:
    """Lower bound for the restricted 2-fold sumset; the golden-ratio branch is rounded up."""
    _check_normalized(A)
    return _lev_restricted_value(A)


def freiman_2A_lower(A: IntSet) -> int:
    _check_normalized(A)
    k, top = len(A), A.max
    return top + k if top <= 2 * k - 3 else 3 * k - 3


class FreimanCover(NamedTuple):
    """b from |2A| = 2k - 1 + b and the length of the shortest progression covering A.

    ``holds`` compares the cover length with k + b for every input;
    ``applicable`` is False when |2A| > 3k - 4, where the cover statement does not apply.
    """

    b: int
    cover_length: int
    holds: bool
    applicable: bool


def freiman_cover_check(A: IntSet) -> FreimanCover:
    _check_normalized(A)
    k = len(A)
    size = len(iterated_sumset(A, 2))
    b = size - (2 * k - 1)
    cover = A.max + 1  # gcd 1 forces difference 1
    return FreimanCover(b, cover, cover <= k + b, size <= 3 * k - 4)


def extended_bound_ge(A: IntSet, h: int, r: int, omit_minus_one: bool = False) -> int:
    """Lower bound for |h^(>=r)A| via |r^A| + |(h-r-1)A| + min(a_{k-1}, (h-r)(k-2)+1) - 1.

    The trailing ``- 1`` comes from |X + Y| >= |X| + |Y| - 1. Without it
    (``omit_minus_one=True``) the value is not a valid bound: A = {0, 1, 2},
    h = 4, r = 2 gives 8 while the sumset has 7 elements.
    """
    _check_normalized(A)
    if not 1 <= r <= len(A):
        raise DomainError(f"need 1 <= r <= |A|, got r={r}")
    if h < r + 2:
        raise DomainError(f"need h >= r + 2, got h={h}, r={r}")
    k = len(A)
    value = (
        len(restricted_sumset(A, r))
        + len(iterated_sumset(A, h - r - 1))
        + min(A.max, (h - r) * (k - 2) + 1)
    )
    return value if omit_minus_one else value - 1


def extended_bound_r2(A: IntSet, h: int, omit_minus_one: bool = False) -> int:
    """Lower bound for |h^(>=2)A| via |(h-2)A| plus the restricted 2-fold bound, minus 1.

    As with :func:`extended_bound_ge`, ``omit_minus_one=True`` returns a value
    that fails on the interval {0, ..., 6} with h = 4 (24 vs 23).
    """
    _check_normalized(A)
    if h < 4:
        raise DomainError(f"need h >= 4, got {h}")
    value = len(iterated_sumset(A, h - 2)) + _lev_restricted_value(A)
    return value if omit_minus_one else value - 1
