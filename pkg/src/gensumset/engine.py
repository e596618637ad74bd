"""Classical, restricted and generalized sumsets over Z and Z_m.

Three routes are provided and are expected to agree:

* :func:`gen_sumset` runs a dynamic programme over the elements of ``A`` whose
  state is (terms used, distinct elements used); every state holds the bitset
  of achievable sums.
* :func:`gen_sumset_via_identity` evaluates ``(h - r)A + r^A``.
* :func:`support_oracle` enumerates supports and multisets directly, using
  plain Python sets and no bitsets.

Over Z a sum of ``t`` terms is stored shifted by ``t * min(A)``, so every
bitset is a window starting at bit 0.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Union

from .core import DomainError, IntSet, ZmSet, _rotate, iter_bits

__all__ = [
    "MODES",
    "GenSumsetSpec",
    "SumSet",
    "minkowski_sum",
    "iterated_sumset",
    "restricted_sumset",
    "distinct_profile",
    "gen_sumset",
    "gen_sumset_via_identity",
    "support_oracle",
    "ORACLE_MAX_SIZE",
    "ORACLE_MAX_H",
]

SumSet = Union[ZmSet, IntSet]

MODES = ("ge", "le", "eq")
ORACLE_MAX_SIZE = 20
ORACLE_MAX_H = 12


@dataclass(frozen=True)
class GenSumsetSpec:
    """Which generalized sumset to compute: h terms, distinctness r, mode."""

    h: int
    r: int = 1
    mode: str = "ge"

    def __post_init__(self):
        if self.h < 1:
            raise DomainError(f"h must be >= 1, got {self.h}")
        if self.r < 1:
            raise DomainError(f"r must be >= 1, got {self.r}")
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}, got {self.mode!r}")

    def support_sizes(self, k: int) -> range:
        """Numbers of distinct summands admitted for a k-element set."""
        top = min(self.h, k)
        if self.mode == "ge":
            return range(self.r, top + 1)
        if self.mode == "le":
            return range(1, min(self.r, top) + 1)
        return range(self.r, self.r + 1) if self.r <= top else range(0)


class _Ambient:
    """Shift/decode helpers that hide the Z vs Z_m difference from the DP."""

    def __init__(self, A: SumSet):
        if isinstance(A, ZmSet):
            self.m = A.modulus
            self.base = 0
            self.steps = list(A.elements)
        elif isinstance(A, IntSet):
            self.m = None
            self.base = A.min if len(A) else 0
            self.steps = [a - self.base for a in A.elements]
        else:
            raise TypeError(f"expected ZmSet or IntSet, got {type(A).__name__}")

    def shift(self, mask: int, s: int) -> int:
        if self.m is None:
            return mask << s
        return _rotate(mask, s, self.m)

    def decode(self, mask: int, terms: int) -> SumSet:
        if self.m is None:
            off = terms * self.base
            return IntSet(i + off for i in iter_bits(mask))
        return ZmSet(self.m, mask)


def _empty_like(A: SumSet) -> SumSet:
    return ZmSet(A.modulus) if isinstance(A, ZmSet) else IntSet()


def _require_nonempty(A: SumSet, h: int):
    if h >= 1 and len(A) == 0:
        raise DomainError("sumsets of the empty set are undefined for h >= 1")


def minkowski_sum(A: SumSet, B: SumSet) -> SumSet:
    """{a + b : a in A, b in B}, reduced mod m for Z_m sets."""
    if isinstance(A, ZmSet) and isinstance(B, ZmSet):
        if A.modulus != B.modulus:
            raise DomainError(f"ambient mismatch: Z_{A.modulus} vs Z_{B.modulus}")
        out = 0
        for b in B:
            out |= _rotate(A.mask, b, A.modulus)
        return ZmSet(A.modulus, out)
    if isinstance(A, IntSet) and isinstance(B, IntSet):
        if not len(A) or not len(B):
            return IntSet()
        a0, b0 = A.min, B.min
        amask = 0
        for a in A:
            amask |= 1 << (a - a0)
        out = 0
        for b in B:
            out |= amask << (b - b0)
        return IntSet(i + a0 + b0 for i in iter_bits(out))
    raise DomainError(f"ambient mismatch: {type(A).__name__} vs {type(B).__name__}")


def _zero_like(A: SumSet) -> SumSet:
    return ZmSet(A.modulus, 1) if isinstance(A, ZmSet) else IntSet([0])


def iterated_sumset(A: SumSet, h: int) -> SumSet:
    """hA, with the convention 0A = {0}."""
    if h < 0:
        raise DomainError(f"h must be >= 0, got {h}")
    _require_nonempty(A, h)
    out = _zero_like(A)
    for _ in range(h):
        out = minkowski_sum(out, A)
    return out


def restricted_sumset(A: SumSet, h: int) -> SumSet:
    """Sums of h pairwise distinct elements of A; empty when h > |A|."""
    if h < 0:
        raise DomainError(f"h must be >= 0, got {h}")
    _require_nonempty(A, h)
    if h > len(A):
        return _empty_like(A)
    amb = _Ambient(A)
    # by_count[c] = sums of c distinct elements among those seen so far
    by_count = [1] + [0] * h
    for a in amb.steps:
        for c in range(h - 1, -1, -1):
            if by_count[c]:
                by_count[c + 1] |= amb.shift(by_count[c], a)
    return amb.decode(by_count[h], h)


def distinct_profile(A: SumSet, h_max: int) -> list[list[SumSet]]:
    """Sums split by number of terms and number of distinct summands.

    ``profile[t][s]`` is the set of sums of ``t`` elements of ``A`` (with
    repetition) that use exactly ``s`` distinct elements, for
    ``0 <= t <= h_max`` and ``0 <= s <= min(|A|, h_max)``. One call serves
    every ``(h, r, mode)`` with ``h <= h_max``.
    """
    masks = _profile_masks(A, h_max)
    amb = _Ambient(A)
    return [[amb.decode(mask, t) for mask in row] for t, row in enumerate(masks)]


def _profile_masks(A: SumSet, h_max: int) -> list[list[int]]:
    if h_max < 0:
        raise DomainError(f"h must be >= 0, got {h_max}")
    _require_nonempty(A, h_max)
    amb = _Ambient(A)
    scap = min(len(A), h_max)
    table = [[0] * (scap + 1) for _ in range(h_max + 1)]
    table[0][0] = 1
    for a in amb.steps:
        new = [row[:] for row in table]
        for t in range(h_max):
            row = table[t]
            for s in range(min(t, scap - 1) + 1):
                cur = row[s]
                if not cur:
                    continue
                # a used with multiplicity x in [1, h_max - t]
                for x in range(1, h_max - t + 1):
                    cur = amb.shift(cur, a)
                    new[t + x][s + 1] |= cur
        table = new
    return table


def gen_sumset(A: SumSet, spec: GenSumsetSpec) -> SumSet:
    """h^(>=r)A, h^(<=r)A or h^(=r)A according to ``spec.mode``.

    An empty admissible family of supports (say ``ge`` with
    ``r > min(h, |A|)``) yields the empty set rather than an error.
    """
    _require_nonempty(A, spec.h)
    sizes = spec.support_sizes(len(A))
    if not sizes:
        return _empty_like(A)
    row = _profile_masks(A, spec.h)[spec.h]
    mask = 0
    for s in sizes:
        mask |= row[s]
    return _Ambient(A).decode(mask, spec.h)


def gen_sumset_via_identity(A: SumSet, h: int, r: int) -> SumSet:
    """h^(>=r)A computed as (h - r)A + r^A."""
    if not 1 <= r <= h:
        raise DomainError(f"need 1 <= r <= h, got r={r}, h={h}")
    if r > len(A):
        raise DomainError(f"r={r} exceeds |A|={len(A)}")
    return minkowski_sum(iterated_sumset(A, h - r), restricted_sumset(A, r))


def support_oracle(A: SumSet, spec: GenSumsetSpec) -> SumSet:
    """Brute-force generalized sumset, for use as ground truth in tests.

    Every support S of admissible size s contributes sum(S) plus every
    multiset of h - s further terms drawn from S.
    """
    k = len(A)
    if k > ORACLE_MAX_SIZE or spec.h > ORACLE_MAX_H:
        raise DomainError(
            f"oracle scale exceeded: |A|={k} (max {ORACLE_MAX_SIZE}), h={spec.h} (max {ORACLE_MAX_H})"
        )
    _require_nonempty(A, spec.h)
    m = A.modulus if isinstance(A, ZmSet) else None
    els = list(A.elements)
    sums = set()
    for s in spec.support_sizes(k):
        for support in itertools.combinations(els, s):
            base = sum(support)
            for extra in itertools.combinations_with_replacement(support, spec.h - s):
                sums.add(base + sum(extra))
    if m is None:
        return IntSet(sums)
    return ZmSet.from_elements({x % m for x in sums}, m)
