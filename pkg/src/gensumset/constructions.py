"""Witness and extremal sets: coset-progression sets, intervals, progressions."""
from __future__ import annotations

from .core import DomainError, IntSet, ZmSet, positive_remainder, subgroup

__all__ = ["construct_A_d", "interval_set", "ap_set", "bajnok_subset"]


def construct_A_d(m: int, k: int, d: int) -> ZmSet:
    """u full cosets i + H (0 <= i < u) followed by v elements of u + H.

    H is the order-d subgroup of Z_m and ``k = u*d + v`` with ``1 <= v <= d``.
    """
    if d < 1 or m % d:
        raise DomainError(f"{d} does not divide {m}")
    if not 1 <= k <= m:
        raise DomainError(f"need 1 <= k <= m, got k={k}, m={m}")
    H = subgroup(m, d)
    _, u, v = positive_remainder(k, d)
    step = m // d
    members = [(i + x) % m for i in range(u) for x in H]
    members += [(u + j * step) % m for j in range(v)]
    A = ZmSet.from_elements(members, m)
    assert len(A) == k
    return A


def interval_set(k: int, p: int | None = None) -> ZmSet | IntSet:
    """{1, ..., k}, as integers or inside Z_p."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if p is None:
        return IntSet(range(1, k + 1))
    if k > p:
        raise DomainError(f"k={k} exceeds p={p}")
    return ZmSet.from_elements((i % p for i in range(1, k + 1)), p)


def ap_set(a: int, delta: int, k: int, m: int | None = None) -> ZmSet | IntSet:
    """{a + i*delta : 0 <= i < k}; in Z_m the k residues must be distinct."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if delta == 0 and k > 1:
        raise DomainError("difference must be non-zero")
    terms = [a + i * delta for i in range(k)]
    if m is None:
        return IntSet(terms)
    residues = [x % m for x in terms]
    if len(set(residues)) != k:
        raise DomainError(f"progression ({a}, {delta}, {k}) repeats a residue mod {m}")
    return ZmSet.from_elements(residues, m)


def bajnok_subset(d: int, t: int, j: int) -> tuple[int, ...]:
    """Lexicographically least t-subset of Z_d whose elements sum to j mod d.

    Exists for every ``1 <= t <= d - 1``. Built greedily: sums of c distinct
    elements from an integer interval fill a whole interval, so the next
    element can be fixed as soon as the remaining residue is still reachable.
    """
    if not 1 <= t <= d - 1:
        raise DomainError(f"need 1 <= t <= d - 1, got t={t}, d={d}")
    j %= d
    chosen: list[int] = []
    total = 0
    lo = 0
    for picked in range(t):
        left = t - picked - 1
        for x in range(lo, d - left):
            # remaining `left` elements come from [x + 1, d - 1]
            smin = total + x + left * (2 * x + left + 1) // 2
            smax = total + x + left * (2 * d - left - 1) // 2
            if smax - smin >= d - 1 or (j - smin) % d <= smax - smin:
                chosen.append(x)
                total += x
                lo = x + 1
                break
        else:
            raise AssertionError("no admissible element; t <= d - 1 should prevent this")
    return tuple(chosen)
