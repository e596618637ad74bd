"""Ground types for finite sets in Z and Z_m, plus structural predicates.

A :class:`ZmSet` stores its members as a Python ``int`` bitmask (bit ``i`` set
iff ``i`` is a member), which keeps cyclic shifts and unions cheap. An
:class:`IntSet` is a sorted tuple of integers of arbitrary size.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

__all__ = [
    "MAX_MODULUS",
    "DomainError",
    "ZmSet",
    "IntSet",
    "RemainderDecomposition",
    "divisors",
    "units",
    "subgroup",
    "positive_remainder",
    "normalize",
    "is_normalized",
    "is_ap_integers",
    "is_ap_mod",
    "affine_image",
    "canonical_form",
    "parse_set_literal",
]

MAX_MODULUS = 10**6


class DomainError(ValueError):
    """An argument violates a mathematical precondition of an operation."""


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class ZmSet:
    """Subset of Z_m stored as a membership bitmask."""

    modulus: int
    mask: int = 0

    def __post_init__(self):
        if not isinstance(self.modulus, int) or self.modulus < 1:
            raise DomainError(f"modulus must be a positive integer, got {self.modulus!r}")
        if self.modulus > MAX_MODULUS:
            raise DomainError(f"modulus {self.modulus} exceeds MAX_MODULUS={MAX_MODULUS}")
        if self.mask < 0 or self.mask >> self.modulus:
            raise DomainError("mask has bits outside [0, modulus - 1]")

    @classmethod
    def from_elements(cls, elements: Iterable[int], modulus: int) -> "ZmSet":
        mask = 0
        for x in elements:
            if not 0 <= x < modulus:
                raise DomainError(f"element {x} is not a residue in [0, {modulus - 1}]")
            mask |= 1 << x
        return cls(modulus, mask)

    @classmethod
    def full(cls, modulus: int) -> "ZmSet":
        return cls(modulus, (1 << modulus) - 1)

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and 0 <= x < self.modulus and bool(self.mask >> x & 1)

    def __repr__(self) -> str:
        return f"ZmSet({list(self.elements)}, m={self.modulus})"


@dataclass(frozen=True, init=False)
class IntSet:
    """Finite set of integers, kept as a strictly increasing tuple."""

    elements: tuple[int, ...]

    def __init__(self, elements: Iterable[int] = ()):
        object.__setattr__(self, "elements", tuple(sorted(set(int(x) for x in elements))))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self.elements

    @property
    def min(self) -> int:
        return self.elements[0]

    @property
    def max(self) -> int:
        return self.elements[-1]

    def __repr__(self) -> str:
        return f"IntSet({list(self.elements)})"


class RemainderDecomposition(NamedTuple):
    """``n = u*d + v`` with the remainder taken in ``[1, d]``."""

    d: int
    u: int
    v: int

    @property
    def value(self) -> int:
        return self.u * self.d + self.v


def divisors(m: int) -> list[int]:
    if m < 1:
        raise DomainError(f"divisors need m >= 1, got {m}")
    small, large = [], []
    for i in range(1, math.isqrt(m) + 1):
        if m % i == 0:
            small.append(i)
            if i != m // i:
                large.append(m // i)
    return small + large[::-1]


def units(m: int) -> list[int]:
    """Residues u in [0, m) with gcd(u, m) = 1."""
    return [u for u in range(m) if math.gcd(u, m) == 1]


def subgroup(m: int, d: int) -> ZmSet:
    """The order-d subgroup {0, m/d, ..., (d-1)m/d} of Z_m."""
    if d < 1 or m % d:
        raise DomainError(f"{d} does not divide {m}")
    step = m // d
    return ZmSet.from_elements((j * step for j in range(d)), m)


def positive_remainder(n: int, d: int) -> RemainderDecomposition:
    if n < 1 or d < 1:
        raise DomainError(f"positive_remainder needs n, d >= 1, got n={n}, d={d}")
    u = (n - 1) // d
    return RemainderDecomposition(d, u, n - u * d)


def normalize(A: IntSet) -> tuple[IntSet, int, int]:
    """Translate A to start at 0 and divide out the gcd of its differences.

    Returns ``(A', g, a0)`` with ``A = g*A' + a0``.
    """
    if len(A) < 2:
        raise DomainError("normalize needs at least two elements")
    a0 = A.min
    g = 0
    for x in A.elements:
        g = math.gcd(g, x - a0)
    return IntSet((x - a0) // g for x in A.elements), g, a0


def is_normalized(A: IntSet) -> bool:
    if len(A) < 2 or A.min != 0:
        return False
    return math.gcd(*A.elements) == 1


def is_ap_integers(A: IntSet) -> int | None:
    """Common difference of A if it is an arithmetic progression, else None.

    Singletons count as a degenerate progression and report difference 0.
    """
    if len(A) == 0:
        return None
    if len(A) == 1:
        return 0
    els = A.elements
    step = els[1] - els[0]
    if all(b - a == step for a, b in zip(els, els[1:])):
        return step
    return None


def is_ap_mod(A: ZmSet) -> tuple[int, int] | None:
    """Find (start, difference) with A = {start + i*difference}, if any.

    Candidates are tried in increasing (difference, start) order, so the
    reported pair is deterministic.
    """
    k = len(A)
    m = A.modulus
    if k == 0:
        return None
    if k == 1:
        return (A.elements[0], 0)
    target = A.mask
    els = A.elements
    for delta in range(1, m):
        for a in els:
            mask = 0
            x = a
            for _ in range(k):
                mask |= 1 << x
                x = (x + delta) % m
            if mask == target:
                return (a, delta)
    return None


def _rotate(mask: int, c: int, m: int) -> int:
    c %= m
    if c == 0:
        return mask
    full = (1 << m) - 1
    return ((mask << c) | (mask >> (m - c))) & full


def affine_image(A: ZmSet, u: int, c: int) -> ZmSet:
    """The set {u*a + c mod m : a in A} for a unit u."""
    m = A.modulus
    if math.gcd(u % m, m) != 1:
        raise DomainError(f"{u} is not a unit modulo {m}")
    mask = 0
    for a in A:
        mask |= 1 << ((u * a + c) % m)
    return ZmSet(m, mask)


def _orbit_masks(A: ZmSet) -> set[int]:
    m = A.modulus
    out = set()
    for u in units(m):
        base = 0
        for a in A:
            base |= 1 << (u * a % m)
        for c in range(m):
            out.add(_rotate(base, c, m))
    return out


def canonical_form(A: ZmSet) -> ZmSet:
    """Orbit representative of A under x -> u*x + c (u a unit).

    The representative is the orbit member whose sorted element tuple is
    lexicographically least. For a fixed cardinality this is the same as the
    greatest bit string when bit 0 is read first. Such a member always
    contains 0, so only translates taking an element to 0 are tried.
    """
    m = A.modulus
    if len(A) == 0:
        return A
    best = None
    for u in units(m):
        scaled = [u * a % m for a in A]
        for a in scaled:
            cand = tuple(sorted((x - a) % m for x in scaled))
            if best is None or cand < best:
                best = cand
    return ZmSet.from_elements(best, m)


def parse_set_literal(text: str) -> list[int]:
    """Parse ``"0,1,4,8"`` into a list of integers."""
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise DomainError(f"malformed set literal {text!r}") from exc
