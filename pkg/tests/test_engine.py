import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gensumset.core import DomainError, IntSet, ZmSet, affine_image, units
from gensumset.engine import (
    GenSumsetSpec,
    distinct_profile,
    gen_sumset,
    gen_sumset_via_identity,
    iterated_sumset,
    minkowski_sum,
    restricted_sumset,
    support_oracle,
)


def Z(m, *els):
    return ZmSet.from_elements(els, m)


def naive_h_fold(els, h, m=None):
    sums = {sum(c) for c in itertools.combinations_with_replacement(els, h)}
    return sums if m is None else {x % m for x in sums}


def naive_restricted(els, h, m=None):
    sums = {sum(c) for c in itertools.combinations(els, h)}
    return sums if m is None else {x % m for x in sums}


def naive_distinct_counts(els, h, m=None):
    """Map each multiset sum to the set of distinct-summand counts realizing it."""
    out = {}
    for combo in itertools.combinations_with_replacement(els, h):
        x = sum(combo) if m is None else sum(combo) % m
        out.setdefault(x, set()).add(len(set(combo)))
    return out


class TestMinkowski:
    def test_examples(self):
        assert minkowski_sum(IntSet([0, 1]), IntSet([0, 2])) == IntSet([0, 1, 2, 3])
        A = Z(12, 0, 1, 4, 5, 8, 9)
        assert minkowski_sum(A, Z(12, 0)) == A
        assert minkowski_sum(A, Z(12, 0, 1, 2, 4, 5, 8, 9)) == ZmSet.full(12)

    def test_empty(self):
        assert minkowski_sum(IntSet(), IntSet([1])) == IntSet()
        assert minkowski_sum(ZmSet(4), Z(4, 1)) == ZmSet(4)

    @pytest.mark.parametrize("A, B", [(Z(4, 1), Z(5, 1)), (Z(4, 1), IntSet([1]))])
    def test_mismatch(self, A, B):
        with pytest.raises(DomainError):
            minkowski_sum(A, B)


class TestIterated:
    def test_examples(self):
        A = IntSet([0, 1, 3])
        assert iterated_sumset(A, 2).elements == (0, 1, 2, 3, 4, 6)
        assert iterated_sumset(A, 0) == IntSet([0])
        assert iterated_sumset(A, 3).elements == (0, 1, 2, 3, 4, 5, 6, 7, 9)
        assert iterated_sumset(Z(7, 3), 0) == Z(7, 0)

    def test_empty_raises(self):
        with pytest.raises(DomainError):
            iterated_sumset(IntSet(), 2)

    def test_matches_naive(self):
        rng = random.Random(3)
        for _ in range(100):
            els = rng.sample(range(-15, 15), rng.randint(1, 5))
            h = rng.randint(1, 4)
            assert set(iterated_sumset(IntSet(els), h)) == naive_h_fold(els, h)


class TestRestricted:
    def test_examples(self):
        assert restricted_sumset(IntSet([0, 1, 2, 3]), 2).elements == (1, 2, 3, 4, 5)
        assert restricted_sumset(IntSet([1, 2, 3, 4]), 4) == IntSet([10])
        assert restricted_sumset(Z(12, 0, 1, 4, 8), 2).elements == (0, 1, 4, 5, 8, 9)
        assert restricted_sumset(IntSet([1, 2]), 0) == IntSet([0])

    def test_h_exceeds_k(self):
        assert restricted_sumset(IntSet([1, 2]), 3) == IntSet()
        assert restricted_sumset(Z(5, 1, 2), 3) == ZmSet(5)

    def test_matches_naive_mod(self):
        for m in range(1, 9):
            for els in itertools.combinations(range(m), min(m, 4)):
                for h in range(1, len(els) + 1):
                    assert set(restricted_sumset(Z(m, *els), h)) == naive_restricted(els, h, m)


class TestGenSumset:
    def test_example_union_over_supports(self):
        S = gen_sumset(IntSet([0, 1, 2]), GenSumsetSpec(3, 2, "ge"))
        assert S.elements == (1, 2, 3, 4, 5)

    def test_oracle_example(self):
        A = IntSet([0, 1, 3])
        spec = GenSumsetSpec(4, 2, "ge")
        assert gen_sumset(A, spec) == support_oracle(A, spec) == IntSet(range(1, 11))

    def test_singleton(self):
        for mode in ("ge", "le", "eq"):
            assert gen_sumset(IntSet([5]), GenSumsetSpec(3, 1, mode)) == IntSet([15])
            assert support_oracle(IntSet([5]), GenSumsetSpec(3, 1, mode)) == IntSet([15])

    def test_forced_singleton(self):
        A = IntSet([2, 3, 7])
        assert support_oracle(A, GenSumsetSpec(3, 3, "eq")) == IntSet([12])
        assert gen_sumset(A, GenSumsetSpec(3, 3, "eq")) == IntSet([12])

    def test_degenerate_specs_are_empty(self):
        A = IntSet([0, 1])
        assert gen_sumset(A, GenSumsetSpec(3, 3, "ge")) == IntSet()
        assert gen_sumset(A, GenSumsetSpec(3, 3, "eq")) == IntSet()
        assert gen_sumset(Z(5, 0, 1), GenSumsetSpec(2, 4, "ge")) == ZmSet(5)
        # at most r distinct with r > k is clipped at k
        assert gen_sumset(A, GenSumsetSpec(3, 5, "le")) == iterated_sumset(A, 3)

    def test_spec_validation(self):
        with pytest.raises(DomainError):
            GenSumsetSpec(0)
        with pytest.raises(DomainError):
            GenSumsetSpec(2, 0)
        with pytest.raises(DomainError):
            GenSumsetSpec(2, 1, "gt")

    def test_window_bounds(self):
        A = IntSet([-4, 2, 9])
        S = gen_sumset(A, GenSumsetSpec(4, 2))
        assert 4 * A.min <= S.min and S.max <= 4 * A.max

    def test_profile_matches_naive(self):
        rng = random.Random(11)
        for _ in range(60):
            m = rng.choice([None, 7, 10, 12])
            pool = range(-10, 11) if m is None else range(m)
            els = sorted(rng.sample(pool, rng.randint(1, 5)))
            A = IntSet(els) if m is None else Z(m, *els)
            h = rng.randint(1, 5)
            prof = distinct_profile(A, h)
            counts = naive_distinct_counts(els, h, m)
            for s in range(len(prof[h])):
                assert set(prof[h][s]) == {x for x, ss in counts.items() if s in ss}


class TestIdentity:
    def test_examples(self):
        assert gen_sumset_via_identity(Z(11, 1, 2, 3, 4), 3, 2).elements == (0, 4, 5, 6, 7, 8, 9, 10)
        assert gen_sumset_via_identity(Z(12, 0, 1, 4, 8), 3, 2).elements == (0, 1, 2, 4, 5, 6, 8, 9, 10)
        A = IntSet([0, 2, 3])
        assert gen_sumset_via_identity(A, 2, 2) == restricted_sumset(A, 2)

    @pytest.mark.parametrize("h, r", [(3, 4), (2, 3), (3, 0)])
    def test_errors(self, h, r):
        with pytest.raises(DomainError):
            gen_sumset_via_identity(IntSet([0, 1, 2]), h, r)


def test_oracle_scale_guard():
    with pytest.raises(DomainError):
        support_oracle(IntSet(range(21)), GenSumsetSpec(2))
    with pytest.raises(DomainError):
        support_oracle(IntSet([0, 1]), GenSumsetSpec(13))


def all_specs(h_max):
    for h in range(1, h_max + 1):
        for r in range(1, h + 1):
            for mode in ("ge", "le", "eq"):
                yield GenSumsetSpec(h, r, mode)


def test_oracle_equivalence_exhaustive_zm():
    for m in range(1, 13):
        for k in range(1, min(m, 6) + 1):
            for els in itertools.combinations(range(m), k):
                A = Z(m, *els)
                for spec in all_specs(6):
                    assert gen_sumset(A, spec) == support_oracle(A, spec), (A, spec)


def test_oracle_equivalence_random_integers():
    rng = random.Random(2024)
    for _ in range(1000):
        A = IntSet(rng.sample(range(-20, 21), rng.randint(1, 6)))
        spec = GenSumsetSpec(rng.randint(1, 6), rng.randint(1, 6), rng.choice(("ge", "le", "eq")))
        assert gen_sumset(A, spec) == support_oracle(A, spec)


int_sets = st.sets(st.integers(-20, 20), min_size=1, max_size=6).map(IntSet)


@st.composite
def zm_sets(draw, max_m=12, max_k=6):
    m = draw(st.integers(1, max_m))
    els = draw(st.sets(st.integers(0, m - 1), min_size=1, max_size=min(m, max_k)))
    return ZmSet.from_elements(els, m)


any_sets = st.one_of(int_sets, zm_sets())


@settings(max_examples=150, deadline=None)
@given(any_sets, st.integers(1, 6), st.data())
def test_identity_and_specializations(A, h, data):
    k = len(A)
    r = data.draw(st.integers(1, h))
    if r <= k:
        assert gen_sumset(A, GenSumsetSpec(h, r, "ge")) == gen_sumset_via_identity(A, h, r)
    assert gen_sumset(A, GenSumsetSpec(h, 1, "ge")) == iterated_sumset(A, h)
    assert gen_sumset(A, GenSumsetSpec(h, h, "ge")) == restricted_sumset(A, h)
    assert gen_sumset(A, GenSumsetSpec(h, h, "le")) == iterated_sumset(A, h)
    assert gen_sumset(A, GenSumsetSpec(h, h, "eq")) == restricted_sumset(A, h)


def _union(sets):
    out = set()
    for S in sets:
        out |= set(S)
    return out


@settings(max_examples=150, deadline=None)
@given(any_sets, st.integers(1, 6), st.data())
def test_partition_and_monotonicity(A, h, data):
    k = len(A)
    r = data.draw(st.integers(1, h))
    eq = {s: set(gen_sumset(A, GenSumsetSpec(h, s, "eq"))) for s in range(1, h + 1)}
    ge = set(gen_sumset(A, GenSumsetSpec(h, r, "ge")))
    le = set(gen_sumset(A, GenSumsetSpec(h, r, "le")))
    assert ge == _union((eq[s] for s in range(r, min(h, k) + 1)))
    assert le == _union((eq[s] for s in range(1, r + 1)))
    if r < h:
        assert set(gen_sumset(A, GenSumsetSpec(h, r + 1, "ge"))) <= ge


@settings(max_examples=150, deadline=None)
@given(zm_sets(max_m=16), st.integers(1, 5), st.data())
def test_affine_equivariance(A, h, data):
    m = A.modulus
    u = data.draw(st.sampled_from(units(m)))
    c = data.draw(st.integers(0, m - 1))
    spec = GenSumsetSpec(h, data.draw(st.integers(1, h)), data.draw(st.sampled_from(("ge", "le", "eq"))))
    image = gen_sumset(affine_image(A, u, c), spec)
    S = gen_sumset(A, spec)
    assert image == affine_image(S, u, h * c)
    assert len(image) == len(S)


@settings(max_examples=200, deadline=None)
@given(int_sets, st.integers(2, 6), st.data())
def test_integer_lower_bound(A, h, data):
    k = len(A)
    r = data.draw(st.integers(1, min(h, k)))
    assert len(gen_sumset(A, GenSumsetSpec(h, r))) >= h * (k - 1) - r * (r - 1) + 1
