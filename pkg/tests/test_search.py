import itertools
import json
import math

import pytest

from gensumset.constructions import interval_set
from gensumset.core import DomainError, ZmSet, canonical_form
from gensumset.engine import GenSumsetSpec, gen_sumset
from gensumset.formulas import ekp_mu, mu_ge_upper
from gensumset.search import (
    BOUNDS,
    SCALE_ENV,
    AuditConfig,
    bound_audit,
    equality_enumeration_z,
    equality_enumeration_zp,
    integer_inverse_case,
    mu_exhaustive,
    normalized_sets,
    orbit_representatives,
    z_inverse_cells,
    zp_inverse_cells,
)


def mu_bruteforce(m, k, spec):
    return min(len(gen_sumset(ZmSet.from_elements(c, m), spec)) for c in itertools.combinations(range(m), k))


class TestOrbits:
    def test_counts_partition_all_subsets(self):
        for m in range(1, 13):
            for k in range(0, m + 1):
                reps = orbit_representatives(m, k)
                assert sum(size for _, size in reps) == math.comb(m, k)

    def test_representatives_are_canonical_and_distinct(self):
        for m in range(1, 11):
            for k in range(1, m + 1):
                reps = [ZmSet(m, mask) for mask, _ in orbit_representatives(m, k)]
                assert all(canonical_form(A) == A for A in reps)
                assert len(set(reps)) == len(reps)

    def test_orbit_count_matches_bruteforce(self):
        for m in range(1, 10):
            for k in range(1, m + 1):
                forms = {canonical_form(ZmSet.from_elements(c, m)) for c in itertools.combinations(range(m), k)}
                assert len(orbit_representatives(m, k)) == len(forms)


def test_normalized_sets():
    sets = list(normalized_sets(3, 4))
    assert [A.elements for A in sets] == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (0, 1, 4), (0, 3, 4)]
    assert list(normalized_sets(1, 5)) == []


class TestMu:
    def test_examples(self):
        rep = mu_exhaustive(8, 3, 3, 2)
        assert rep.mu == 4
        assert ZmSet.from_elements([0, 2, 4], 8) in rep.witnesses
        assert mu_exhaustive(5, 3, 3, 2).mu == 5
        rep = mu_exhaustive(6, 3, 2, 1)
        assert (rep.mu, [list(w) for w in rep.witnesses], rep.orbits_scanned) == (3, [[0, 2, 4]], 3)

    def test_orbit_reduction_is_sound(self):
        for m in range(1, 11):
            for k in range(1, min(m, 5) + 1):
                for h, r, mode in [(2, 1, "ge"), (3, 2, "ge"), (3, 2, "le"), (3, 2, "eq"), (4, 3, "ge")]:
                    a = mu_exhaustive(m, k, h, r, mode)
                    b = mu_exhaustive(m, k, h, r, mode, canonicalize=False)
                    assert a.mu == b.mu
                    assert a.witnesses == b.witnesses
                    assert a.mu == mu_bruteforce(m, k, GenSumsetSpec(h, r, mode))

    def test_matches_ekp_and_upper(self):
        for m in range(1, 11):
            for k in range(1, min(m, 8) + 1):
                for h in range(1, 4):
                    assert mu_exhaustive(m, k, h).mu == ekp_mu(m, k, h)
                    for r in range(1, min(k, h - 1) + 1):
                        assert mu_exhaustive(m, k, h, r).mu <= mu_ge_upper(m, k, h, r)[0]

    def test_le_reports_classic(self):
        rep = mu_exhaustive(7, 3, 3, 2, "le")
        assert rep.classic_mu == ekp_mu(7, 3, 3)
        assert mu_exhaustive(7, 3, 3, 2).classic_mu is None

    def test_witness_cap(self):
        rep = mu_exhaustive(12, 4, 2, witness_cap=1)
        assert len(rep.witnesses) == 1 and rep.witness_count >= 1

    def test_deterministic_across_jobs(self):
        outs = {json.dumps(mu_exhaustive(12, 5, 3, 2, n_jobs=n).to_dict(), sort_keys=True) for n in (1, 2, -1)}
        assert len(outs) == 1

    def test_errors(self):
        with pytest.raises(DomainError):
            mu_exhaustive(5, 6, 2)
        with pytest.raises(DomainError):
            mu_exhaustive(5, 0, 2)


class TestGuards:
    def test_mu_guard(self, monkeypatch):
        monkeypatch.delenv(SCALE_ENV, raising=False)
        with pytest.raises(DomainError, match=SCALE_ENV):
            mu_exhaustive(30, 2, 2)
        assert mu_exhaustive(30, 2, 2, force=True).mu == 2

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv(SCALE_ENV, "1")
        assert mu_exhaustive(30, 2, 2).mu == 2
        monkeypatch.setenv(SCALE_ENV, "0")
        with pytest.raises(DomainError):
            mu_exhaustive(30, 2, 2)

    def test_inverse_guards(self, monkeypatch):
        monkeypatch.delenv(SCALE_ENV, raising=False)
        with pytest.raises(DomainError):
            equality_enumeration_zp(19, 3, 4, 2)
        with pytest.raises(DomainError):
            equality_enumeration_z(13, 3, 4, 2)
        with pytest.raises(DomainError):
            equality_enumeration_zp(9, 3, 4, 2)


class TestInverse:
    def test_zp_examples(self):
        rep = equality_enumeration_zp(11, 3, 4, 2)
        assert (rep.bound, [list(A) for A in rep.equality_sets], rep.all_ap) == (7, [[0, 1, 2]], True)
        rep = equality_enumeration_zp(13, 4, 4, 2)
        assert (rep.bound, [list(A) for A in rep.equality_sets]) == (11, [[0, 1, 2, 3]])
        rep = equality_enumeration_zp(7, 3, 4, 2)
        assert not rep.applicable and rep.bound == 7

    def test_zp_not_applicable(self):
        assert not equality_enumeration_zp(11, 3, 3, 2).applicable
        assert not equality_enumeration_zp(11, 1, 4, 1).applicable

    def test_z_examples(self):
        rep = equality_enumeration_z(8, 3, 4, 2)
        assert rep.parameters["case"] == 1
        assert [list(A) for A in rep.equality_sets] == [[0, 1, 2]]
        rep = equality_enumeration_z(10, 5, 3, 3)
        assert rep.parameters["case"] == 2
        assert [list(A) for A in rep.equality_sets] == [[0, 1, 2, 3, 4]]
        assert not equality_enumeration_z(10, 4, 3, 3).applicable

    def test_cases(self):
        assert integer_inverse_case(3, 4, 2) == 1
        assert integer_inverse_case(5, 3, 3) == 2
        assert integer_inverse_case(5, 4, 3) == 2
        assert integer_inverse_case(4, 3, 3) is None
        assert integer_inverse_case(5, 3, 1) == 1
        assert integer_inverse_case(5, 2, 1) is None

    def test_interval_attains_bound(self):
        for p, k, h, r in zp_inverse_cells(13):
            A = ZmSet(p, interval_set(k, p).mask)
            assert len(gen_sumset(A, GenSumsetSpec(h, r))) == h * (k - 1) - r * (r - 1) + 1

    def test_cells(self):
        cells = list(zp_inverse_cells(7))
        assert (7, 2, 3, 1) in cells and all(h >= r + 2 for _, _, h, r in cells)
        assert all(integer_inverse_case(*c) for c in z_inverse_cells())


class TestAudit:
    def test_from_grid(self):
        cfg = AuditConfig.from_grid("cd", "p=3,5; k=4; h=3; a=9")
        assert (cfg.moduli, cfg.k_max, cfg.h_max, cfg.a_max) == ((3, 5), 4, 3, 9)
        with pytest.raises(DomainError):
            AuditConfig.from_grid("cd", "q=3")
        with pytest.raises(DomainError):
            AuditConfig.from_grid("cd", "p=x")

    def test_unknown_bound(self):
        with pytest.raises(DomainError):
            bound_audit(AuditConfig("nope"))

    @pytest.mark.parametrize("name", ["cd", "dsh", "gen"])
    def test_zp_bounds_clean(self, name):
        rep = bound_audit(AuditConfig(name, (3, 5, 7), k_max=7, h_max=4))
        assert rep.passed and rep.checked > 0

    @pytest.mark.parametrize("name", ["gen-z", "lev", "lev-restricted", "freiman", "freiman-cover", "ext-ge", "ext-r2"])
    def test_integer_bounds_clean(self, name):
        rep = bound_audit(AuditConfig(name, k_max=4, h_max=5, a_max=7))
        assert rep.passed and rep.checked > 0

    def test_uncorrected_extended_fails(self):
        rep = bound_audit(AuditConfig("ext-ge", k_max=3, h_max=4, a_max=3, omit_minus_one=True))
        assert not rep.passed
        assert all(v.expected - v.observed == 1 for v in rep.violations)

    def test_mu_audits_clean(self):
        for name in ("ekp", "mu-upper"):
            assert bound_audit(AuditConfig(name, (6, 7, 8), k_max=4, h_max=3)).passed

    def test_exact_audits_report_mismatches(self):
        rep = bound_audit(AuditConfig("bajnok", (6,), k_max=5, h_max=5))
        assert any(v.modulus == 6 and v.elements == (0, 1, 2, 3, 4) for v in rep.violations)
        rep = bound_audit(AuditConfig("main", (5, 7), k_max=5, r_max=1, h_max=4))
        assert rep.passed

    def test_report_dict_is_json(self):
        rep = bound_audit(AuditConfig("freiman", k_max=3, a_max=5))
        json.dumps(rep.to_dict())

    def test_registry(self):
        assert {"cd", "dsh", "gen", "main", "bajnok", "ext-ge", "ext-r2", "mu-upper"} <= set(BOUNDS)
