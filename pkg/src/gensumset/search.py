"""Exhaustive searches: minimum sumset sizes, equality cases, bound audits.

Sumset sizes in Z_m are invariant under x -> u*x + c for units u, so
searches over k-subsets only evaluate one canonical representative per
affine orbit (see :func:`orbit_representatives`).
"""
from __future__ import annotations

import functools
import itertools
import math
import os
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Iterator

from joblib import Parallel, delayed

from . import formulas
from .constructions import construct_A_d
from .core import (
    DomainError,
    IntSet,
    ZmSet,
    _orbit_masks,
    canonical_form,
    divisors,
    is_ap_integers,
    is_ap_mod,
)
from .engine import GenSumsetSpec, _profile_masks, iterated_sumset, restricted_sumset

__all__ = [
    "SCALE_ENV",
    "Violation",
    "SearchReport",
    "InverseReport",
    "AuditConfig",
    "AuditReport",
    "BOUNDS",
    "orbit_representatives",
    "normalized_sets",
    "mu_exhaustive",
    "equality_enumeration_zp",
    "equality_enumeration_z",
    "zp_inverse_cells",
    "z_inverse_cells",
    "bound_audit",
]

SCALE_ENV = "GENSUMSET_ALLOW_LARGE"
MU_MAX_M, MU_MAX_K = 24, 8
INVERSE_MAX_P = 17
INVERSE_MAX_N, INVERSE_MAX_K = 12, 6
WITNESS_CAP = 32


def _guard(ok: bool, message: str, force: bool):
    if ok or force or os.environ.get(SCALE_ENV, "") not in ("", "0"):
        return
    raise DomainError(f"{message}; pass force=True or set {SCALE_ENV}=1 to override")


def _sumset_mask(row: list[int], spec: GenSumsetSpec, k: int) -> int:
    mask = 0
    for s in spec.support_sizes(k):
        mask |= row[s]
    return mask


@functools.lru_cache(maxsize=256)
def orbit_representatives(m: int, k: int) -> tuple[tuple[int, int], ...]:
    """(mask, orbit size) for each affine orbit of k-subsets of Z_m.

    Subsets are visited in lexicographic order of their sorted elements, so
    the first member met in each orbit is its canonical form.
    """
    seen: set[int] = set()
    reps = []
    for combo in itertools.combinations(range(m), k):
        mask = 0
        for x in combo:
            mask |= 1 << x
        if mask in seen:
            continue
        orbit = _orbit_masks(ZmSet(m, mask))
        seen |= orbit
        reps.append((mask, len(orbit)))
    return tuple(reps)


def _all_subsets(m: int, k: int) -> Iterator[int]:
    for combo in itertools.combinations(range(m), k):
        yield sum(1 << x for x in combo)


def normalized_sets(k: int, a_max: int) -> Iterator[IntSet]:
    """Sets 0 = a_0 < ... < a_{k-1} <= a_max with gcd 1, in lexicographic order."""
    if k < 2:
        return
    for top in range(k - 1, a_max + 1):
        for inner in itertools.combinations(range(1, top), k - 2):
            els = (0, *inner, top)
            if math.gcd(*els) == 1:
                yield IntSet(els)


@dataclass(frozen=True)
class Violation:
    """A set whose observed size contradicts an audited bound or formula."""

    elements: tuple[int, ...]
    modulus: int | None
    params: dict
    expected: int
    observed: int

    def to_dict(self) -> dict:
        return {
            "set": list(self.elements),
            "modulus": self.modulus,
            "params": dict(self.params),
            "expected": self.expected,
            "observed": self.observed,
        }


@dataclass
class SearchReport:
    """Result of :func:`mu_exhaustive`."""

    parameters: dict
    mu: int
    witnesses: list[ZmSet]
    witness_count: int
    orbits_scanned: int
    violations: list[Violation] = field(default_factory=list)
    # le mode only: minimum of |hA| over the same sets, for comparison
    classic_mu: int | None = None

    def to_dict(self) -> dict:
        return {
            "parameters": dict(self.parameters),
            "mu": self.mu,
            "witnesses": [list(w.elements) for w in self.witnesses],
            "witness_count": self.witness_count,
            "orbits_scanned": self.orbits_scanned,
            "violations": [v.to_dict() for v in self.violations],
            "classic_mu": self.classic_mu,
        }


def _chunk_sizes(m: int, k: int, masks: list[int], spec: GenSumsetSpec, want_classic: bool):
    out = []
    for mask in masks:
        row = _profile_masks(ZmSet(m, mask), spec.h)[spec.h]
        size = _sumset_mask(row, spec, k).bit_count()
        classic = _sumset_mask(row, GenSumsetSpec(spec.h, 1, "ge"), k).bit_count() if want_classic else None
        out.append((size, classic))
    return out


def _chunks(items: list, n: int) -> list[list]:
    step = max(1, -(-len(items) // n))
    return [items[i : i + step] for i in range(0, len(items), step)]


def mu_exhaustive(
    m: int,
    k: int,
    h: int,
    r: int = 1,
    mode: str = "ge",
    *,
    canonicalize: bool = True,
    n_jobs: int = 1,
    witness_cap: int = WITNESS_CAP,
    force: bool = False,
) -> SearchReport:
    """Minimum of |h^(mode r)A| over all k-subsets A of Z_m.

    ``n_jobs`` follows the joblib convention (-1 for all cores); the report
    does not depend on it.
    """
    if not 1 <= k <= m:
        raise DomainError(f"need 1 <= k <= m, got k={k}, m={m}")
    spec = GenSumsetSpec(h, r, mode)
    _guard(m <= MU_MAX_M and k <= MU_MAX_K, f"search scale m={m}, k={k} exceeds m<={MU_MAX_M}, k<={MU_MAX_K}", force)

    if canonicalize:
        masks = [mask for mask, _ in orbit_representatives(m, k)]
    else:
        masks = list(_all_subsets(m, k))
    want_classic = mode == "le"

    if n_jobs == 1 or len(masks) < 2:
        sizes = _chunk_sizes(m, k, masks, spec, want_classic)
    else:
        workers = (os.cpu_count() or 1) if n_jobs < 0 else n_jobs
        parts = Parallel(n_jobs=n_jobs)(
            delayed(_chunk_sizes)(m, k, chunk, spec, want_classic) for chunk in _chunks(masks, workers)
        )
        sizes = [s for part in parts for s in part]

    mu = min(size for size, _ in sizes)
    attaining = [mask for mask, (size, _) in zip(masks, sizes) if size == mu]
    if canonicalize:
        witnesses = [ZmSet(m, x) for x in attaining]
    else:
        witnesses = sorted({canonical_form(ZmSet(m, x)) for x in attaining}, key=lambda A: A.elements)
    return SearchReport(
        parameters={"m": m, "k": k, "h": h, "r": r, "mode": mode},
        mu=mu,
        witnesses=witnesses[:witness_cap],
        witness_count=len(witnesses),
        orbits_scanned=len(masks),
        classic_mu=min(c for _, c in sizes) if want_classic else None,
    )


@dataclass
class InverseReport:
    """Sets attaining the generalized lower bound, and whether all are progressions."""

    parameters: dict
    applicable: bool
    reason: str = ""
    bound: int | None = None
    equality_sets: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)
    sets_scanned: int = 0

    @property
    def all_ap(self) -> bool:
        return not self.counterexamples

    @property
    def vacuous(self) -> bool:
        return self.applicable and not self.equality_sets

    def to_dict(self) -> dict:
        return {
            "parameters": dict(self.parameters),
            "applicable": self.applicable,
            "reason": self.reason,
            "bound": self.bound,
            "equality_sets": [list(s.elements) for s in self.equality_sets],
            "all_ap": self.all_ap,
            "vacuous": self.vacuous,
            "counterexamples": [list(s.elements) for s in self.counterexamples],
            "sets_scanned": self.sets_scanned,
        }


def equality_enumeration_zp(p: int, k: int, h: int, r: int, *, force: bool = False) -> InverseReport:
    """All k-subsets of Z_p with |h^(>=r)A| = h(k-1) - r(r-1) + 1 <= p - 2, up to affine maps.

    Every such set should be an arithmetic progression when h >= r + 2.
    """
    params = {"p": p, "k": k, "h": h, "r": r}
    if not formulas.is_prime(p):
        raise DomainError(f"{p} is not prime")
    _guard(p <= INVERSE_MAX_P, f"p={p} exceeds {INVERSE_MAX_P}", force)
    bound = h * (k - 1) - r * (r - 1) + 1
    if k < 2 or not 1 <= r <= k or k > p:
        return InverseReport(params, False, "need 2 <= k <= p and 1 <= r <= k")
    if h < r + 2:
        return InverseReport(params, False, "need h >= r + 2")
    if bound > p - 2:
        return InverseReport(params, False, f"bound {bound} exceeds p - 2 = {p - 2}", bound)
    spec = GenSumsetSpec(h, r, "ge")
    report = InverseReport(params, True, bound=bound)
    for mask, _ in orbit_representatives(p, k):
        report.sets_scanned += 1
        row = _profile_masks(ZmSet(p, mask), h)[h]
        if _sumset_mask(row, spec, k).bit_count() == bound:
            A = ZmSet(p, mask)
            report.equality_sets.append(A)
            if is_ap_mod(A) is None:
                report.counterexamples.append(A)
    return report


def integer_inverse_case(k: int, h: int, r: int) -> int | None:
    """Which hypothesis of the integer inverse statement (1 or 2) covers (k, h, r), if any."""
    if not 1 <= r <= k or h < max(r, 2):
        return None
    if h >= r + 2 and k >= 2:
        return 1
    if h in (r, r + 1) and k >= 5 and 2 <= r <= k - 2:
        return 2
    return None


def zp_inverse_cells(p_max: int) -> Iterator[tuple[int, int, int, int]]:
    """(p, k, h, r) for every prime p <= p_max where the Z_p inverse statement applies."""
    for p in (q for q in range(2, p_max + 1) if formulas.is_prime(q)):
        for k in range(2, p + 1):
            for r in range(1, k + 1):
                h = r + 2
                while h * (k - 1) - r * (r - 1) + 1 <= p - 2:
                    yield p, k, h, r
                    h += 1


def z_inverse_cells(k_max: int = INVERSE_MAX_K, h_span: int = 4) -> Iterator[tuple[int, int, int]]:
    """(k, h, r) with r <= h <= r + h_span covered by either integer hypothesis case."""
    for k in range(2, k_max + 1):
        for r in range(1, k + 1):
            for h in range(max(r, 2), r + h_span + 1):
                if integer_inverse_case(k, h, r) is not None:
                    yield k, h, r


def equality_enumeration_z(N: int, k: int, h: int, r: int, *, force: bool = False) -> InverseReport:
    """Normalized k-sets with a_{k-1} <= N attaining h(k-1) - r(r-1) + 1 must be progressions."""
    params = {"N": N, "k": k, "h": h, "r": r}
    _guard(N <= INVERSE_MAX_N and k <= INVERSE_MAX_K, f"N={N}, k={k} exceeds N<={INVERSE_MAX_N}, k<={INVERSE_MAX_K}", force)
    case = integer_inverse_case(k, h, r)
    if case is None:
        return InverseReport(params, False, "(k, h, r) outside both hypothesis cases")
    params["case"] = case
    bound = h * (k - 1) - r * (r - 1) + 1
    spec = GenSumsetSpec(h, r, "ge")
    report = InverseReport(params, True, bound=bound)
    for A in normalized_sets(k, N):
        report.sets_scanned += 1
        row = _profile_masks(A, h)[h]
        if _sumset_mask(row, spec, k).bit_count() == bound:
            report.equality_sets.append(A)
            if is_ap_integers(A) is None:
                report.counterexamples.append(A)
    return report


# --- bound audits -----------------------------------------------------------

@dataclass(frozen=True)
class AuditConfig:
    """A bound name plus the parameter grid to sweep.

    ``moduli`` is used by the Z_p / Z_m audits; ``a_max`` bounds the largest
    element of the normalized integer sets. ``omit_minus_one`` audits the
    uncorrected extended bounds.
    """

    bound: str
    moduli: tuple[int, ...] = ()
    k_max: int = 5
    h_max: int = 5
    r_max: int | None = None
    a_max: int = 10
    canonicalize: bool = True
    omit_minus_one: bool = False

    @classmethod
    def from_grid(cls, bound: str, grid: str) -> "AuditConfig":
        """Parse ``"m=3,5,7;k=5;h=4"`` style grids (keys m/p, k, h, r, a)."""
        keys = {"m": "moduli", "p": "moduli", "k": "k_max", "h": "h_max", "r": "r_max", "a": "a_max"}
        kwargs: dict[str, Any] = {}
        for part in filter(None, (s.strip() for s in grid.split(";"))):
            key, _, value = part.partition("=")
            key = key.strip()
            if key not in keys:
                raise DomainError(f"unknown grid key {key!r}; expected one of {sorted(keys)}")
            try:
                values = tuple(int(x) for x in value.split(","))
            except ValueError as exc:
                raise DomainError(f"malformed grid value {value!r}") from exc
            kwargs[keys[key]] = values if keys[key] == "moduli" else values[-1]
        return cls(bound, **kwargs)


@dataclass
class AuditReport:
    config: AuditConfig
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "config": asdict(self.config),
            "checked": self.checked,
            "passed": self.passed,
            "violations": [v.to_dict() for v in self.violations],
        }


def _zm_sets(m: int, k: int, canonicalize: bool) -> Iterator[ZmSet]:
    if canonicalize:
        for mask, _ in orbit_representatives(m, k):
            yield ZmSet(m, mask)
    else:
        for mask in _all_subsets(m, k):
            yield ZmSet(m, mask)


def _size_of(table, h: int, r: int, k: int, mode: str = "ge") -> int:
    return _sumset_mask(table[h], GenSumsetSpec(h, r, mode), k).bit_count()


def _audit_zp(cfg: AuditConfig, report: AuditReport, check: Callable):
    for p in cfg.moduli:
        if not formulas.is_prime(p):
            raise DomainError(f"{p} is not prime")
        for k in range(1, min(cfg.k_max, p) + 1):
            for A in _zm_sets(p, k, cfg.canonicalize):
                table = _profile_masks(A, cfg.h_max)
                for h in range(1, cfg.h_max + 1):
                    for params, expected, observed in check(p, k, h, table):
                        report.checked += 1
                        if observed < expected:
                            report.violations.append(Violation(A.elements, p, params, expected, observed))


def _check_cd(p, k, h, table):
    yield {"h": h}, formulas.cd_bound(p, k, h), _size_of(table, h, 1, k)


def _check_dsh(p, k, h, table):
    if h <= k:
        yield {"h": h}, formulas.dsh_bound(p, k, h), _size_of(table, h, h, k)


def _r_range(cfg, h, k):
    top = min(h, k) if cfg.r_max is None else min(h, k, cfg.r_max)
    return range(1, top + 1)


def _lower(params, expected, observed):
    return params, expected, observed, observed >= expected


def _audit_integer(cfg: AuditConfig, report: AuditReport, check: Callable):
    for k in range(3, cfg.k_max + 1):
        for A in normalized_sets(k, cfg.a_max):
            for params, expected, observed, ok in check(cfg, A, k):
                report.checked += 1
                if not ok:
                    report.violations.append(Violation(A.elements, None, params, expected, observed))


def _check_lev(cfg, A, k):
    for h in range(2, cfg.h_max + 1):
        yield _lower({"h": h}, formulas.lev_lower_bound(A, h), len(iterated_sumset(A, h)))


def _check_lev_restricted(cfg, A, k):
    yield _lower({"h": 2}, formulas.lev_restricted_lower(A), len(restricted_sumset(A, 2)))


def _check_freiman(cfg, A, k):
    yield _lower({"h": 2}, formulas.freiman_2A_lower(A), len(iterated_sumset(A, 2)))


def _check_freiman_cover(cfg, A, k):
    res = formulas.freiman_cover_check(A)
    if res.applicable:
        # expected is the longest admissible cover, observed the actual one
        yield {"b": res.b}, k + res.b, res.cover_length, res.holds


def _check_ext_ge(cfg, A, k):
    table = _profile_masks(A, cfg.h_max)
    for r in range(1, (k if cfg.r_max is None else min(k, cfg.r_max)) + 1):
        for h in range(r + 2, cfg.h_max + 1):
            bound = formulas.extended_bound_ge(A, h, r, omit_minus_one=cfg.omit_minus_one)
            yield _lower({"h": h, "r": r}, bound, _size_of(table, h, r, k))


def _check_ext_r2(cfg, A, k):
    table = _profile_masks(A, cfg.h_max)
    for h in range(4, cfg.h_max + 1):
        bound = formulas.extended_bound_r2(A, h, omit_minus_one=cfg.omit_minus_one)
        yield _lower({"h": h, "r": 2}, bound, _size_of(table, h, 2, k))


def _audit_gen_zp(cfg, report):
    def check(p, k, h, table):
        for r in _r_range(cfg, h, k):
            yield {"h": h, "r": r}, formulas.gen_lower_bound(k, h, r, p), _size_of(table, h, r, k)

    _audit_zp(cfg, report, check)


def _audit_gen_z(cfg, report):
    def check(cfg, A, k):
        table = _profile_masks(A, cfg.h_max)
        for h in range(2, cfg.h_max + 1):
            for r in _r_range(cfg, h, k):
                yield _lower({"h": h, "r": r}, formulas.gen_lower_bound(k, h, r), _size_of(table, h, r, k))

    _audit_integer(cfg, report, check)


def _audit_exact(cfg: AuditConfig, report: AuditReport, restricted: bool):
    # closed-form size of the coset-progression sets vs the engine; any mismatch is a violation
    for m in cfg.moduli:
        for d in divisors(m):
            for k in range(1, min(m, cfg.k_max) + 1):
                A = construct_A_d(m, k, d)
                if restricted:
                    cells = [(h, h) for h in range(1, k + 1)]
                else:
                    r_top = min(k, cfg.r_max or k)
                    cells = [(h, r) for r in range(1, r_top + 1) for h in range(r + 1, r + cfg.h_max + 1)]
                table = _profile_masks(A, max(h for h, _ in cells))
                for h, r in cells:
                    report.checked += 1
                    observed = _size_of(table, h, r, k)
                    expected = formulas.bajnok_size(m, k, h, d) if restricted else formulas.main_size(m, k, h, r, d)
                    if observed != expected:
                        report.violations.append(Violation(A.elements, m, {"d": d, "h": h, "r": r}, expected, observed))


def _audit_mu(cfg: AuditConfig, report: AuditReport, upper: bool):
    for m in cfg.moduli:
        for k in range(1, min(m, cfg.k_max) + 1):
            for h in range(1, cfg.h_max + 1):
                rs = range(1, min(k, h - 1) + 1) if upper else (1,)
                for r in rs:
                    mu = mu_exhaustive(m, k, h, r).mu
                    report.checked += 1
                    if upper:
                        bound, d = formulas.mu_ge_upper(m, k, h, r)
                        if mu > bound:
                            report.violations.append(Violation((), m, {"k": k, "h": h, "r": r, "d": d}, bound, mu))
                    else:
                        value = formulas.ekp_mu(m, k, h)
                        if mu != value:
                            report.violations.append(Violation((), m, {"k": k, "h": h, "r": 1}, value, mu))


BOUNDS: dict[str, Callable[[AuditConfig, AuditReport], None]] = {
    "cd": lambda c, rep: _audit_zp(c, rep, _check_cd),
    "dsh": lambda c, rep: _audit_zp(c, rep, _check_dsh),
    "gen": _audit_gen_zp,
    "gen-z": _audit_gen_z,
    "lev": lambda c, rep: _audit_integer(c, rep, _check_lev),
    "lev-restricted": lambda c, rep: _audit_integer(c, rep, _check_lev_restricted),
    "freiman": lambda c, rep: _audit_integer(c, rep, _check_freiman),
    "freiman-cover": lambda c, rep: _audit_integer(c, rep, _check_freiman_cover),
    "ext-ge": lambda c, rep: _audit_integer(c, rep, _check_ext_ge),
    "ext-r2": lambda c, rep: _audit_integer(c, rep, _check_ext_r2),
    "main": lambda c, rep: _audit_exact(c, rep, restricted=False),
    "bajnok": lambda c, rep: _audit_exact(c, rep, restricted=True),
    "ekp": lambda c, rep: _audit_mu(c, rep, upper=False),
    "mu-upper": lambda c, rep: _audit_mu(c, rep, upper=True),
}


def bound_audit(config: AuditConfig) -> AuditReport:
    """Sweep the grid in ``config`` and collect every violation of the named bound.

    Lower bounds are violated when the observed size is smaller; ``main`` and
    ``bajnok`` are exact formulas and any difference counts; ``mu-upper``
    is violated when the exhaustive minimum exceeds the upper bound.
    """
    try:
        run = BOUNDS[config.bound]
    except KeyError:
        raise DomainError(f"unknown bound {config.bound!r}; choose from {sorted(BOUNDS)}") from None
    report = AuditReport(config)
    run(config, report)
    return report
