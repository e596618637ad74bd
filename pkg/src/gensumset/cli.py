"""``gensumset`` command line: sumsets, constructions, formulas, searches, audits.

Exit codes: 0 success, 1 a verification found a violation, 2 usage error,
3 domain error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from importlib import resources
from typing import Any

from . import __version__, formulas
from .constructions import construct_A_d
from .core import DomainError, IntSet, ZmSet, parse_set_literal
from .engine import GenSumsetSpec, gen_sumset, iterated_sumset, restricted_sumset
from .search import (
    INVERSE_MAX_K,
    AuditConfig,
    bound_audit,
    equality_enumeration_z,
    equality_enumeration_zp,
    mu_exhaustive,
    z_inverse_cells,
    zp_inverse_cells,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3

FORMULA_NAMES = (
    "cd", "dsh", "gen", "ekp", "bajnok", "main", "mu-upper",
    "lev", "lev-restricted", "freiman", "freiman-cover", "ext-ge", "ext-r2",
)


def csv_columns() -> dict[str, list[str]]:
    text = resources.files("gensumset").joinpath("schema/csv_columns.json").read_text()
    return json.loads(text)


def record(command: str, parameters: dict, result: Any) -> dict:
    return {"command": command, "parameters": parameters, "result": result, "version": __version__}


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise DomainError(f"--name {args.name} requires " + ", ".join("--" + n.replace("_", "-") for n in missing))


def set_literal(text: str) -> list[int]:
    try:
        return parse_set_literal(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _parse_set(args) -> ZmSet | IntSet:
    els = args.set
    if args.modulus is None:
        return IntSet(els)
    return ZmSet.from_elements(els, args.modulus)


# --- commands -----------------------------------------------------------------
# Each returns (output record, csv rows, exit code).

def cmd_sumset(args):
    A = _parse_set(args)
    if args.mode == "classic":
        S = iterated_sumset(A, args.h)
    elif args.mode == "restricted":
        S = restricted_sumset(A, args.h)
    else:
        S = gen_sumset(A, GenSumsetSpec(args.h, args.r, args.mode))
    params = {"set": list(A.elements), "modulus": args.modulus, "h": args.h, "r": args.r, "mode": args.mode}
    result = {"elements": list(S.elements), "size": len(S)}
    row = {**params, "set": _join(A.elements), "size": len(S), "elements": _join(S.elements)}
    return record("sumset", params, result), [row], EXIT_OK


def cmd_construct(args):
    A = construct_A_d(args.m, args.k, args.d)
    params = {"m": args.m, "k": args.k, "d": args.d}
    result = {"elements": list(A.elements), "size": len(A)}
    return record("construct", params, result), [{**params, "size": len(A), "elements": _join(A.elements)}], EXIT_OK


def _formula_value(args) -> dict:
    name = args.name
    if name == "cd":
        _need(args, "p", "k", "h")
        return {"value": formulas.cd_bound(args.p, args.k, args.h)}
    if name == "dsh":
        _need(args, "p", "k", "h")
        return {"value": formulas.dsh_bound(args.p, args.k, args.h)}
    if name == "gen":
        _need(args, "k", "h", "r")
        return {"value": formulas.gen_lower_bound(args.k, args.h, args.r, args.p)}
    if name == "ekp":
        _need(args, "m", "k", "h")
        return {"value": formulas.ekp_mu(args.m, args.k, args.h)}
    if name == "bajnok":
        _need(args, "m", "k", "h", "d")
        return {"value": formulas.bajnok_size(args.m, args.k, args.h, args.d)}
    if name == "main":
        _need(args, "m", "k", "h", "r", "d")
        return {"value": formulas.main_size(args.m, args.k, args.h, args.r, args.d)}
    if name == "mu-upper":
        _need(args, "m", "k", "h", "r")
        value, d = formulas.mu_ge_upper(args.m, args.k, args.h, args.r)
        return {"value": value, "d": d}
    # remaining formulas take a normalized integer set
    _need(args, "set")
    A = IntSet(args.set)
    if name == "lev":
        _need(args, "h")
        return {"value": formulas.lev_lower_bound(A, args.h)}
    if name == "lev-restricted":
        return {"value": formulas.lev_restricted_lower(A)}
    if name == "freiman":
        return {"value": formulas.freiman_2A_lower(A)}
    if name == "freiman-cover":
        res = formulas.freiman_cover_check(A)
        return {"value": res.holds, "b": res.b, "cover_length": res.cover_length, "applicable": res.applicable}
    if name == "ext-ge":
        _need(args, "h", "r")
        return {"value": formulas.extended_bound_ge(A, args.h, args.r, omit_minus_one=args.omit_minus_one)}
    _need(args, "h")
    return {"value": formulas.extended_bound_r2(A, args.h, omit_minus_one=args.omit_minus_one)}


def cmd_formula(args):
    params = {"name": args.name}
    for key in ("m", "p", "k", "h", "r", "d"):
        if getattr(args, key) is not None:
            params[key] = getattr(args, key)
    if args.set is not None:
        params["set"] = args.set
    if args.name in ("ext-ge", "ext-r2"):
        params["omit_minus_one"] = args.omit_minus_one
    result = {"name": args.name, **_formula_value(args)}
    return record("formula", params, result), [{"name": args.name, "value": result["value"]}], EXIT_OK


def _n_jobs(threads: int) -> int:
    return -1 if threads == 0 else threads


def cmd_mu(args):
    report = mu_exhaustive(args.m, args.k, args.h, args.r, args.mode, n_jobs=_n_jobs(args.threads), force=args.force)
    data = report.to_dict()
    row = {
        **data["parameters"],
        "mu": data["mu"],
        "witness_count": data["witness_count"],
        "orbits_scanned": data["orbits_scanned"],
        "classic_mu": data["classic_mu"],
        "witnesses": " ".join(_join(w) for w in data["witnesses"]),
    }
    params = dict(data["parameters"])
    return record("mu", params, data), [row], EXIT_OK


def _inverse_cells(args):
    zp = args.inverse == "zp"
    top = args.p if zp else args.N
    if top is None:
        raise DomainError("--p is required for --inverse zp" if zp else "--N is required for --inverse z")
    if not args.all:
        if None in (args.k, args.h, args.r):
            raise DomainError("give --k, --h and --r, or --all to sweep")
        yield args.k, args.h, args.r, top
        return
    if zp:
        for p, k, h, r in zp_inverse_cells(top):
            yield k, h, r, p
    else:
        for k, h, r in z_inverse_cells(args.k or INVERSE_MAX_K, args.h_span):
            yield k, h, r, top


def cmd_verify(args):
    reports = []
    for k, h, r, top in _inverse_cells(args):
        if args.inverse == "zp":
            reports.append(equality_enumeration_zp(top, k, h, r, force=args.force))
        else:
            reports.append(equality_enumeration_z(top, k, h, r, force=args.force))
    data = [rep.to_dict() for rep in reports]
    rows = []
    for rep in data:
        p = rep["parameters"]
        rows.append({
            "inverse": args.inverse,
            "modulus_or_N": p.get("p", p.get("N")),
            "k": p["k"], "h": p["h"], "r": p["r"],
            "applicable": rep["applicable"],
            "bound": rep["bound"],
            "equality_count": len(rep["equality_sets"]),
            "all_ap": rep["all_ap"],
            "counterexamples": " ".join(_join(s) for s in rep["counterexamples"]),
        })
    ok = all(rep["all_ap"] for rep in data)
    params = {"inverse": args.inverse, "p": args.p, "N": args.N, "k": args.k, "h": args.h, "r": args.r, "all": args.all}
    return record("verify", params, data), rows, EXIT_OK if ok else EXIT_VIOLATION


def cmd_audit(args):
    cfg = AuditConfig.from_grid(args.bound, args.grid)
    if args.omit_minus_one:
        cfg = AuditConfig(**{**cfg.__dict__, "omit_minus_one": True})
    report = bound_audit(cfg)
    data = report.to_dict()
    rows = [
        {
            "bound": cfg.bound,
            "set": _join(v["set"]),
            "modulus": v["modulus"],
            "params": json.dumps(v["params"], sort_keys=True),
            "expected": v["expected"],
            "observed": v["observed"],
        }
        for v in data["violations"]
    ]
    params = {"bound": args.bound, "grid": args.grid, "omit_minus_one": args.omit_minus_one}
    return record("audit", params, data), rows, EXIT_OK if report.passed else EXIT_VIOLATION


# --- output ---------------------------------------------------------------------

def _join(els) -> str:
    return " ".join(str(x) for x in els)


def _emit(fmt: str, command: str, rec: dict, rows: list[dict], out):
    if fmt == "json":
        json.dump(rec, out, sort_keys=True)
        out.write("\n")
    elif fmt == "csv":
        writer = csv.DictWriter(out, fieldnames=csv_columns()[command], lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        writer.writerows(rows)
    else:
        res = rec["result"]
        if isinstance(res, dict) and "elements" in res:
            out.write(f"{{{', '.join(map(str, res['elements']))}}}\nsize {res['size']}\n")
        elif isinstance(res, dict) and "value" in res:
            out.write(f"{res['name']} = {res['value']}\n")
        elif isinstance(res, dict) and "mu" in res:
            out.write(f"mu = {res['mu']}  ({res['witness_count']} witness orbits, {res['orbits_scanned']} scanned)\n")
            for w in res["witnesses"]:
                out.write(f"  {{{', '.join(map(str, w))}}}\n")
        else:
            for row in rows:
                out.write("  ".join(f"{k}={v}" for k, v in row.items()) + "\n")
            if command == "audit":
                out.write(f"checked {res['checked']}, violations {len(res['violations'])}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gensumset", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=("json", "csv", "plain"), default="json")
        return p

    p = add("sumset", cmd_sumset, "compute a sumset of a set in Z or Z_m")
    p.add_argument("--set", type=set_literal, required=True, help="comma-separated integers, e.g. 0,1,4,8")
    p.add_argument("--modulus", type=int)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--mode", choices=("ge", "le", "eq", "classic", "restricted"), default="ge")

    p = add("construct", cmd_construct, "build the coset-progression set A_d(m, k)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)

    p = add("formula", cmd_formula, "evaluate a closed-form size or bound")
    p.add_argument("--name", choices=FORMULA_NAMES, required=True)
    for key in ("m", "p", "k", "h", "r", "d"):
        p.add_argument(f"--{key}", type=int)
    p.add_argument("--set", type=set_literal, help="normalized integer set for lev/freiman/ext bounds")
    p.add_argument("--omit-minus-one", action="store_true", help="uncorrected extended bounds")

    p = add("mu", cmd_mu, "exhaustive minimum sumset size over k-subsets of Z_m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--mode", choices=("ge", "le", "eq"), default="ge")
    p.add_argument("--threads", type=int, default=1, help="worker processes; 0 uses every core")
    p.add_argument("--force", action="store_true", help="ignore the scale guard")

    p = add("verify", cmd_verify, "check that equality cases of the lower bound are progressions")
    p.add_argument("--inverse", choices=("zp", "z"), required=True)
    p.add_argument("--p", type=int, help="prime (or largest prime with --all) for zp")
    p.add_argument("--N", type=int, help="largest element of the normalized sets for z")
    p.add_argument("--k", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--all", action="store_true", help="sweep every admissible (k, h, r)")
    p.add_argument("--h-span", type=int, default=4, help="with --all for z: h ranges up to r + h-span")
    p.add_argument("--force", action="store_true")

    p = add("audit", cmd_audit, "sweep a bound over a grid and report violations")
    p.add_argument("--bound", required=True)
    p.add_argument("--grid", default="", help='e.g. "p=3,5,7;k=5;h=4" (keys m/p, k, h, r, a)')
    p.add_argument("--omit-minus-one", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rec, rows, code = args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    _emit(args.format, args.command, rec, rows, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
