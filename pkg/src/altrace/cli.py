"""Command-line front end.

Every subcommand builds one payload dict; text mode and --json render the
same dict, so the two outputs can never disagree on a value.  Fractions
are serialized as "a/b" strings.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict
from fractions import Fraction

from . import classnum, murmur, selftest, signs, trace, twist
from .arith import is_prime, set_spf_limit
from .config import CACHE_ENV_VAR, DEFAULT_SIEVE_BOUND, Config


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return "%d/%d" % (obj.numerator, obj.denominator) if obj.denominator != 1 else str(obj.numerator)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float):
        return obj
    return obj


def _render(payload: dict, as_json: bool) -> str:
    payload = _jsonable(payload)
    if as_json:
        return json.dumps(payload, indent=2, sort_keys=True)
    lines = []

    def walk(prefix, val):
        if isinstance(val, dict):
            for key in val:
                walk(prefix + "." + key if prefix else key, val[key])
        elif isinstance(val, list):
            lines.append("%s = %s" % (prefix, val))
        else:
            lines.append("%s = %s" % (prefix, val))

    walk("", payload)
    return "\n".join(lines)


def _add_common(sub):
    sub.add_argument("--json", action="store_true", help="emit the payload as JSON")


def cmd_classnum(args, cfg: Config) -> tuple[dict, int]:
    disc = args.disc
    if disc >= 0 or disc % 4 not in (0, 1):
        raise SystemExit("classnum: disc must be negative and = 0,1 mod 4")
    h12 = classnum.hurwitz12(disc)
    oracle = classnum.hurwitz12_oracle(disc)
    payload = {
        "disc": disc,
        "hprime": classnum.hprime(disc),
        "hurwitz": classnum.hurwitz(disc),
        "oracle": Fraction(oracle, 12),
        "agree": h12 == oracle,
    }
    return payload, 0 if h12 == oracle else 1


def cmd_trace(args, cfg: Config) -> tuple[dict, int]:
    k, q, r, m, ell = args.k, args.q, args.r, args.M, args.ell
    payload = {
        "k": k,
        "q": q,
        "r": r,
        "M": m,
        "ell": ell,
        "t_full": trace.t_full(k, q, r, m, ell),
        "t_new": trace.t_new(k, q, r, m, ell),
    }
    mismatch = False
    if r == 1 and is_squarefree_level(q, m):
        sqf = trace.t_new_squarefree(k, q, m, ell)
        payload["t_new_squarefree"] = sqf
        mismatch = sqf != payload["t_new"]
    if args.squarefree_Q is not None:
        payload["t_new_squarefree_Q"] = trace.t_new_squarefree(k, args.squarefree_Q, m, ell)
    n = q**r * m
    if r == 1 and m == 1 and math.gcd(ell, n) == 1 and 4 * ell < n and is_squarefree_level(q, m):
        fricke = trace.t_full_fricke(k, n, ell)
        payload["t_full_fricke"] = fricke
        mismatch = mismatch or fricke != payload["t_new_squarefree"]
    payload["cross_path_mismatch"] = mismatch
    return payload, 1 if mismatch else 0


def is_squarefree_level(q: int, m: int) -> bool:
    from .arith import is_squarefree

    return is_squarefree(q * m)


def cmd_delta(args, cfg: Config) -> tuple[dict, int]:
    k, q, r, m = args.k, args.q, args.r, args.M
    res = signs.equidistribution_predicate(k, q, r, m)
    dims = signs.eigenspace_dims(k, q, r, m)
    payload = {
        "k": k,
        "q": q,
        "r": r,
        "M": m,
        "delta": res.value,
        "dim_new": dims.plus + dims.minus,
        "dim_plus": dims.plus,
        "dim_minus": dims.minus,
        "covered": res.covered,
        "case_tag": res.case_tag,
        "zero_reason": res.zero_reason,
        "predicted_sign": res.predicted_sign,
    }
    return payload, 0


def cmd_equidist_sweep(args, cfg: Config) -> tuple[dict, int]:
    k_lo, k_hi = args.k_range
    if k_lo % 2 or k_hi % 2 or k_lo < 2 or k_hi < k_lo:
        raise SystemExit("equidist-sweep: --k-range needs even bounds 2 <= lo <= hi")
    mismatches = []
    covered = checked = 0
    for q, r in selftest._prime_powers_upto(args.qr_max):
        for m in range(1, args.M_max + 1):
            if m % q == 0:
                continue
            for k in range(k_lo, k_hi + 1, 2):
                checked += 1
                d = signs.delta(k, q, r, m)
                if d != trace.t_new(k, q, r, m, 1):
                    mismatches.append(["two-path", k, q, r, m])
                res = signs.equidistribution_predicate(k, q, r, m)
                if not res.covered:
                    continue
                covered += 1
                if res.predicted_sign == 0 and d != 0:
                    mismatches.append(["predicate-zero", k, q, r, m])
                elif res.predicted_sign not in (None, 0) and (d == 0 or (d > 0) != (res.predicted_sign > 0)):
                    mismatches.append(["predicate-sign", k, q, r, m])
    payload = {
        "grid": {"k_range": [k_lo, k_hi], "qr_max": args.qr_max, "M_max": args.M_max},
        "checked": checked,
        "covered": covered,
        "mismatches": mismatches[:20],
        "mismatch_count": len(mismatches),
    }
    return payload, 1 if mismatches else 0


def cmd_murmur(args, cfg: Config) -> tuple[dict, int]:
    try:
        spec = murmur.parse_family(args.family, k=args.k, beta=Fraction(args.beta))
    except ValueError as exc:
        raise SystemExit("murmur: %s" % exc)
    ell_range = (2, args.ell_max)
    series: dict[str, list[murmur.MurmurationPoint]] = {}
    if args.eigenspace:
        eps = tuple(1 if ch == "+" else -1 for ch in args.eigenspace)
        if any(ch not in "+-" for ch in args.eigenspace):
            raise SystemExit("murmur: --eigenspace takes a +- string like '+-'")
        pts = murmur.scan_eigenspace(spec, eps, ell_range, args.X, workers=cfg.workers)
        series["eps=" + args.eigenspace] = pts
    else:
        pts = murmur.scan_WQ(spec, ell_range, args.X, workers=cfg.workers)
        series["raw"] = pts
    if args.smooth is not None:
        series["smoothed"] = murmur.smooth(pts, args.smooth)
    payload = {
        "family": spec.canonical(),
        "k": spec.k,
        "beta": spec.beta,
        "X": args.X,
        "points": {label: len(p) for label, p in series.items()},
    }
    if args.fit:
        fit = murmur.sqrt_fit(pts, spec.k, min_points=args.min_fit_points)
        payload["fit"] = {"c": fit.c, "d": fit.d, "rms_residual": fit.rms_residual}
    os.makedirs(cfg.output_dir, exist_ok=True)
    stem = os.path.join(cfg.output_dir, args.out or "scan")
    murmur.emit(series, "csv", stem + ".csv", spec)
    murmur.emit(series, "svg", stem + ".svg", spec)
    payload["csv"] = stem + ".csv"
    payload["svg"] = stem + ".svg"
    return payload, 0


def cmd_twist(args, cfg: Config) -> tuple[dict, int]:
    k, q, r, m = args.k, args.q, args.r, args.M
    types = twist.classify_local_types(q, r)
    kappas = {}
    if q != 2:
        for t in types:
            try:
                if r >= 3 and r % 2:
                    kappas[t] = {"q*": twist.kappa_at_q(q, r, t, "q*"), "other": twist.kappa_at_q(q, r, t, "other")}
                else:
                    kappas[t] = twist.kappa_at_q(q, r, t)
            except ValueError:
                pass
    payload = {
        "k": k,
        "q": q,
        "r": r,
        "M": m,
        "local_types": list(types),
        "kappa_at_q": kappas,
        "chi_q_flips_every_type": twist.chi_q_flips_every_type(q, r) if q != 2 else None,
    }
    if r % 2:
        chars = twist.quadtwist_characters(k, q, r, m)
        payload["pairing_characters"] = [c.label for c in chars]
        first = twist.quadtwist_bijection(k, q, r, m)
        payload["quadtwist_bijection"] = first.label if first else None
        if first is not None:
            payload["delta"] = signs.delta(k, q, r, m)
    return payload, 0


def cmd_selftest(args, cfg: Config) -> tuple[dict, int]:
    results = selftest.run_all(seed=args.seed)
    print(selftest.format_results(results), file=sys.stderr)
    payload = {
        "results": [asdict(r) for r in results],
        "passed": sum(r.passed for r in results),
        "total": len(results),
    }
    return payload, 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="altrace",
        description="Exact traces of Hecke and Atkin-Lehner operators on newform spaces.",
        epilog="Family grammar: I:M=<m>[,omega=<r>] | II:Q=<q>,M=all|sqf|sqf<r> | "
        "III:r=<r>,fixed=<p1,p2,...>,idx=<i1,...>",
    )
    parser.add_argument("--sieve-bound", type=int, default=DEFAULT_SIEVE_BOUND, help="class-number sieve bound")
    parser.add_argument("--cache", default=None, help="sieve cache file (default: $%s)" % CACHE_ENV_VAR)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--output-dir", default=".")
    parser.add_argument("--seed", type=int, default=selftest.DEFAULT_SEED, help="seed for sampled spot checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classnum", help="Hurwitz class number with oracle cross-check")
    p.add_argument("disc", type=int)
    _add_common(p)
    p.set_defaults(fn=cmd_classnum)

    p = sub.add_parser("trace", help="trace of T_ell W_q on full and new spaces")
    for flag, typ in (("--k", int), ("--q", int), ("--r", int), ("--M", int), ("--ell", int)):
        p.add_argument(flag, type=typ, required=flag != "--r" and flag != "--M" and flag != "--ell")
    p.set_defaults(r=1, M=1, ell=1)
    p.add_argument("--squarefree-Q", type=int, default=None, help="also evaluate with composite squarefree Q")
    _add_common(p)
    p.set_defaults(fn=cmd_trace)

    p = sub.add_parser("delta", help="eigenspace dimension difference and predicate verdict")
    for flag in ("--k", "--q", "--r", "--M"):
        p.add_argument(flag, type=int, required=flag in ("--k", "--q"))
    p.set_defaults(r=1, M=1)
    _add_common(p)
    p.set_defaults(fn=cmd_delta)

    p = sub.add_parser("equidist-sweep", help="two-path and predicate verification grid")
    p.add_argument("--k-range", type=int, nargs=2, default=(2, 14), metavar=("LO", "HI"))
    p.add_argument("--qr-max", type=int, default=50)
    p.add_argument("--M-max", type=int, default=60)
    _add_common(p)
    p.set_defaults(fn=cmd_equidist_sweep)

    p = sub.add_parser("murmur", help="murmuration scan; writes CSV and SVG")
    p.add_argument("--family", required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--X", type=int, required=True)
    p.add_argument("--beta", default="2")
    p.add_argument("--ell-max", type=int, required=True)
    p.add_argument("--smooth", type=float, default=None, help="delta-smoothing exponent in (0,1)")
    p.add_argument("--eigenspace", default=None, help="sign string like '+-' for kind III eigenspace scans")
    p.add_argument("--fit", action="store_true", help="least-squares sqrt(x) fit")
    p.add_argument("--min-fit-points", type=int, default=8)
    p.add_argument("--out", default=None, help="output file stem")
    _add_common(p)
    p.set_defaults(fn=cmd_murmur)

    p = sub.add_parser("twist", help="local types at q and quadratic-twist pairing verdict")
    for flag in ("--k", "--q", "--r", "--M"):
        p.add_argument(flag, type=int, required=flag == "--q")
    p.set_defaults(k=2, r=1, M=1)
    _add_common(p)
    p.set_defaults(fn=cmd_twist)

    p = sub.add_parser("selftest", help="run the full acceptance suite")
    _add_common(p)
    p.set_defaults(fn=cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = Config(
        sieve_bound=args.sieve_bound,
        cache_path=args.cache,
        workers=args.workers,
        output_dir=args.output_dir,
    )
    if cfg.sieve_bound != DEFAULT_SIEVE_BOUND:
        set_spf_limit(cfg.sieve_bound)
    if cfg.cache_path:
        classnum.get_table(min(cfg.sieve_bound, 10**6), cfg.cache_path)
    try:
        payload, code = args.fn(args, cfg)
    except ValueError as exc:
        parser.error(str(exc))
        return 2
    print(_render(payload, args.json))
    return code


if __name__ == "__main__":
    sys.exit(main())
