"""Command line front end: ``matfact COMMAND [FILE] [options]``.

Every command prints one JSON report (sorted keys) on stdout. Exit codes:
0 when all checks pass, 1 when a check fails, 2 on unusable input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time

from . import __version__
from .core import cone, homotopy_solve, identity, verify
from .corpus import DEFAULT_COUNT, DEFAULT_FIELD, DEFAULT_SEED, generate_corpus
from .equivariant import character_sum_rule_check, quotient_correspondence_check, verify_equivariant
from .errors import MatfactError, ProblemError  # noqa: F401
from .hom import default_window, stable_hom_table
from .problem import parse
from .pushforward import pushforward_coker_check, restrict_scalars
from .sing import (check_exactness, cokernel_roundtrip_check, coker_functor, connecting_sequence_check)
from .support import sample_zero_locus, support_sample

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT_ERROR = 0, 1, 2
DEFAULT_DEGREE_BOUND = 20


class InputError(Exception):
    pass


def parse_window(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like LO..HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("window: LO must not exceed HI")
    return lo, hi


def _mf_dict(mf) -> dict:
    return {"degrees0": list(mf.degrees0), "degrees1": list(mf.degrees1),
            "delta1": [[str(p) for p in row] for row in mf.delta1.entries],
            "delta0": [[str(p) for p in row] for row in mf.delta0.entries]}


def _names(pf, args):
    names = getattr(args, "mf", None) or list(pf.mfs)
    for n in names:
        pf.block(n)
    return names


# -- commands ----------------------------------------------------------------
# each returns (results, ok, warnings)


def cmd_verify(pf, args):
    out, ok = {}, True
    for name in _names(pf, args):
        rep = verify(pf.mf(name)).to_dict()
        b = pf.block(name)
        if b.weights0 is not None and pf.group is not None:
            rep["equivariant"] = verify_equivariant(pf.equivariant(name)).to_dict()
            ok &= rep["equivariant"]["ok"]
        out[name] = rep
        ok &= rep["ok"]
    return out, ok, []


def cmd_hom(pf, args):
    a = args.source
    b = args.target or a
    E, F = pf.mf(a), pf.mf(b)
    parities = {"even": [0], "odd": [1], "both": [0, 1]}[args.parity]
    window = args.window or default_window(E)
    out, warnings = {"source": a, "target": b, "window": list(window)}, []
    for p in parities:
        tab = stable_hom_table(E, F, p, window)
        out["even" if p == 0 else "odd"] = tab.to_dict()
        warnings += list(tab.warnings)
    return out, True, warnings


def cmd_exactness(pf, args):
    bound = args.degree_bound or DEFAULT_DEGREE_BOUND
    out, ok = {}, True
    for name in _names(pf, args):
        mf = pf.mf(name)
        ex = check_exactness(mf, bound)
        cs = connecting_sequence_check(mf, bound)
        out[name] = {"exactness": ex.to_dict(), "connecting_sequence": cs.to_dict()}
        ok &= ex.ok and cs.ok
    return out, ok, []


def cmd_coker(pf, args):
    bound = args.degree_bound or DEFAULT_DEGREE_BOUND
    out = {}
    for name in _names(pf, args):
        mf = pf.mf(name)
        M = coker_functor(mf)
        lo = min(mf.degrees0, default=0)
        out[name] = {"generator_degrees": list(M.gen_degrees), "relation_degrees": list(M.relation_degrees),
                     "hilbert": {str(d): M.hilbert(d) for d in range(lo, bound + 1)},
                     "annihilated_by_W": M.annihilated_by_W(bound)}
    return out, all(v["annihilated_by_W"] for v in out.values()), []


def cmd_stabilize(pf, args):
    out, ok = {}, True
    for name in _names(pf, args):
        mf = pf.mf(name)
        rep = cokernel_roundtrip_check(mf, args.degree_bound, window=args.window)
        d = rep.to_dict()
        d["stabilized"] = _mf_dict(rep.stabilized)
        out[name] = d
        ok &= rep.ok
    return out, ok, []


def cmd_support(pf, args):
    out, ok, warnings = {}, True, []
    points = list(pf.points) or None
    for name in _names(pf, args):
        rep = support_sample(pf.mf(name), points)
        out[name] = rep.to_dict()
        ok &= rep.ok
        warnings = list(rep.warnings)
    return out, ok, warnings


def cmd_equivariant(pf, args):
    names = args.mf or [n for n, b in pf.mfs.items() if b.weights0 is not None]
    if not names:
        raise ProblemError("no factorization carries weights0/weights1")
    out, ok = {}, True
    for name in names:
        emf = pf.equivariant(name)
        window = args.window or default_window(emf.base)
        ver = verify_equivariant(emf)
        rule = character_sum_rule_check(emf, emf, window)
        corr = quotient_correspondence_check(emf, window=window)
        out[name] = {"verify": ver.to_dict(), "character_sum_rule": rule.to_dict(),
                     "correspondence": corr.to_dict(), "window": list(window)}
        ok &= ver.ok and rule.ok and corr.ok
    return out, ok, []


def cmd_pushforward(pf, args):
    fmap = pf.ring_map()
    bound = args.degree_bound or DEFAULT_DEGREE_BOUND
    out, ok = {}, True
    for name in _names(pf, args):
        mf = pf.mf(name)
        pushed = restrict_scalars(mf, fmap, pf.map.potential)
        ver = verify(pushed)
        chk = pushforward_coker_check(mf, fmap, bound, pushed=pushed)
        out[name] = {"pushed": _mf_dict(pushed), "potential": str(pushed.potential), "verify": ver.to_dict(),
                     "coker_check": chk.to_dict()}
        ok &= ver.ok and chk.ok
    return out, ok, []


CORPUS_CHECKS = ("verify", "exactness", "cone", "connecting", "support", "roundtrip")


def run_corpus_item(item, checks, bound, window=None, support_points=40):
    mf = item.mf
    res = {"instance": item.describe()}
    ok = True
    if "verify" in checks:
        res["verify"] = verify(mf).ok
        ok &= res["verify"]
    if "exactness" in checks:
        ex = check_exactness(mf, bound)
        res["exactness_defects"] = len(ex.defects)
        ok &= ex.ok
    if "cone" in checks:
        h = homotopy_solve(identity(cone(identity(mf))))
        res["cone_contractible"] = h is not None
        ok &= h is not None
    if "connecting" in checks:
        cs = connecting_sequence_check(mf, bound)
        res["connecting_sequence"] = cs.ok
        ok &= cs.ok
    if "support" in checks:
        pts = sample_zero_locus(mf.potential, support_points, random.Random(item.seed))
        rep = support_sample(mf, pts)
        res["support"] = {"points": len(pts), "support": [list(p) for p in rep.support],
                          "unbalanced": len(rep.unbalanced), "smooth_support_points": len(rep.smooth_support_points)}
        ok &= rep.ok
    if "roundtrip" in checks:
        w = window or (-mf.D, mf.D)
        rt = cokernel_roundtrip_check(mf, None, window=w)
        res["roundtrip"] = {"ok": rt.ok, "window": list(w), "hom_mismatches": len(rt.hom_mismatches),
                            "g_closed": rt.closed, "failed_degrees": list(rt.failed_degrees)}
        ok &= rt.ok
    res["ok"] = ok
    return res, ok


def cmd_corpus(args):
    seed = DEFAULT_SEED if args.seed is None else args.seed
    field = args.field if args.field is not None else DEFAULT_FIELD
    checks = args.checks.split(",") if args.checks else list(CORPUS_CHECKS)
    unknown = set(checks) - set(CORPUS_CHECKS)
    if unknown:
        raise InputError(f"unknown corpus checks: {sorted(unknown)} (choose from {', '.join(CORPUS_CHECKS)})")
    bound = args.degree_bound or DEFAULT_DEGREE_BOUND
    try:
        items = generate_corpus(seed, args.count, field)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rows, ok = [], True
    for item in items:
        res, item_ok = run_corpus_item(item, checks, bound, args.window)
        rows.append(res)
        ok &= item_ok
    return {"seed": seed, "count": args.count, "field": str(field), "checks": checks,
            "passed": sum(r["ok"] for r in rows), "instances": rows}, ok, []


COMMANDS = {
    "verify": cmd_verify, "hom": cmd_hom, "exactness": cmd_exactness, "coker": cmd_coker,
    "stabilize": cmd_stabilize, "support": cmd_support, "equivariant": cmd_equivariant,
    "pushforward": cmd_pushforward,
}


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="override the field: a prime p or Q")
    common.add_argument("--degree-bound", type=int, help="internal degree bound (doubled grading)")
    common.add_argument("--seed", type=int, help="random seed (recorded in the report)")
    common.add_argument("--json", metavar="PATH", help="also write the report to PATH")
    common.add_argument("--window", type=parse_window, metavar="LO..HI",
                        help="internal degree window for Hom computations, e.g. --window=-8..8")
    common.add_argument("--no-timings", action="store_true", help="omit the timings block")

    parser = argparse.ArgumentParser(prog="matfact", description="Matrix factorization toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("file", help="problem file")
        return p

    for name, help_ in (("verify", "check delta1*delta0 = delta0*delta1 = W and homogeneity"),
                        ("exactness", "exactness of the 2-periodic complex and the connecting sequence"),
                        ("coker", "Hilbert function of the cokernel module"),
                        ("stabilize", "stabilize the cokernel and compare with the input"),
                        ("support", "fiber cohomology at the [points] (or all rational points)"),
                        ("pushforward", "restriction of scalars along the [map]")):
        p = with_file(name, help_)
        p.add_argument("--mf", action="append", metavar="NAME", help="restrict to this factorization")
    p = with_file("equivariant", "equivariant verification, character sum rule and two-route Hom check")
    p.add_argument("--mf", action="append", metavar="NAME")
    p = with_file("hom", "stable Hom dimensions per internal degree")
    p.add_argument("source")
    p.add_argument("target", nargs="?")
    p.add_argument("--parity", choices=("even", "odd", "both"), default="both")
    p = sub.add_parser("corpus", parents=[common], help="random Koszul corpus with all checks")
    p.add_argument("--count", type=int, default=DEFAULT_COUNT)
    p.add_argument("--checks", help=f"comma separated subset of {','.join(CORPUS_CHECKS)}")
    return parser


def _emit(report: dict, args) -> None:
    text = json.dumps(report, sort_keys=True, indent=2)
    print(text)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    inputs = {"options": {k: (list(v) if isinstance(v, tuple) else v) for k, v in sorted(vars(args).items())
                          if k not in ("json", "no_timings", "command")}}
    try:
        if args.command == "corpus":
            results, ok, warnings = cmd_corpus(args)
        else:
            try:
                with open(args.file, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
            inputs["sha256"] = hashlib.sha256(text.encode("utf-8")).hexdigest()
            pf = parse(text, args.field, strict=args.command != "verify")
            results, ok, warnings = COMMANDS[args.command](pf, args)
    except (InputError, MatfactError) as exc:
        report = {"command": args.command, "inputs": inputs, "ok": False, "error": str(exc)}
        _emit(report, args)
        print(f"matfact: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    report = {"command": args.command, "inputs": inputs, "ok": bool(ok), "results": results,
              "warnings": warnings}
    if not args.no_timings:
        report["timings"] = {"seconds": round(time.perf_counter() - start, 3)}
    _emit(report, args)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
