"""Command-line driver: pair, verify, search, curve-info, bench.

Exit codes: 0 success, 1 verification failure, 2 bad input, 3 math error.
Errors are reported as one JSON object on stderr.
"""
import argparse
import json
import random
import sys
import time

from .curve import classify, frobenius_charpoly
from .errors import MathError, ParseError
from .jacobian import Jacobian
from .pairings import PAIRINGS, HVSpec, RateSpec, pairing_dispatch, tate_raw
from .pfsearch import SearchConfig, embedding_degree, factor, rho_value, search, write_records
from .serialize import (curve_from_json, divisor_from_json, divisor_to_json, encode_value,
                        pairing_result)
from .verify import choose_context, run_suite

EXIT_VERIFY, EXIT_PARSE, EXIT_MATH = 1, 2, 3


class VerificationFailure(Exception):
    pass


def _load_json(path, flag):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"{flag}: cannot read {path}: {exc.strerror}", "") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{flag}: invalid JSON ({exc.msg} at line {exc.lineno})", "") from exc


def _csv_ints(text, flag):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise ParseError(f"{flag}: expected comma-separated integers", "") from exc


def parse_inputs(args):
    """(curve, [D1, D2], ctx) from --curve/--d1/--d2; divisors may be absent."""
    if not args.curve:
        raise ParseError("--curve is required", "")
    raw = _load_json(args.curve, "--curve")
    curve = curve_from_json(raw)
    r = getattr(args, "r", None)
    if r is None and isinstance(raw, dict) and raw.get("r") is not None:
        try:
            r = int(str(raw["r"]), 10)
        except ValueError as exc:
            raise ParseError("/r: expected a decimal integer", "/r") from exc
    # the field basis stays fixed; --seed only drives sampling
    ctx = choose_context(curve, r)
    divs = []
    for flag in ("d1", "d2"):
        path = getattr(args, flag, None)
        divs.append(divisor_from_json(_load_json(path, f"--{flag}"), ctx.jac, ctx.k)
                    if path else None)
    return curve, divs, ctx


def _params(args, ctx):
    params = {}
    if args.hv_h:
        params["spec"] = HVSpec(args.hv_s if args.hv_s is not None else ctx.q,
                                _csv_ints(args.hv_h, "--hv-h"))
    if args.rate_i is not None or args.rate_j is not None:
        params["spec"] = RateSpec.from_indices(ctx, args.rate_i or 1, args.rate_j or 2)
    if args.twist_e is not None:
        params["e"] = args.twist_e
    return params


def _arguments(name, D1, D2, ctx, rng):
    """Order (and sample missing) arguments: G1 element D1, G2 element D2."""
    if name == "weil":
        D1 = D1 or ctx.random_torsion(rng)
        D2 = D2 or ctx.random_torsion(rng)
        return D1, D2
    D1 = D1 or ctx.random_g1(rng)
    D2 = D2 or ctx.random_g2(rng)
    if name in ("tate", "twisted_ate"):
        return D1, D2
    return D2, D1


def cmd_pair(args, out):
    _, (D1, D2), ctx = parse_inputs(args)
    rng = random.Random(args.seed)
    name = args.pairing
    K = ctx.pairing_field
    if args.debug_raw_tate:
        D1 = D1 or ctx.random_g1(rng)
        D2 = D2 or ctx.random_g2(rng)
        v = tate_raw(D1, D2, ctx, rng)
        out.write(json.dumps({"raw_tate": encode_value(K, v),
                              "note": "defined only modulo r-th powers"}) + "\n")
        return 0
    if args.hv_h and name == "tate":
        name = "hv"
    Da, Db = _arguments(name, D1, D2, ctx, rng)
    value, meta = pairing_dispatch(name, Da, Db, _params(args, ctx), ctx, rng)
    out.write(json.dumps(pairing_result(K, value, name, meta)) + "\n")
    return 0


def cmd_verify(args, out):
    _, _, ctx = parse_inputs(args)
    rep = run_suite(ctx, args.trials, args.seed)
    total_fail = sum(rep.failed.values())
    out.write(json.dumps({"context": {"q": str(ctx.q), "r": str(ctx.r), "k": ctx.k},
                          "checks": rep.to_dict(),
                          "passed": sum(rep.passed.values()), "failed": total_fail}) + "\n")
    if total_fail:
        raise VerificationFailure(f"{total_fail} checks failed")
    return 0


def cmd_search(args, out):
    try:
        config = SearchConfig(p_min=args.p_min, p_max=args.p_max, max_k=args.max_k,
                              min_r_bits=args.min_r_bits, seed=args.seed,
                              sample_all=not args.sample, samples=args.sample or 1000)
    except ValueError as exc:
        raise ParseError(str(exc), "") from exc
    notices = []
    if args.format == "csv":
        out.write(write_records(search(config, notices), "csv"))
    else:
        for rec in search(config, notices):
            out.write(json.dumps(rec.to_dict()) + "\n")
    for n in notices:
        sys.stderr.write(json.dumps({"notice": n}) + "\n")
    return 0


def cmd_curve_info(args, out):
    if not args.curve:
        raise ParseError("--curve is required", "")
    curve = curve_from_json(_load_json(args.curve, "--curve"))
    cp = frobenius_charpoly(curve)
    order = cp(1)
    cands = []
    for r in sorted(set(factor(order)), reverse=True):
        if r == curve.p:
            continue
        cands.append({"r": str(r), "k": embedding_degree(curve.q, r),
                      "rho": rho_value(curve.genus, curve.q, r)})
    out.write(json.dumps({"charpoly": [str(c) for c in cp.coeffs], "jac_order": str(order),
                          "class": classify(cp, curve.p), "candidates": cands}) + "\n")
    return 0


def cmd_bench(args, out):
    _, (D1, D2), ctx = parse_inputs(args)
    rng = random.Random(args.seed)
    rows = []
    names = [args.pairing] if args.pairing else list(PAIRINGS)
    for name in names:
        if name == "rate" and ctx.k < 3 or name == "twisted_ate" and ctx.k % 2:
            continue
        if name in ("ate_i", "hv", "vercauteren") and ctx.k < 2:
            continue
        Da, Db = _arguments(name, D1, D2, ctx, rng)
        start = time.perf_counter()
        _, meta = pairing_dispatch(name, Da, Db, _params(args, ctx) if args.pairing else {},
                                   ctx, rng)
        rows.append({"pairing": name, "final_exp": meta["final_exp"],
                     "loop_bits": meta["loop_bits"],
                     "seconds": round(time.perf_counter() - start, 6)})
    for row in rows:
        out.write(json.dumps(row) + "\n")
    return 0


COMMANDS = {"pair": cmd_pair, "verify": cmd_verify, "search": cmd_search,
            "curve-info": cmd_curve_info, "bench": cmd_bench}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message, "")


def build_parser():
    ap = _Parser(prog="hyperpair", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--curve")
    ap.add_argument("--d1")
    ap.add_argument("--d2")
    ap.add_argument("--r", type=int)
    ap.add_argument("--pairing", choices=PAIRINGS)
    ap.add_argument("--hv-s", type=int)
    ap.add_argument("--hv-h")
    ap.add_argument("--rate-i", type=int)
    ap.add_argument("--rate-j", type=int)
    ap.add_argument("--twist-e", type=int)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--p-min", type=int, default=5)
    ap.add_argument("--p-max", type=int, default=13)
    ap.add_argument("--max-k", type=int, default=12)
    ap.add_argument("--min-r-bits", type=int, default=2)
    ap.add_argument("--sample", type=int, default=0,
                    help="random curves per prime instead of full enumeration")
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    ap.add_argument("--debug-raw-tate", action="store_true")
    return ap


def _fail(code, kind, message, pointer=None):
    diag = {"error": kind, "message": message, "exit_code": code}
    if pointer:
        diag["pointer"] = pointer
    sys.stderr.write(json.dumps(diag) + "\n")
    return code


def run(argv=None, out=None):
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.command == "pair" and not args.pairing:
            args.pairing = "tate"
        return COMMANDS[args.command](args, out)
    except ParseError as exc:
        return _fail(EXIT_PARSE, "ParseError", str(exc), getattr(exc, "pointer", None))
    except VerificationFailure as exc:
        return _fail(EXIT_VERIFY, "VerificationFailure", str(exc))
    except MathError as exc:
        return _fail(EXIT_MATH, type(exc).__name__, str(exc))


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
