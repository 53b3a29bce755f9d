"""Command-line interface.

Subcommands:
  moment   exact monomial moment of unitary matrix entries
  wg       class integral (Weingarten coefficient) by cycle type
  fan      single-column closed form
  zint     two-column closed form
  xint     exchange-family integral from an eight-weight signature
  sphere   monomial moment over the real unit hypersphere
  mc       Monte Carlo estimate of a moment query
  verify   run one of the named verification suites

Exit codes: 0 success, 1 verification/estimate mismatch, 2 usage error.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys
from fractions import Fraction

from . import invariants, sphere, suites, weingarten
from .montecarlo import (SamplerConfig, estimate_moment,
                         estimate_sphere_moment, mc_tolerance)
from .queries import MomentQuery, canonicalize
from .ratfun import RationalFunction


class UsageError(Exception):
    pass


def _query_obj(q: MomentQuery) -> dict:
    return {"n": q.n, "I": list(q.I), "J": list(q.J),
            "K": list(q.K), "L": list(q.L)}


def _parse_ints(text: str, what: str, minimum: int = 1) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        values = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise UsageError(f"{what} must be a comma-separated list of integers")
    if any(v < minimum for v in values):
        raise UsageError(f"{what} entries must be >= {minimum}")
    return values


def _format_float(x: float) -> str:
    return f"{x:.15g}"


def _value_json(value, symbolic: bool) -> dict:
    if symbolic:
        return {"kind": "ratfun", "ratfun": str(value)}
    return {"kind": "rational", "rational": str(value),
            "float": float(value)}


def _emit(value, output: str, query_json=None, method=None) -> None:
    """Print one computed exact value in the requested representation."""
    symbolic = isinstance(value, RationalFunction)
    if output == "json":
        doc = {}
        if query_json is not None:
            doc["query"] = query_json
        if method is not None:
            doc["method"] = method
        doc["value"] = _value_json(value, symbolic)
        if symbolic:
            doc["validity_min_n"] = value.validity_min_n
        print(json.dumps(doc))
    elif symbolic:
        print(str(value))
    elif output == "float":
        print(_format_float(float(value)))
    else:
        print(str(value))


# ---------------------------------------------------------------------------
# moment

def _resolve_n(n_arg, *lists) -> int:
    if n_arg is not None:
        if n_arg < 1:
            raise UsageError("--n must be at least 1")
        return n_arg
    peak = max((v for vs in lists for v in vs), default=1)
    return peak


def _compute_moment(q: MomentQuery, method: str, symbolic: bool):
    """Return (value, method_used, family) for one query."""
    cm = canonicalize(q)
    family = None
    if method in ("auto", "invariant"):
        hit = invariants.match_closed_form(cm)
        if hit is not None:
            family, rf = hit
            if symbolic:
                return rf, "invariant", family
            try:
                return rf.eval_at(q.n), "invariant", family
            except (ValueError, ZeroDivisionError):
                if method == "invariant":
                    raise
                family = None  # closed form not valid at this n; fall back
        elif method == "invariant":
            raise UsageError("no closed form; use method=group")
    if symbolic:
        return weingarten.moment_symbolic(cm), "group", None
    return weingarten.moment_at(cm, q.n), "group", None


def _cmd_moment(args) -> int:
    if args.batch:
        return _run_batch(args)
    I = _parse_ints(args.I, "--I")
    J = _parse_ints(args.J, "--J")
    K = _parse_ints(args.K, "--K")
    L = _parse_ints(args.L, "--L")
    n = _resolve_n(args.n, I, J, K, L)
    q = MomentQuery.make(n, I, J, K, L)
    symbolic = args.symbolic or args.output == "symbolic"
    value, used, family = _compute_moment(q, args.method, symbolic)
    method_label = used if family is None else f"{used}:{family}"
    _emit(value, args.output, query_json=_query_obj(q), method=method_label)
    return 0


def _run_batch(args) -> int:
    failures = 0
    if args.batch == "-":
        opened = contextlib.nullcontext(sys.stdin)
    else:
        try:
            opened = open(args.batch, "r", encoding="utf-8")
        except OSError as e:
            raise UsageError(f"cannot read batch file: {e}") from e
    with opened as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                if "n" not in obj:
                    obj = dict(obj)
                    obj["n"] = _resolve_n(
                        None, *(obj.get(k, ()) for k in "IJKL"))
                q = MomentQuery.from_json_obj(obj)
                symbolic = bool(obj.get("symbolic", False)) or args.symbolic
                method = obj.get("method", args.method)
                value, used, family = _compute_moment(q, method, symbolic)
                is_rf = isinstance(value, RationalFunction)
                doc = {
                    "query": _query_obj(q),
                    "method": used if family is None else f"{used}:{family}",
                    "value": _value_json(value, is_rf),
                }
                if is_rf:
                    doc["validity_min_n"] = value.validity_min_n
                print(json.dumps(doc))
            except (UsageError, ValueError, ZeroDivisionError, KeyError) as e:
                failures += 1
                print(json.dumps({"error": str(e), "input": line}))
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# other exact subcommands

def _cmd_wg(args) -> int:
    ct = _parse_ints(getattr(args, "class"), "--class")
    if not ct:
        raise UsageError("--class must name a nonempty cycle type")
    if list(ct) != sorted(ct, reverse=True):
        raise UsageError("--class must be weakly decreasing, e.g. 2,1")
    if args.p is not None and args.p != sum(ct):
        raise UsageError(f"--class sums to {sum(ct)}, not --p {args.p}")
    if args.n is None:
        _emit(weingarten.xi_symbolic(ct), args.output)
    else:
        _emit(weingarten.xi_at(ct, args.n), args.output)
    return 0


def _eval_or_symbolic(rf: RationalFunction, n, output) -> int:
    if n is None:
        _emit(rf, output)
    else:
        _emit(rf.eval_at(n), output)
    return 0


def _cmd_fan(args) -> int:
    ms = _parse_ints(args.m, "--m")
    if not ms:
        raise UsageError("--m must name at least one multiplicity")
    return _eval_or_symbolic(invariants.fan(ms), args.n, args.output)


def _cmd_zint(args) -> int:
    ms = _parse_ints(args.m, "--m", minimum=0)
    if len(ms) != 3:
        raise UsageError("--m must have exactly three entries, e.g. 1,0,1")
    return _eval_or_symbolic(invariants.z_integral(*ms), args.n, args.output)


def _cmd_xint(args) -> int:
    w = _parse_ints(args.w, "--w", minimum=0)
    if len(w) != 8:
        raise UsageError("--w must have exactly eight entries")
    value = invariants.x_integral(w, n=args.n, symbolic=args.n is None)
    _emit(value, args.output)
    return 0


def _cmd_sphere(args) -> int:
    exponents = _parse_ints(args.exponents, "--exponents", minimum=0)
    if len(exponents) != args.n:
        raise UsageError("--exponents must list one entry per coordinate"
                         f" (got {len(exponents)}, --n {args.n})")
    value = sphere.sphere_moment(exponents)
    if args.output == "json":
        print(json.dumps({"exponents": list(exponents), "n": args.n,
                          "value": _value_json(value, False)}))
    elif args.output == "float":
        print(_format_float(float(value)))
    elif args.output == "exact":
        print(str(value))
    else:
        print(f"{value} ({_format_float(float(value))})")
    return 0


# ---------------------------------------------------------------------------
# Monte Carlo

def _cmd_mc(args) -> int:
    try:
        obj = json.loads(args.query)
    except json.JSONDecodeError as e:
        raise UsageError(f"--query is not valid JSON: {e}")
    kind = obj.get("kind", "haar")
    if kind == "sphere":
        exponents = tuple(int(v) for v in obj["exponents"])
        n = int(obj.get("n", len(exponents)))
        if n != len(exponents):
            raise UsageError("sphere query needs one exponent per coordinate")
        cfg = SamplerConfig(n=n, samples=args.samples, seed=args.seed,
                            threads=args.threads)
        est = estimate_sphere_moment(exponents, cfg)
        exact = sphere.sphere_moment(exponents)
    elif kind == "haar":
        q = MomentQuery.from_json_obj(obj)
        cfg = SamplerConfig(n=q.n, samples=args.samples, seed=args.seed,
                            threads=args.threads)
        est = estimate_moment(q, cfg)
        try:
            exact = weingarten.evaluate(q)
        except ValueError:
            exact = None
    else:
        raise UsageError(f"unknown query kind {kind!r}")

    doc = {
        "mean_re": est.mean.real,
        "mean_im": est.mean.imag,
        "stderr": est.stderr,
        "samples": est.samples,
        "exact": None if exact is None else str(exact),
        "sigmas": None,
    }
    ok = True
    if exact is not None:
        dev = abs(est.mean - complex(float(exact), 0.0))
        doc["sigmas"] = dev / est.stderr if est.stderr > 0 else 0.0
        ok = dev < mc_tolerance(est)
    print(json.dumps(doc))
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# verify

def _cmd_verify(args) -> int:
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    passed = 0
    failed = 0
    for name in names:
        results = suites.run_suite(name, samples=args.samples,
                                   seed=args.seed, threads=args.threads)
        for r in results:
            if r.ok:
                passed += 1
                print(f"PASS {name}:{r.name}")
            else:
                failed += 1
                detail = f" ({r.detail})" if r.detail else ""
                print(f"FAIL {name}:{r.name}{detail}")
    total = passed + failed
    print(f"{passed}/{total} checks passed")
    return 0 if failed == 0 else 1


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="haarmoments",
        description="Exact monomial moments of Haar-random unitary matrices "
                    "and hypersphere coordinates.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p, default="auto"):
        p.add_argument("--output", choices=("auto", "exact", "symbolic",
                                            "float", "json"), default=default)

    p = sub.add_parser("moment", help="exact moment of a conjugate/plain "
                                      "entry product")
    p.add_argument("--n", type=int, default=None,
                   help="matrix dimension (default: largest index used)")
    p.add_argument("--I", default="", help="rows of conjugated entries")
    p.add_argument("--J", default="", help="columns of conjugated entries")
    p.add_argument("--K", default="", help="rows of plain entries")
    p.add_argument("--L", default="", help="columns of plain entries")
    p.add_argument("--method", choices=("auto", "group", "invariant"),
                   default="auto")
    p.add_argument("--symbolic", action="store_true",
                   help="return a rational function of n")
    p.add_argument("--batch", default=None, metavar="FILE",
                   help="JSONL file of queries ('-' for stdin), "
                        "one result line each")
    add_output(p)
    p.set_defaults(fn=_cmd_moment)

    p = sub.add_parser("wg", help="class integral by cycle type")
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--class", required=True, metavar="CYCLES",
                   help="cycle type, e.g. 2,1")
    p.add_argument("--n", type=int, default=None)
    add_output(p)
    p.set_defaults(fn=_cmd_wg)

    p = sub.add_parser("fan", help="single-column closed form")
    p.add_argument("--m", required=True, help="multiplicities, e.g. 2,1,1")
    p.add_argument("--n", type=int, default=None)
    add_output(p)
    p.set_defaults(fn=_cmd_fan)

    p = sub.add_parser("zint", help="two-column closed form")
    p.add_argument("--m", required=True, help="three multiplicities, e.g. 1,0,1")
    p.add_argument("--n", type=int, default=None)
    add_output(p)
    p.set_defaults(fn=_cmd_zint)

    p = sub.add_parser("xint", help="exchange-family integral")
    p.add_argument("--w", required=True,
                   help="eight weights r,s,t,u,r',s',t',u'")
    p.add_argument("--n", type=int, default=None)
    add_output(p)
    p.set_defaults(fn=_cmd_xint)

    p = sub.add_parser("sphere", help="hypersphere monomial moment")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--exponents", required=True, help="e.g. 2,4,0,0,0")
    add_output(p)
    p.set_defaults(fn=_cmd_sphere)

    p = sub.add_parser("mc", help="Monte Carlo estimate of a query")
    p.add_argument("--query", required=True, help="query as JSON")
    p.add_argument("--samples", type=int, default=200000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(fn=_cmd_mc)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", default="all",
                   choices=tuple(suites.SUITES) + ("all",))
    p.add_argument("--samples", type=int, default=200000)
    p.add_argument("--seed", type=int, default=suites.DEFAULT_SEED)
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
