"""Command-line front end.

Exit codes: 0 when a witness or value is produced, 1 when it is absent or a
check is refuted, 2 when the budget runs out or the input is invalid.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import bounds as B
from . import extractor as X
from . import oracle as O
from . import recheck, verifier
from .blocks import FuncBlockSeq, SetBlockSeq, SpanMode, span
from .core import FiniteFunction
from .gtypes import enumerate_types, type_count_bound

OK, ABSENT, FAIL = 0, 1, 2


class InputError(ValueError):
    pass


def _emit(args, payload, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _budget(args) -> int | None:
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get("GOWERS_LAB_BUDGET")
    return int(env) if env else None


def _value_json(v):
    return v.to_json() if isinstance(v, B.Expr) else v


def _value_text(v) -> str:
    return str(v) if isinstance(v, B.Expr) else B._fmt(v)


# ---------------------------------------------------------------------------
# bounds

def _mt_strategy(args) -> B.MTStrategy:
    if args.mt == "symbolic":
        return B.Symbolic()
    if args.mt == "exact-tiny":
        return B.ExactTiny(floor=args.floor)
    if not args.mt_table:
        raise InputError("--mt table needs --mt-table FILE")
    with open(args.mt_table) as fh:
        rows = json.load(fh)
    return B.Table({(int(r["d"]), int(r["m"]), int(r["r"])): int(r["value"]) for r in rows})


def cmd_bounds(args) -> int:
    fn = args.fn
    guard = args.guard
    if fn == "E":
        extra = (args.m,) if args.q == 0 else ()
        if args.n is None or (args.q == 0 and args.m is None):
            raise InputError("E needs --n (and --m for q=0)")
        try:
            v = B.grzegorczyk_E(args.q, args.n, *extra, guard=guard)
        except B.TooLarge as exc:
            _emit(args, {"fn": fn, "too_large": True}, f"too large: {exc}")
            return OK
    elif fn == "alpha":
        v = B.alpha(args.k, args.m)
    elif fn == "beta":
        v = B.beta(args.k, args.m)
    elif fn == "gamma":
        v = B.gamma(args.k, args.d, args.m)
    else:
        mt = _mt_strategy(args)
        if fn == "G":
            v = B.bound_G(args.k, args.m, args.r, mt, guard)
        elif fn == "G_PM":
            v = B.bound_G_pm(args.k, args.m, args.r, mt, guard)
        elif fn == "MG":
            v = B.bound_MG(args.k, args.d, args.m, args.r, mt, guard)
        elif fn == "MG_PM":
            v = B.bound_MG_pm(args.k, args.d, args.m, args.r, mt, guard)
        elif fn == "h":
            v = B.h_fn(args.d, args.ell, args.r, args.k, args.x, mt, guard)
        else:
            raise InputError(f"unknown bound function {fn}")
    _emit(args, {"fn": fn, "value": _value_json(v), "ground": B.is_ground(v)}, _value_text(v))
    return OK


# ---------------------------------------------------------------------------
# exact

def _query(args) -> verifier.ExactQuery:
    return verifier.ExactQuery(args.kind, k=args.k, d=args.d, m=args.m, r=args.r, n_max=args.n_max)


def cmd_exact(args) -> int:
    q = _query(args)
    try:
        v = verifier.exact_number(q, budget=_budget(args) or 0, backend=args.backend, jobs=args.jobs)
    except verifier.BudgetExceeded as exc:
        _emit(args, {"query": q.key, "status": "budget"}, f"budget exceeded: {exc}")
        return FAIL
    if v is None:
        _emit(args, {"query": q.key, "status": "absent", "n_max": q.n_max}, f"none up to n={q.n_max}")
        return ABSENT
    if args.record:
        verifier.record_regression(q, v)
    _emit(args, {"query": q.key, "status": "found", "value": v}, str(v))
    return OK


# ---------------------------------------------------------------------------
# extract / verify --witness

EXTRACT_OPS = ("mt", "canon", "insensitive", "positive", "direct", "signed", "multidim", "multidim-signed")


def _domain_for(op: str, n: int, k: int, d: int) -> O.Domain:
    if op == "mt":
        return O.Domain(O.SETS, n, 1, d)
    if op in ("signed",):
        return O.Domain(O.X_PM, n, k)
    if op == "multidim":
        return O.Domain(O.BLOCK, n, k, d)
    if op == "multidim-signed":
        return O.Domain(O.BLOCK_PM, n, k, d)
    return O.Domain(O.X, n, k)


def _oracle(spec: dict, domain: O.Domain) -> O.ColoringOracle:
    if "file" in spec:
        c = O.load(spec["file"])
        c.require(domain)
        return c
    return O.builtin(spec["name"], domain, spec["r"], seed=spec.get("seed", 0))


def _oracle_spec(args) -> dict:
    if args.oracle_file:
        return {"file": os.path.abspath(args.oracle_file)}
    if not args.oracle:
        raise InputError("give --oracle NAME or --oracle-file FILE")
    return {"name": args.oracle, "r": args.r, "seed": args.seed}


def _run_extract(op, n, k, d, m, c, budget):
    if op == "mt":
        return X.mt_search(SetBlockSeq.singletons(n), d, m, c, budget)
    if op == "canon":
        return X.canonize_types(n, k, m, c, budget)
    if op == "insensitive":
        return X.make_insensitive(n, k, m, c, budget)
    if op == "positive":
        return X.extract_positive(n, k, m, c, budget)
    if op == "direct":
        return X.direct_search_positive(n, k, m, c, budget)
    if op == "signed":
        return X.extract_signed(n, k, m, c, budget)
    if op == "multidim":
        return X.extract_multidim_positive(n, k, d, m, c, budget)
    return X.extract_multidim_signed(n, k, d, m, c, budget)


def cmd_extract(args) -> int:
    op = args.op
    d = args.d if op in ("mt", "multidim", "multidim-signed") else 1
    spec = _oracle_spec(args)
    try:
        c = _oracle(spec, _domain_for(op, args.n, args.k, d))
    except O.DomainMismatch as exc:
        raise InputError(str(exc)) from None
    rep = _run_extract(op, args.n, args.k, d, args.m, c, _budget(args))
    doc = {"op": op, "params": {"n": args.n, "k": args.k, "d": d, "m": args.m},
           "oracle": spec, "report": rep.to_json()}
    if args.out and rep.found:
        with open(args.out, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    text = f"{rep.status.value}"
    if rep.found:
        text += f" color={rep.color} witness={rep.witness!r}"
        if rep.carrier is not None:
            text += f" carrier={rep.carrier!r}"
    text += f" examined={rep.examined}"
    _emit(args, doc, text)
    return {X.Status.FOUND: OK, X.Status.ABSENT: ABSENT, X.Status.BUDGET: FAIL}[rep.status]


def verify_witness_doc(doc: dict) -> bool:
    """Re-validate a witness file using only the independent checks."""
    op, p = doc["op"], doc["params"]
    n, k, d, m = p["n"], p["k"], p["d"], p["m"]
    rep = doc["report"]
    if rep["status"] != "found":
        return False
    c = _oracle(doc["oracle"], _domain_for(op, n, k, d))
    w, color = rep["witness"], rep["color"]
    if op in ("mt", "canon"):
        s = SetBlockSeq.from_json(w)
        if op == "mt":
            return recheck.check_mt(s, SetBlockSeq.singletons(n), d, m, c)
        return len(s) == m and recheck.check_canonical(s, c, k)
    F = FuncBlockSeq.from_json(w)
    if op == "insensitive":
        return recheck.check_insensitive(F, c, k, m)
    if op in ("positive", "direct"):
        return recheck.check_positive(F, c, k, m) and c(F[0]) == color
    if op == "multidim":
        return recheck.check_multidim_positive(F, c, k, d, m) and c(tuple(F.funcs[:d])) == color
    s = SetBlockSeq.from_json(rep["carrier"])
    if op == "signed":
        return recheck.check_signed(F, s, c, k, m, color)
    return recheck.check_multidim_signed(F, s, c, k, d, m, color)


def cmd_verify(args) -> int:
    if args.witness:
        try:
            with open(args.witness) as fh:
                doc = json.load(fh)
            ok = verify_witness_doc(doc)
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise InputError(f"malformed witness file: {exc}") from None
        _emit(args, {"witness": args.witness, "valid": ok}, "true" if ok else "false")
        return OK if ok else ABSENT
    if args.no_ramsey_degree:
        if args.K is None or args.n is None:
            raise InputError("--no-ramsey-degree needs --K and --n")
        ok = verifier.verify_no_ramsey_degree(args.n, args.K)
        _emit(args, {"n": args.n, "K": args.K, "holds": ok}, "true" if ok else "false")
        return OK if ok else ABSENT
    if args.kind:
        if args.n is None:
            raise InputError("--kind needs --n")
        q = verifier.ExactQuery(args.kind, k=args.k, d=args.d, m=args.m, r=args.r)
        try:
            ok = verifier.holds_at(q, args.n, _budget(args) or 0, args.backend, args.jobs)
        except verifier.BudgetExceeded as exc:
            _emit(args, {"query": q.key, "status": "budget"}, f"budget exceeded: {exc}")
            return FAIL
        _emit(args, {"query": q.key, "n": args.n, "holds": ok}, "true" if ok else "false")
        return OK if ok else ABSENT
    raise InputError("verify needs --witness, --no-ramsey-degree or --kind")


# ---------------------------------------------------------------------------
# types / span

def cmd_types(args) -> int:
    ts = enumerate_types(args.k, args.d, args.signed)
    bound = type_count_bound(args.k, args.d, args.signed)
    payload = {"k": args.k, "d": args.d, "signed": args.signed, "count": len(ts), "bound": bound,
               "types": [list(t.word) for t in ts]}
    lines = [f"count={len(ts)} bound={bound}"]
    if not args.count:
        lines += [",".join(map(str, t.word)) for t in ts]
    _emit(args, payload, "\n".join(lines))
    return OK


def _parse_funcs(text: str, k: int, signed: bool) -> list[FiniteFunction]:
    try:
        return [FiniteFunction(tuple(int(v) for v in part.split(",")), k, signed)
                for part in text.split(";")]
    except ValueError as exc:
        raise InputError(f"bad function list {text!r}: {exc}") from None


def cmd_span(args) -> int:
    signed = any("-" in part for part in args.funcs.split(";"))
    funcs = _parse_funcs(args.funcs, args.k, signed)
    mode = SpanMode[args.mode.upper()]
    elems = span(funcs, mode, args.k)
    _emit(args, {"mode": mode.name, "count": len(elems), "elements": [list(f.values) for f in elems]},
          "\n".join([f"count={len(elems)}"] + [f.encode() for f in elems]))
    return OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gowers-lab", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, *names):
        for name in names:
            sp.add_argument(f"--{name}", type=int, default=None if name in ("n", "x", "ell") else 1)

    def fmt(sp):
        sp.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)

    b = sub.add_parser("bounds", help="evaluate a bound function")
    fmt(b)
    b.add_argument("--fn", required=True, choices=("E", "alpha", "beta", "gamma", "G", "G_PM", "MG", "MG_PM", "h"))
    b.add_argument("--q", type=int, default=1)
    common(b, "n", "k", "d", "r", "ell", "x")
    b.add_argument("--m", type=int, default=None)
    b.add_argument("--mt", choices=("symbolic", "exact-tiny", "table"), default="symbolic")
    b.add_argument("--mt-table")
    b.add_argument("--floor", action="store_true", help="replace unresolved MT leaves by the lower bound m")
    b.add_argument("--guard", type=int, default=B.DEFAULT_DIGIT_GUARD)
    b.set_defaults(func=cmd_bounds)

    e = sub.add_parser("exact", help="least n at which every coloring admits a witness")
    fmt(e)
    e.add_argument("--kind", required=True, choices=verifier.KINDS)
    common(e, "k", "d", "m", "r")
    e.add_argument("--n-max", type=int, default=8)
    e.add_argument("--budget", type=int)
    e.add_argument("--jobs", type=int, default=1)
    e.add_argument("--backend", choices=("compiled", "python"))
    e.add_argument("--record", action="store_true", help="store the value in the regression file")
    e.set_defaults(func=cmd_exact)

    x = sub.add_parser("extract", help="run an extraction pipeline")
    fmt(x)
    x.add_argument("--op", required=True, choices=EXTRACT_OPS)
    common(x, "n", "k", "d", "m", "r")
    x.add_argument("--oracle", choices=sorted(O.BUILTINS))
    x.add_argument("--oracle-file")
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--budget", type=int)
    x.add_argument("--out", help="write the witness file here on success")
    x.set_defaults(func=cmd_extract)

    v = sub.add_parser("verify", help="check a witness file or a statement")
    fmt(v)
    v.add_argument("--witness")
    v.add_argument("--no-ramsey-degree", action="store_true")
    v.add_argument("--K", type=int)
    v.add_argument("--kind", choices=verifier.KINDS)
    common(v, "n", "k", "d", "m", "r")
    v.add_argument("--budget", type=int)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--backend", choices=("compiled", "python"))
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("types", help="enumerate types of a given length")
    fmt(t)
    common(t, "k", "d")
    t.add_argument("--signed", action="store_true")
    t.add_argument("--count", action="store_true", help="print only the count")
    t.set_defaults(func=cmd_types)

    s = sub.add_parser("span", help="enumerate a span")
    fmt(s)
    s.add_argument("--funcs", required=True, help='block sequence, e.g. "2,0;0,2"')
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--mode", default="pos_strict", choices=[m.name.lower() for m in SpanMode])
    s.set_defaults(func=cmd_span)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError, IndexError, O.DomainMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
