"""Command-line interface: ``cdk <command> ...``.

Exit codes: 0 success, 1 suite violation or failed verification, 2 usage
error (bad arguments, unparsable expression, malformed file).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import Optional, Sequence

from .cdcore import AlgebraError, Element, cd_mul, structure_table
from .exprlang import EvalError, ParseError, Repl, eval_text, format_element, format_value
from .homtool import Monomorphism, VerificationError, classify_type, verify_monomorphism
from .structure import check_iso_to_level, octonion_O, quaternion_H
from .suites import SUITES
from .zdiv import atlas_csv, search_pairs


class UsageError(Exception):
    pass


def _element_arg(text: str, level: int) -> Element:
    try:
        v = eval_text(text, level)
    except (ParseError, EvalError) as exc:
        raise UsageError(str(exc)) from exc
    if isinstance(v, bool):
        raise UsageError(f"{text!r} is not an algebra element")
    return v if isinstance(v, Element) else Element.scalar(v, level)


def cmd_eval(args, out) -> int:
    try:
        value = eval_text(args.expr, args.level)
    except (ParseError, EvalError) as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        payload = value.to_json() if isinstance(value, Element) else format_value(value)
        out.write(json.dumps(payload) + "\n")
    else:
        out.write(format_value(value) + "\n")
    return 0


def cmd_repl(args, out) -> int:
    repl = Repl(args.level)
    stdin = args.stdin or sys.stdin
    interactive = stdin.isatty()
    while not repl.done:
        if interactive:
            out.write(f"A{repl.ctx.level}> ")
            out.flush()
        line = stdin.readline()
        if not line:
            break
        reply = repl.handle(line)
        if reply:
            out.write(reply + "\n")
    return 0


def cmd_table(args, out) -> int:
    t = structure_table(args.level)
    if args.format == "csv":
        out.write(t.to_csv())
    elif args.format == "json":
        out.write(json.dumps(t.to_json()) + "\n")
    else:
        out.write(t.to_grid())
    return 0


def cmd_check(args, out) -> int:
    report = SUITES[args.suite](args.level, args.samples, args.seed)
    if args.format == "json":
        out.write(json.dumps(report.to_json()) + "\n")
    else:
        out.write(report.text())
    return 0 if report.passed else 1


def _parse_coeffs(text: str) -> list:
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"--coeffs must be comma-separated integers, got {text!r}") from exc
    if not any(values):
        raise UsageError("--coeffs needs at least one nonzero integer")
    return values


def cmd_zdiv(args, out) -> int:
    coeffs = _parse_coeffs(args.coeffs)
    try:
        pairs = search_pairs(args.level, args.support, coeffs, right=args.right)
    except AlgebraError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "csv":
        out.write(atlas_csv(pairs))
    elif args.format == "text":
        side = "y*x" if args.right else "x*y"
        for p in pairs:
            out.write(f"x={format_element(p.x)}  y={format_element(p.y)}  {side}=0  "
                      f"ann_dim={p.ann_dim}\n")
        out.write(f"{len(pairs)} pairs\n")
    else:
        for p in pairs:
            out.write(json.dumps(p.to_json()) + "\n")
    return 0


def _load_map(path: str) -> tuple:
    try:
        with open(path) as fh:
            data = json.load(fh)
        return Monomorphism.columns_from_json(data)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read monomorphism file {path!r}: {exc}") from exc


def cmd_mono(args, out) -> int:
    m, n, cols = _load_map(args.file)
    try:
        phi = verify_monomorphism(cols, m, n)
    except VerificationError as exc:
        report = {"verified": False, "reason": exc.reason,
                  "pair": list(exc.pair) if exc.pair else None}
        out.write(json.dumps(report) + "\n")
        return 1
    except AlgebraError as exc:
        raise UsageError(str(exc)) from exc
    if args.action == "verify":
        out.write(json.dumps({"verified": True, "m": m, "n": n}) + "\n")
    else:
        out.write(json.dumps(classify_type(phi).to_json()) + "\n")
    return 0


def cmd_sub(args, out) -> int:
    n = args.level
    try:
        if args.kind == "H":
            if args.a is None:
                raise UsageError("sub H needs --a")
            sub = quaternion_H(_element_arg(args.a, n))
            m = 2
        else:
            if None in (args.a, args.b, args.c):
                raise UsageError("sub O needs --a, --b and --c")
            sub = octonion_O(*(_element_arg(t, n) for t in (args.a, args.b, args.c)))
            m = 3
    except AlgebraError as exc:
        out.write(f"error: {exc}\n")
        return 1
    iso = check_iso_to_level(sub, m)
    if args.format == "json":
        payload = sub.to_json()
        payload["iso_to_level"] = {"m": m, "result": iso}
        out.write(json.dumps(payload) + "\n")
    else:
        for label, b in zip(sub.labels, sub.basis):
            out.write(f"{label:>6} = {format_element(b)}\n")
        out.write(f"closed: {str(sub.closed).lower()}\n")
        out.write(f"isomorphic to A_{m} table: {str(iso).lower()}\n")
    return 0 if iso else 1


def cmd_bench(args, out) -> int:
    n, iters = args.level, args.iters
    rng = random.Random(args.seed)
    size = 1 << n
    work = [(rng.randrange(size), rng.randrange(size)) for _ in range(iters)]
    basis = [Element.basis(i, n) for i in range(size)]

    t0 = time.perf_counter()
    table = structure_table(n)
    build = time.perf_counter() - t0

    t0 = time.perf_counter()
    rec = [cd_mul(basis[i], basis[j]) for i, j in work]
    t_rec = time.perf_counter() - t0

    t0 = time.perf_counter()
    tab = [table.product(i, j) for i, j in work]
    t_tab = time.perf_counter() - t0

    for (i, j), r, (s, k) in zip(work, rec, tab):
        if r != Element.basis(k, n, s):
            out.write(f"MISMATCH at e{i}*e{j}\n")
            return 1
    speedup = t_rec / t_tab if t_tab > 0 else float("inf")
    out.write(f"bench mul level={n} iters={iters} seed={args.seed}\n")
    out.write(f"results identical: true\n")
    out.write(f"table build: {build:.6f} s\n")
    out.write(f"recursive cd_mul: {t_rec:.6f} s\n")
    out.write(f"table lookup: {t_tab:.6f} s\n")
    out.write(f"speedup: {speedup:.1f}x\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cdk", description="Exact Cayley-Dickson algebra toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def level(sp, default=None):
        sp.add_argument("-n", "--level", type=int, required=default is None, default=default)

    sp = sub.add_parser("eval", help="evaluate one expression")
    level(sp)
    sp.add_argument("expr")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("repl", help="interactive evaluation loop")
    level(sp, 3)
    sp.set_defaults(func=cmd_repl, stdin=None)

    sp = sub.add_parser("table", help="print the structure table")
    level(sp)
    sp.add_argument("--format", choices=("grid", "csv", "json"), default="grid")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("check", help="run a property suite")
    sp.add_argument("suite", choices=sorted(SUITES))
    level(sp)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("zdiv", help="zero-divisor tools")
    zsub = sp.add_subparsers(dest="zcommand", required=True)
    zs = zsub.add_parser("search", help="search sparse zero-divisor pairs")
    level(zs)
    zs.add_argument("--support", type=int, default=2)
    zs.add_argument("--coeffs", default="-1,1")
    zs.add_argument("--right", action="store_true", help="search y*x = 0 instead of x*y = 0")
    zs.add_argument("--format", choices=("json", "csv", "text"), default="json")
    zs.set_defaults(func=cmd_zdiv)

    sp = sub.add_parser("mono", help="verify or classify a monomorphism file")
    sp.add_argument("action", choices=("verify", "classify"))
    sp.add_argument("--file", required=True)
    sp.set_defaults(func=cmd_mono)

    sp = sub.add_parser("sub", help="build H_a or O(a;b;c) and check its table")
    sp.add_argument("kind", choices=("H", "O"))
    level(sp)
    sp.add_argument("--a")
    sp.add_argument("--b")
    sp.add_argument("--c")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_sub)

    sp = sub.add_parser("bench", help="recursive product vs structure table")
    sp.add_argument("what", choices=("mul",))
    level(sp)
    sp.add_argument("--iters", type=int, default=2000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_bench)
    return p


def _join_option_values(argv: Sequence[str]) -> list:
    # "--coeffs -1,1" would otherwise be read as an unknown option
    argv = list(argv)
    out = []
    i = 0
    while i < len(argv):
        if argv[i] in ("--coeffs", "--a", "--b", "--c") and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parser.parse_args(_join_option_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, AlgebraError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def run() -> None:
    try:
        code = main()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        sys.stderr.close()
        code = 0
    sys.exit(code)
