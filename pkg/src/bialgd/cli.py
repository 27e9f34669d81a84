"""``bialgd`` command line.

Exit codes: 0 pass, 1 a property fails, 2 invalid input, 3 inconclusive.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .bimodules import compute_S, compute_T, tensor_square
from .depth_two import left_quasibase, right_quasibase, verify_quasibase
from .errors import NotD2
from .inputs import INVALID, SCAN_ORDER_CAP, InputError, load, order_cap
from .report import analyze, parse_checks, scan, scan_text, s, to_json, to_text

EXIT_PASS, EXIT_FAIL, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def _emit(text, out_path=None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path, cap=None):
    try:
        return load(path, cap)
    except OSError as exc:
        raise InputError(str(path), exc.strerror or str(exc)) from None


def cmd_validate(args) -> int:
    doc = _load(args.file)
    ext = doc.ext
    print(f"ok: dim A = {ext.n}, dim B = {ext.m}, field = {ext.field!r}")
    return EXIT_PASS


def cmd_analyze(args) -> int:
    try:
        checks = parse_checks(args.checks)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    doc = _load(args.file)
    report, code = analyze(doc.ext, checks, seed=args.seed)
    _emit(to_json(report) if args.format == "json" else to_text(report), args.out)
    return code


def cmd_subgroup_scan(args) -> int:
    cap = order_cap(SCAN_ORDER_CAP)
    doc = _load(args.file, cap)
    if doc.group is None:
        raise InputError("group", "subgroup-scan needs a group input")
    report, code = scan(doc.group, doc.degree, doc.field, seed=args.seed)
    _emit(to_json(report) if args.format == "json" else scan_text(report), args.out)
    return code


def _fmt_quasibase(ext, T, qb):
    f = ext.field
    names = ext.A.basis_names
    pairs = []
    for M, t in qb.pairs:
        lift = T.lift(t)
        n = ext.n
        tensor = {f"{names[i // n]} (x) {names[i % n]}": f.format(c) for i, c in sorted(lift.items())}
        pairs.append({"endomorphism": [[f.format(x) for x in row] for row in M.rows()], "tensor": tensor})
    return {"side": qb.side, "length": s(len(qb)), "pairs": pairs}


def cmd_quasibase(args) -> int:
    doc = _load(args.file)
    ext = doc.ext
    ts = tensor_square(ext)
    T = compute_T(ext, ts)
    S = compute_S(ext)
    solver = left_quasibase if args.side == "left" else right_quasibase
    try:
        qb = solver(ext, ts, T, S)
    except NotD2 as exc:
        out = {"side": args.side, "verdict": "fail", "note": str(exc)}
        _emit(json.dumps(out, sort_keys=True, indent=2) + "\n" if args.format == "json" else f"{exc}\n", args.out)
        return EXIT_FAIL
    ok, _ = verify_quasibase(ext, ts, T, qb)
    out = _fmt_quasibase(ext, T, qb)
    out["verdict"] = "pass" if ok else "fail"
    if args.format == "json":
        text = json.dumps(out, sort_keys=True, indent=2) + "\n"
    else:
        lines = [f"{args.side} quasibase, {len(qb)} pairs, identity {'holds' if ok else 'FAILS'}"]
        for k, p in enumerate(out["pairs"]):
            lines.append(f"pair {k}:")
            lines.append("  endomorphism: " + "; ".join(" ".join(r) for r in p["endomorphism"]))
            lines.append("  tensor:       " + " + ".join(f"({c}) {b}" for b, c in p["tensor"].items()))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_PASS if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bialgd", description="Depth-two ring extensions, their bialgebroids and Galois maps.")
    p.add_argument("--version", action="version", version=f"bialgd {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="parse and check an input file")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    a = sub.add_parser("analyze", help="run checks on an extension")
    a.add_argument("file")
    a.add_argument("--checks", default="all", help="comma list of d2,frobenius,balanced,galois,axioms,all")
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("subgroup-scan", help="D2 versus normality over all subgroups")
    g.add_argument("file")
    g.add_argument("--format", choices=("text", "json"), default="text")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_subgroup_scan)

    q = sub.add_parser("quasibase", help="print a left or right D2 quasibase")
    q.add_argument("file")
    q.add_argument("--side", choices=("left", "right"), required=True)
    q.add_argument("--format", choices=("text", "json"), default="text")
    q.add_argument("--out")
    q.set_defaults(func=cmd_quasibase)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, 0 on --help / --version
        return int(exc.code or 0)
    try:
        return args.func(args)
    except INVALID as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
