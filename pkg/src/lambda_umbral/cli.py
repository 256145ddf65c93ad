"""Command-line front end.

    lambda-umbral table  --family poly-bernoulli -k 2 --n-max 3 --format latex
    lambda-umbral table  --stirling second --n-max 5 --format csv
    lambda-umbral verify --id all --n-max 8 -k -2..3 -r 1..3 -s 1..3
    lambda-umbral eval   --family derangement -r 1 -n 4 --lambda 0 --x 0
    lambda-umbral basis  --from poly-bernoulli:k=2 --to derangement:r=2 --n 4

Exit status: 0 on success or verification pass, 1 on verification
failure, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .degen import stirling_lambda
from .exact import format_rat, lpoly_to_json, parse_rat, xpoly_to_json
from .families import FamilySpec, family_member, family_pair, falling_pair
from .identities import IDENTITY_IDS, aggregate_status, eq35_adjudication, verify_all
from .umbral import connection_coefficients

FAMILY_ALIASES = {
    "poly-bernoulli": "poly_bernoulli",
    "bernoulli": "bernoulli_order",
    "derangement": "derangement_order",
}
LATEX_SYMBOL = {
    "poly_bernoulli": r"B_{%d,\lambda}^{(%d)}(x)",
    "bernoulli_order": r"\beta_{%d,\lambda}^{(%d)}(x)",
    "derangement_order": r"d_{%d,\lambda}^{(%d)}(x)",
}
_VALUE_FLAGS = {"-k", "-r", "-s", "-n", "--lambda", "--x", "--n-max", "--n"}


class UsageError(Exception):
    pass


def _rat(text: str) -> Fraction:
    try:
        return parse_rat(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_range(text: str) -> tuple:
    """``a..b``, ``a,b,c`` or a single integer."""
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    try:
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if lo > hi:
                raise ValueError
            return tuple(range(lo, hi + 1))
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed range {text!r}; expected a..b or a,b,c") from None


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lambda-umbral", description="Degenerate poly-Bernoulli toolkit over Q[lambda][x].")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    table = sub.add_parser("table", help="tabulate a polynomial family or a Stirling table")
    src = table.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", choices=sorted(FAMILY_ALIASES))
    src.add_argument("--stirling", choices=["first", "second"])
    table.add_argument("-k", type=int, default=1, help="poly-Bernoulli index k")
    table.add_argument("-r", type=int, default=1, help="order r")
    table.add_argument("--n-max", type=_nonneg, required=True)
    table.add_argument("--lambda", dest="lam", type=_rat)
    table.add_argument("--x", type=_rat)
    table.add_argument("--format", choices=["json", "csv", "latex", "text"], default="text")

    ver = sub.add_parser("verify", help="verify identities exactly")
    ver.add_argument("--id", dest="ident", required=True,
                     help="identity id, 'eq35' for the adjudication trio, or 'all'")
    ver.add_argument("--n-max", type=_nonneg, default=10)
    ver.add_argument("-k", type=_int_range, default=tuple(range(-2, 4)))
    ver.add_argument("-r", type=_int_range, default=(1, 2, 3))
    ver.add_argument("-s", type=_int_range, default=(1, 2, 3))
    ver.add_argument("--format", choices=["json", "text"], default="text")

    ev = sub.add_parser("eval", help="evaluate one family member at rational lambda (and x)")
    ev.add_argument("--family", choices=sorted(FAMILY_ALIASES), required=True)
    ev.add_argument("-k", type=int, default=1)
    ev.add_argument("-r", type=int, default=1)
    ev.add_argument("-n", type=_nonneg, required=True)
    ev.add_argument("--lambda", dest="lam", type=_rat, required=True)
    ev.add_argument("--x", type=_rat)
    ev.add_argument("--format", choices=["json", "text"], default="text")

    bas = sub.add_parser("basis", help="connection coefficients between two lambda-Sheffer sequences")
    bas.add_argument("--from", dest="source", required=True, help="e.g. poly-bernoulli:k=2")
    bas.add_argument("--to", dest="target", required=True, help="e.g. derangement:r=2")
    bas.add_argument("--n", type=_nonneg, required=True)
    bas.add_argument("--format", choices=["json", "latex", "text"], default="json")
    return parser


def _spec(family: str, k: int, r: int) -> FamilySpec:
    fam = FAMILY_ALIASES[family]
    if fam != "poly_bernoulli" and r < 1:
        raise UsageError("-r: order must be a positive integer")
    return FamilySpec(fam, k if fam == "poly_bernoulli" else r)


def _parse_pair_spec(text: str):
    """``falling`` or ``<family>[:k=..|r=..]``."""
    name, _, rest = text.partition(":")
    if name == "falling" and not rest:
        return None
    if name not in FAMILY_ALIASES:
        raise UsageError(f"unknown family {name!r} in {text!r}")
    params = {"k": 1, "r": 1}
    for item in filter(None, rest.split(",")):
        key, eq, val = item.partition("=")
        if not eq or key not in params or not re.fullmatch(r"-?\d+", val):
            raise UsageError(f"malformed family parameter {item!r} in {text!r}")
        params[key] = int(val)
    return _spec(name, params["k"], params["r"])


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cmd_table(args) -> str:
    if args.stirling:
        tab = stirling_lambda(args.stirling, args.n_max)
        rows = [[tab(n, k) for k in range(n + 1)] for n in range(args.n_max + 1)]
        if args.lam is not None:
            rows = [[format_rat(c(args.lam)) for c in row] for row in rows]
        if args.format == "json":
            body = rows if args.lam is not None else [[lpoly_to_json(c) for c in row] for row in rows]
            return _dump({"kind": args.stirling, "n_max": args.n_max, "rows": body})
        if args.format == "csv":
            lines = ["n," + ",".join(str(k) for k in range(args.n_max + 1))]
            for n, row in enumerate(rows):
                cells = [c if isinstance(c, str) else str(c) for c in row]
                cells += [""] * (args.n_max - n)
                lines.append(",".join([str(n)] + [_csv_cell(c) for c in cells]))
            return "\n".join(lines) + "\n"
        if args.format == "latex":
            raise UsageError("--format latex is not available for Stirling tables")
        return "".join(f"{n}: " + ", ".join(c if isinstance(c, str) else str(c) for c in row) + "\n"
                       for n, row in enumerate(rows))

    spec = _spec(args.family, args.k, args.r)
    if args.x is not None and args.lam is None:
        raise UsageError("--x requires --lambda")
    members = [family_member(spec, n) for n in range(args.n_max + 1)]
    if args.lam is not None:
        members = [p.eval_lambda(args.lam) for p in members]
    numeric = args.x is not None
    if numeric:
        values = [format_rat(p.eval_x(args.x).constant()) for p in members]
    if args.format == "json":
        rows = [{"n": n, "value": values[n] if numeric else xpoly_to_json(p)} for n, p in enumerate(members)]
        head = {"family": spec.family, "param": spec.param}
        if args.lam is not None:
            head["lambda"] = format_rat(args.lam)
        if numeric:
            head["x"] = format_rat(args.x)
        head["rows"] = rows
        return _dump(head)
    if args.format == "csv":
        cells = values if numeric else [str(p) for p in members]
        return "n,value\n" + "".join(f"{n},{_csv_cell(c)}\n" for n, c in enumerate(cells))
    if args.format == "latex":
        sym = LATEX_SYMBOL[spec.family]
        if numeric:
            return "".join(f"{sym % (n, spec.param)} = {v}\n" for n, v in enumerate(values))
        return "".join(f"{sym % (n, spec.param)} = {p.latex()}\n" for n, p in enumerate(members))
    cells = values if numeric else [str(p) for p in members]
    return "".join(f"{n}: {c}\n" for n, c in enumerate(cells))


def _csv_cell(text: str) -> str:
    if any(ch in text for ch in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text


def _cmd_verify(args):
    if args.ident == "all":
        ids = IDENTITY_IDS
    elif args.ident == "eq35":
        ids = ("eq35_corrected", "eq35_variant_a", "eq35_variant_b")
    elif args.ident in IDENTITY_IDS:
        ids = (args.ident,)
    else:
        raise UsageError(f"--id: unknown identity {args.ident!r}; choose from all, eq35, {', '.join(IDENTITY_IDS)}")
    if any(r < 1 for r in args.r) or any(s < 1 for s in args.s):
        raise UsageError("-r/-s: orders must be positive integers")
    reports = verify_all(args.n_max, args.k, args.r, args.s, ids=ids)
    ok = aggregate_status(reports)
    has_pair = any(r.identity_id.startswith("eq35_variant") for r in reports)
    if args.format == "json":
        doc = {"aggregate": "pass" if ok else "fail", "reports": [r.to_json() for r in reports]}
        if has_pair:
            doc["eq35"] = eq35_adjudication(reports)
        return _dump(doc), 0 if ok else 1
    lines = []
    for r in reports:
        line = f"{r.status.upper():4s} {r.identity_id} (checked {r.checked})"
        if r.witnesses:
            params, diff = r.witnesses[0]
            shown = ", ".join(f"{k}={v}" for k, v in params.items())
            line += f"; {len(r.witnesses)} failing, smallest at {shown}: difference {diff}"
        lines.append(line)
    if has_pair:
        adj = eq35_adjudication(reports)
        passing = ", ".join(adj["passing_variants"]) or "none"
        lines.append(f"eq35 adjudication: passing printed variants = {passing}")
        if "corrected_form_holds" in adj:
            lines.append("eq35 adjudication: form with both terms evaluated at x=1 "
                         + ("holds" if adj["corrected_form_holds"] else "fails"))
    lines.append(f"aggregate: {'pass' if ok else 'fail'}")
    return "\n".join(lines) + "\n", 0 if ok else 1


def _cmd_eval(args) -> str:
    spec = _spec(args.family, args.k, args.r)
    p = family_member(spec, args.n).eval_lambda(args.lam)
    if args.x is not None:
        value = format_rat(p.eval_x(args.x).constant())
        if args.format == "json":
            return _dump({"value": value})
        return value + "\n"
    if args.format == "json":
        return _dump({"value": xpoly_to_json(p)})
    return f"{p}\n"


def _cmd_basis(args) -> str:
    src, dst = _parse_pair_spec(args.source), _parse_pair_spec(args.target)
    N = max(args.n, 1)

    def pair(spec):
        return falling_pair(N) if spec is None else family_pair(spec, N)

    rows = connection_coefficients(pair(src), pair(dst), args.n)
    row = rows[args.n]
    if args.format == "json":
        return _dump({"from": args.source, "to": args.target, "n": args.n,
                      "coefficients": [lpoly_to_json(c) for c in row]})
    if args.format == "latex":
        return "".join(f"C_{{{args.n},{k}}} = {c.latex()}\n" for k, c in enumerate(row))
    return "".join(f"C[{args.n},{k}] = {c}\n" for k, c in enumerate(row))


def _normalize_argv(argv: Sequence[str]) -> list:
    """Glue value flags to values that start with '-' (e.g. ``-k -2..3``)."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and re.match(r"^-\d", argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_normalize_argv(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "table":
            text, code = _cmd_table(args), 0
        elif args.command == "verify":
            text, code = _cmd_verify(args)
        elif args.command == "eval":
            text, code = _cmd_eval(args), 0
        else:
            text, code = _cmd_basis(args), 0
    except UsageError as exc:
        print(f"lambda-umbral: error: {exc}", file=sys.stderr)
        return 2
    out.write(text)
    return code


def main() -> None:
    raise SystemExit(run())
