"""Command-line front end: verify, zero-modes, chain, coeffs, eval."""

from __future__ import annotations

import argparse
import ast
import json
import sys
from fractions import Fraction

from .algebra import ALPHA, AlphaRat, arat_str
from .functions import statesum_str

SCHEMA = "xladder/1"
EXIT_USAGE = 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# parsing helpers


def parse_weight(text: str) -> AlphaRat:
    """Exact weight from an expression in a/alpha, e.g. "1+alpha", "-alpha-1", "a/2-3"."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError:
        raise UsageError(f"cannot parse weight {text!r}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return AlphaRat.const(node.value)
        if isinstance(node, ast.Name) and node.id in ("a", "alpha"):
            return ALPHA
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Add, ast.Sub, ast.Mult, ast.Div)):
            u, v = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return u + v
            if isinstance(node.op, ast.Sub):
                return u - v
            if isinstance(node.op, ast.Mult):
                return u * v
            return u / v
        raise UsageError(f"cannot parse weight {text!r}")

    return ev(tree)


def parse_label(text: str) -> tuple[str, AlphaRat]:
    """("psi" | "tilde" | "hat", weight) from "tilde(1+alpha)", "psi(a-1)" or a bare weight."""
    t = text.strip()
    for kind in ("psi", "tilde", "hat"):
        if t.startswith(kind + "(") and t.endswith(")"):
            return kind, parse_weight(t[len(kind) + 1 : -1])
    return "psi", parse_weight(t)


def parse_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(text)]
    except ValueError:
        raise UsageError(f"bad n-range {text!r}") from None
    if not out or min(out) < 0:
        raise UsageError(f"n-range {text!r} must be nonempty and non-negative")
    return out


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def _types(value: str) -> list[str]:
    from .checks import TYPES

    if value.lower() == "all":
        return list(TYPES)
    from .model import SeedType

    try:
        return [SeedType.parse(value).value]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _one_type(value: str):
    from .model import SeedType

    try:
        return SeedType.parse(value)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify(args, out) -> int:
    from .checks import SUITES, run

    types = _types(args.type)
    suites = list(SUITES) if not args.suite or "all" in args.suite else args.suite
    for s in suites:
        if s not in SUITES:
            raise UsageError(f"unknown suite {s!r}; expected one of {', '.join(SUITES)}")
    items = run(types, suites)
    counts = {"pass": 0, "fail": 0, "printed-mismatch": 0}
    for it in items:
        counts[it.status] += 1
    out.write(_dump({"schema": SCHEMA, "types": types, "suites": suites, "summary": counts,
                     "items": [it.as_dict() for it in items]}))
    return 1 if counts["fail"] else 0


def _mode_dict(z, index, which) -> dict:
    d = {
        "index": index,
        "operator": "B" if which == "lowering" else "Bdag",
        "label": z.label,
        "weight": arat_str(z.weight),
        "stage": z.stage,
        "class": "generalized" if z.is_generalized else "eigenstate",
        "state": statesum_str(z.state),
    }
    if z.is_generalized:
        comp, c = z.companion
        d["companion"] = {"label": comp.label, "coeff": arat_str(c)}
    return d


def cmd_zero_modes(args, out) -> int:
    from .spectra import coincidences, zero_modes

    J = _one_type(args.type)
    data = {"schema": SCHEMA, "type": J.value}
    for which in ("lowering", "raising"):
        data[which] = [_mode_dict(z, i, which) for i, z in enumerate(zero_modes(J, which))]
    data["coincidences"] = [
        {"raising": data["raising"][i]["label"], "lowering": data["lowering"][j]["label"], "ratio": arat_str(c)}
        for i, j, c in coincidences(J)
    ]
    if args.format == "json":
        out.write(_dump(data))
        return 0
    out.write(f"type {J.value}\n")
    for which in ("lowering", "raising"):
        out.write(f"{which} zero modes ({len(data[which])}):\n")
        for d in data[which]:
            extra = f"  companion {d['companion']['label']} x ({d['companion']['coeff']})" if "companion" in d else ""
            out.write(f"  [{d['index']}] {d['label']}  weight {d['weight']}  {d['class']}  stage {d['stage']}{extra}\n")
            out.write(f"      {d['state']}\n")
    out.write("coincidences:\n")
    for c in data["coincidences"]:
        out.write(f"  raising {c['raising']} = ({c['ratio']}) * lowering {c['lowering']}\n")
    return 0


def _roster_listing(J) -> str:
    from .fixtures import fixture
    from .spectra import weight_label

    fx = fixture(J)
    labels = [f"{'tilde' if t else 'psi'}({weight_label(w)}) {d}" for w, d, t in fx.roster.generators]
    labels += [f"{'tilde' if t else 'psi'}({weight_label(w)}) (added)" for w, t in fx.roster.added]
    return "; ".join(labels)


def cmd_chain(args, out) -> int:
    from .fixtures import fixture
    from .spectra import _tilde, build_chain, chain_diagram, first_chain_states, weight_label

    J = _one_type(args.type)
    if args.start is None:
        d = chain_diagram(J, args.depth)
        out.write(d.to_dot() if args.emit == "dot" else _dump(d.to_json()))
        return 0
    kind, w = parse_label(args.start)
    psis = first_chain_states(J)
    if kind == "hat" or w not in psis:
        raise UsageError(f"unknown start {args.start!r} for type {J.value}; roster: {_roster_listing(J)}")
    direction = args.direction
    if direction is None:
        gens = [d for gw, d, t in fixture(J).roster.generators if gw == w and t == (kind == "tilde")]
        if not gens:
            raise UsageError(f"{args.start!r} is not a chain generator; pass --direction")
        direction = gens[0]
    start = _tilde(J, w) if kind == "tilde" else psis[w]
    ch = build_chain(J, start, direction, args.n)
    if args.emit == "dot":
        op = "Bdag" if direction == "up" else "B"
        lines = [f'digraph "chain_{J.value}" {{']
        for e in ch.elements:
            lines.append(f'  "{e.label}" [weight="{arat_str(e.weight)}"];')
        for prev, nxt in zip(ch.elements, ch.elements[1:]):
            lines.append(f'  "{prev.label}" -> "{nxt.label}" [op="{op}", coeff="1"];')
        back = "B" if direction == "up" else "Bdag"
        for prev, nxt, link in zip(ch.elements, ch.elements[1:], ch.links):
            c = arat_str(link.coefficient) if link.coefficient is not None else "proportional"
            lines.append(f'  "{nxt.label}" -> "{prev.label}" [op="{back}", coeff="{c}"];')
        lines.append("}")
        out.write("\n".join(lines) + "\n")
        return 0
    out.write(_dump({
        "schema": SCHEMA,
        "type": J.value,
        "start": start.label,
        "direction": direction,
        "coeff_kind": ch.coeff_kind,
        "elements": [{"n": i, "label": e.label, "weight": arat_str(e.weight)} for i, e in enumerate(ch.elements)],
        "links": [
            {"n": l.n, "coeff": arat_str(l.coefficient) if l.coefficient is not None else None,
             "expected": arat_str(l.expected), "exact": l.exact}
            for l in ch.links
        ],
        "truncated": ch.truncated,
        "weights": [weight_label(w) for w in ch.weights],
    }))
    return 0


def cmd_coeffs(args, out) -> int:
    from .model import _coeffs, hpoly_str, printed_fn, printed_gn

    J = _one_type(args.type)
    ns = parse_range(args.n)
    table = _coeffs(J)
    poly = table.f_poly if args.kind == "f" else table.g_poly
    printed = printed_fn if args.kind == "f" else printed_gn
    base = parse_weight(args.base) if args.base is not None else None
    alpha0 = parse_fraction(args.alpha) if args.alpha is not None else None
    rows = []
    for n in ns:
        p = poly(n)
        row = {"n": n}
        if base is None:
            row["value"] = hpoly_str(p)
            pts = [AlphaRat.const(k) for k in range(4)]
            same = all(_eval(p, t) == printed(J, n, t) for t in pts)
        else:
            v = _eval(p, base)
            pv = printed(J, n, base)
            same = v == pv
            if alpha0 is not None:
                try:
                    row["value"] = str(v(alpha0))
                    row["printed"] = str(pv(alpha0))
                except ValueError as exc:
                    raise UsageError(str(exc)) from None
            else:
                row["value"] = arat_str(v)
                row["printed"] = arat_str(pv)
        row["status"] = "pass" if same else "printed-mismatch"
        rows.append(row)
    out.write(_dump({
        "schema": SCHEMA,
        "type": J.value,
        "kind": args.kind,
        "base": arat_str(base) if base is not None else "H",
        "alpha": str(alpha0) if alpha0 is not None else None,
        "rows": rows,
    }))
    return 0


def _eval(p, t):
    from .model import hpoly_eval

    return hpoly_eval(p, t)


def cmd_eval(args, out) -> int:
    import mpmath

    from . import numeric
    from .functions import PoleError
    from .spectra import _tilde, first_chain_states, hat_states

    J = _one_type(args.type)
    kind, w = parse_label(args.state)
    if kind == "tilde":
        if w not in first_chain_states(J):
            raise UsageError(f"unknown state {args.state!r}; roster: {_roster_listing(J)}")
        ws = _tilde(J, w)
    elif kind == "hat":
        hats = hat_states(J)
        if w not in hats:
            raise UsageError(f"unknown generalized state {args.state!r}")
        ws = hats[w]
    else:
        psis = first_chain_states(J)
        if w not in psis:
            raise UsageError(f"unknown state {args.state!r}; roster: {_roster_listing(J)}")
        ws = psis[w]
    x0 = parse_fraction(args.x)
    alpha0 = parse_fraction(args.alpha)
    if x0 <= 0:
        raise UsageError("x must be positive")
    try:
        with mpmath.workprec(args.precision):
            v = numeric.derivatives(ws.state, x0, alpha0, 0)[0]
            text = mpmath.nstr(v, max(5, int(args.precision * 0.30103) - 2))
    except PoleError as exc:
        raise UsageError(str(exc)) from None
    out.write(_dump({"schema": SCHEMA, "type": J.value, "state": ws.label, "x": str(x0), "alpha": str(alpha0),
                     "precision": args.precision, "value": text,
                     "antiderivative_base": str(numeric.X_REF) if kind == "tilde" else None}))
    return 0


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="xladder", description="Exact verification of the cubic ladder algebras of X1 Laguerre systems.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    v = sub.add_parser("verify", help="run identity suites; JSON report")
    v.add_argument("--type", default="all")
    v.add_argument("--suite", action="append", help="suite name (repeatable) or 'all'")
    v.set_defaults(func=cmd_verify)

    z = sub.add_parser("zero-modes", help="list zero modes of B and B'")
    z.add_argument("--type", required=True)
    z.add_argument("--format", choices=("json", "text"), default="text")
    z.set_defaults(func=cmd_zero_modes)

    c = sub.add_parser("chain", help="induced chain or full two-chain diagram")
    c.add_argument("--type", required=True)
    c.add_argument("--start", help='start state, e.g. "alpha+1" or "tilde(-alpha-1)"; omit for the diagram')
    c.add_argument("--direction", choices=("up", "down"))
    c.add_argument("--n", type=int, default=3)
    c.add_argument("--depth", type=int, default=3)
    c.add_argument("--emit", choices=("json", "dot"), default="json")
    c.set_defaults(func=cmd_chain)

    k = sub.add_parser("coeffs", help="chain coefficients f_n / g_n")
    k.add_argument("--type", default="I")
    k.add_argument("--kind", choices=("f", "g"), default="f")
    k.add_argument("--base", help="base weight; omit for the polynomial in H")
    k.add_argument("--n", default="1")
    k.add_argument("--alpha", help="rational value of alpha")
    k.set_defaults(func=cmd_coeffs)

    e = sub.add_parser("eval", help="numeric value of a state (floats)")
    e.add_argument("--type", required=True)
    e.add_argument("--state", required=True)
    e.add_argument("--x", required=True)
    e.add_argument("--alpha", required=True)
    e.add_argument("--precision", type=int, default=128)
    e.set_defaults(func=cmd_eval)
    return p


_VALUE_OPTIONS = ("--base", "--start", "--alpha", "--state", "--x")


def _glue_negative_values(argv: list[str]) -> list[str]:
    # "--base -alpha-1" would otherwise parse -alpha-1 as an option
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-") and not argv[i + 1].startswith("--"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_glue_negative_values(argv))
        if isinstance(getattr(args, "n", None), int) and args.n < 0:
            raise UsageError("--n must be non-negative")
        if getattr(args, "depth", 1) < 1:
            raise UsageError("--depth must be at least 1")
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"xladder: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
