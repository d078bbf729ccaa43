"""Command-line front end.

Exit codes: 0 success, 2 parse/usage error, 3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import blowup, catalog, cones, fano, lattice
from .grassmann import Grassmannian, parse_class
from .qq import InvariantViolation, ParseError, fmt, parse_vector, qq, to_json

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT = 0, 2, 3


def _emit(args, payload, text: str | None = None):
    if args.json or text is None:
        sys.stdout.write(json.dumps(to_json(payload), indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text + "\n")


def _read_json_arg(value: str):
    """Inline JSON, or a path to a UTF-8 JSON file."""
    s = value.strip()
    if s.startswith(("{", "[")):
        return s
    path = Path(value)
    if not path.exists():
        raise ParseError(f"no such file: {value}")
    return path.read_text(encoding="utf-8")


def _gram(args) -> lattice.Lattice:
    if not args.gram:
        raise ParseError("--gram is required")
    return lattice.Lattice.from_json(_read_json_arg(args.gram))


# --- schubert ---------------------------------------------------------------


def cmd_schubert(args):
    gr = Grassmannian(args.k, args.n)
    a = parse_class(args.a, gr)
    if args.action == "mult":
        if args.b is None:
            raise ParseError("mult needs two classes")
        out = a * parse_class(args.b, gr)
        _emit(args, {"Gr": [gr.k, gr.n], "product": str(out)}, str(out))
    else:
        val = a.integrate()
        _emit(args, {"Gr": [gr.k, gr.n], "integral": val}, fmt(val))


# --- fano -------------------------------------------------------------------


def cmd_fano(args):
    if args.action == "invariants":
        inv = fano.invariants()
        m = inv["pairing_matrix"]
        if m[0][1] != m[1][0] or inv["c1_X"] != 0:
            raise InvariantViolation("pairing not symmetric or c_1(X) != 0")
        lines = [
            f"[X] = {inv['fundamental_class']}",
            f"g^4 = {fmt(inv['g4'])}, g^2.c = {fmt(inv['g2c'])}, c^2 = {fmt(inv['c2'])}",
            f"c_1(X) = {fmt(inv['c1_X'])}",
            f"c_2(X) = {inv['c2_X_str']}",
        ]
        _emit(args, inv, "\n".join(lines))
    elif args.action == "pair":
        if len(args.exprs) != 2:
            raise ParseError("pair needs two expressions")
        x, y = (catalog.evaluate(e) for e in args.exprs)
        if not isinstance(x, fano.FanoClass2) or not isinstance(y, fano.FanoClass2):
            raise ParseError("pair needs two codimension-2 classes")
        val = fano.pair_fano(x, y)
        _emit(args, {"x": str(x), "y": str(y), "pairing": val}, fmt(val))
    else:  # eval
        if len(args.exprs) != 1:
            raise ParseError("eval needs one expression")
        val = catalog.evaluate(args.exprs[0])
        text = str(val) if isinstance(val, fano.FanoClass2) else fmt(val)
        _emit(args, {"expr": args.exprs[0], "value": text if isinstance(val, fano.FanoClass2) else val}, text)


# --- bb ---------------------------------------------------------------------


def cmd_bb(args):
    if args.action == "rank-checks":
        report = lattice.rank_checks()
        _emit(args, report, json.dumps(report))
        if not report["ok"]:
            raise InvariantViolation("rank bookkeeping failed")
        return
    lat = _gram(args)
    if args.action == "signature":
        sig = lat.signature()
        _emit(args, {"labels": list(lat.labels), "signature": list(sig)}, "({}, {}, {})".format(*sig))
        return
    h2 = lattice.HilbSquareH2.from_k3(lat)
    x, y = parse_vector(args.x), parse_vector(args.y)
    q = h2.q_pair(x, y)
    payload = {"delta_square": h2.delta_square, "q": q, "c2.x.y": h2.c2_pairing(x, y)}
    _emit(args, payload, f"q = {fmt(q)}, c2.x.y = {fmt(payload['c2.x.y'])}")


# --- blowup -----------------------------------------------------------------


def cmd_blowup(args):
    if args.action == "delta-square":
        d = blowup.derive_delta_square()
        _emit(args, {"delta_square": d}, fmt(d))
        return
    lat = _gram(args)
    x, y = parse_vector(args.x), parse_vector(args.y)
    res = blowup.verify30q(lat, x, y)
    _emit(args, res._asdict())  # always JSON
    if not res.equal:
        raise InvariantViolation("c2.x.y differs from 30 q(x, y)")


# --- cone -------------------------------------------------------------------


def _pairing(args) -> cones.Pairing2:
    if args.pairing:
        data = json.loads(_read_json_arg(args.pairing))
        return cones.Pairing2(tuple(tuple(qq(v) for v in row) for row in data))
    return cones.fano_pairing()


def cmd_cone(args):
    if args.action == "gap-report":
        lams = args.lam or ["1", "8/5"]
        if len(lams) != 2:
            raise ParseError("--lambda must be given exactly twice (interval endpoints)")
        report = cones.gap_report(_pairing(args), [qq(v) for v in lams])
        _emit(args, report)
        return
    if not args.cones:
        raise ParseError(f"cone {args.action} needs a cone argument")
    cs = [cones.Cone2.from_json(_read_json_arg(c)) for c in args.cones]
    if args.action == "dual":
        d = cones.dual_cone(cs[0], _pairing(args))
        _emit(args, d.to_json())
    else:
        if len(cs) != 2:
            raise ParseError("contains needs two cones")
        verdict = cones.contains(cs[0], cs[1])
        _emit(args, {"verdict": verdict.value}, verdict.value)


# --- catalog / report -------------------------------------------------------


def cmd_catalog(args):
    if args.action == "list":
        names = [args.variety] if args.variety else catalog.varieties()
        payload = {v: [e.object for e in catalog.list_entries(v)] for v in names}
        _emit(args, payload, "\n".join(f"{v}: {len(o)} entries" for v, o in payload.items()))
    else:
        if not args.variety or not args.object:
            raise ParseError("show needs a variety and an object name")
        entry = catalog.show(args.variety, args.object)
        _emit(args, entry.to_json())


def cmd_report(args):
    report = catalog.report_fano_lines()
    if args.json:
        sys.stdout.write(catalog.dumps(report))
        return
    gap = report["gap_report"]
    lines = [
        f"intersection numbers: {report['intersection_numbers']}",
        f"c2(X) = {fano.FanoClass2(*report['c2'])}",
        f"interval {gap['interval']}: certified={gap['interval_certified']}",
        f"nef strictly exceeds eff: {report['nef_strictly_exceeds_eff']}",
    ]
    sys.stdout.write("\n".join(lines) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hkcycles", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schubert", parents=[common], help="Schubert calculus on Gr(k,n)")
    p.add_argument("action", choices=["mult", "integrate"])
    p.add_argument("a")
    p.add_argument("b", nargs="?")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--n", type=int, default=6)
    p.set_defaults(func=cmd_schubert)

    p = sub.add_parser("fano", parents=[common], help="variety of lines of a cubic fourfold")
    p.add_argument("action", choices=["invariants", "pair", "eval"])
    p.add_argument("exprs", nargs="*", help="expressions such as '3*g2 - 5*c'")
    p.set_defaults(func=cmd_fano)

    p = sub.add_parser("bb", parents=[common], help="Beauville-Bogomolov lattices")
    p.add_argument("action", choices=["signature", "qpair", "rank-checks"])
    p.add_argument("--gram", help="lattice JSON file (or inline JSON)")
    p.add_argument("--x", default="")
    p.add_argument("--y", default="")
    p.set_defaults(func=cmd_bb)

    p = sub.add_parser("blowup", parents=[common], help="blow-up of S x S along the diagonal")
    p.add_argument("action", choices=["verify30q", "delta-square"])
    p.add_argument("--gram")
    p.add_argument("--x", default="")
    p.add_argument("--y", default="")
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("cone", parents=[common], help="2-dimensional cones")
    p.add_argument("action", choices=["dual", "contains", "gap-report"])
    p.add_argument("cones", nargs="*", help="cone JSON (inline or file)")
    p.add_argument("--pairing", help="2x2 symmetric matrix as JSON; default: F(Y) pairing")
    p.add_argument("--lambda", dest="lam", action="append", help="interval endpoint p/q (give twice)")
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("catalog", parents=[common], help="registry of surfaces and classes")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("variety", nargs="?")
    p.add_argument("object", nargs="?")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("report", parents=[common], help="reproduction reports")
    p.add_argument("which", choices=["fano-lines"])
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except InvariantViolation as err:
        print(f"invariant violation: {err}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ParseError, ValueError, KeyError, TypeError, json.JSONDecodeError) as err:
        msg = err.args[0] if isinstance(err, KeyError) and err.args else err
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
