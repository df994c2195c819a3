"""Command-line front end: ``quasimonomial <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import cremona, curves, muhat, search, unloading
from .cluster import build_cluster, cluster_from_json
from .errors import DomainError
from .exactnum import parse_rational
from .lattice import DivisorClass

__all__ = ["build_parser", "main", "run"]


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except DomainError:
        raise argparse.ArgumentTypeError(f"invalid rational {text!r} (use p/q or an integer)") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(";", ",").split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer list {text!r}") from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _cmd_cluster(args) -> str:
    c = build_cluster(args.t)
    if args.json:
        return _dump(c.to_json())
    lines = [f"t = {c.t}  cf = {list(c.cf)}  s = {c.s}"]
    for i, (w, iw, free) in enumerate(zip(c.weights, c.int_weights, c.free_flags), start=1):
        prox = ",".join(map(str, c.proximity[i - 1])) or "-"
        lines.append(f"p{i}: v={w} w={iw} {'free' if free else 'satellite'} proximate to {prox}")
    return "\n".join(lines) + "\n"


def _cmd_unload(args) -> str:
    if args.cluster == "-":
        c = cluster_from_json(json.load(sys.stdin))
    else:
        c = build_cluster(_rational(args.cluster))
    if args.ideal is not None:
        result = unloading.valuation_ideal_mults(c, args.ideal)
    elif args.mults is not None:
        result = unloading.unload(c, args.mults)
    else:
        raise DomainError("unload needs --mults or --ideal")
    return _dump({"t": str(c.t), "mults": list(result)})


def _cmd_muhat(args) -> str:
    return _dump(muhat.muhat_eval(args.t).to_json(args.decimal or 30))


def _cmd_segments(args) -> str:
    return _dump([s.to_json() for s in muhat.piecewise_segments(args.lo, args.hi)])


def _cmd_plot(args) -> str:
    return muhat.plot_csv(args.lo, args.hi, args.step, decimal=args.decimal)


def _cmd_catalog(args) -> str:
    data = {
        "sporadic": curves.catalog_json(),
        "table_discrepancies": [{"name": n, "kind": k} for n, k in curves.table_discrepancies()],
    }
    return _dump(data)


def _named_curve(name: str) -> curves.BranchCurve:
    if name.startswith("C") and name[1:].isdigit():
        return curves.fibonacci_curve(int(name[1:]))
    for c in curves.sporadic_catalog():
        if c.name == name:
            return c
    raise DomainError(f"unknown curve {name!r}")


def _cmd_cremona(args) -> str:
    if args.curve:
        image = cremona.star_construct(_named_curve(args.curve))
        return _dump(image.to_json())
    if args.degree is None or args.fundamental is None:
        raise DomainError("cremona needs a curve name or --degree with --fundamental")
    cls = cremona.apply_phi8(args.degree, args.fundamental, args.carried or ())
    return _dump({"class": cls.render(), "degree": cls.degree, "mults": list(cls.mults)})


def _cmd_scan(args) -> str:
    window = search.SearchWindow(args.lo, args.hi, args.max_degree)
    found = search.scan_supraminimal(window, jobs=args.jobs, density=args.density)
    return _dump(
        {
            "window": [str(args.lo), str(args.hi)],
            "max_degree": args.max_degree,
            "sampling": f"endpoints and rationals with denominator <= {args.density * args.max_degree}",
            "findings": [f.certificate() for f in found],
        }
    )


def _cmd_family(args) -> str:
    out = []
    for cls in search.infinite_family(args.count):
        out.append({"class": cls.render(first_index=8), "degree": cls.degree, "mults": list(cls.mults)})
    return _dump(out)


def _cmd_minus2(args) -> str:
    found = search.minus_two_enumerate(args.s, bound=args.bound)
    return _dump(
        [{"class": c.render(), "sq": c.square(), "k": c.kappa_degree()} for c in found]
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    common.add_argument("--json", action="store_true", help="JSON output where text is the default")
    common.add_argument("--decimal", type=int, metavar="N", help="render irrational values with N digits")

    parser = argparse.ArgumentParser(prog="quasimonomial", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cluster", parents=[common], help="cluster of centers of v(t)")
    p.add_argument("t", type=_rational)
    p.set_defaults(func=_cmd_cluster)

    p = sub.add_parser("unload", parents=[common], help="unload a multiplicity vector")
    p.add_argument("--cluster", required=True, metavar="T|-", help="exponent t, or - to read cluster JSON from stdin")
    p.add_argument("--mults", type=_int_list, help="comma-separated start vector")
    p.add_argument("--ideal", type=int, metavar="M", help="multiplicities of the valuation ideal I_M")
    p.set_defaults(func=_cmd_unload)

    p = sub.add_parser("muhat", parents=[common], help="evaluate mu-hat(t)")
    p.add_argument("t", type=_rational)
    p.set_defaults(func=_cmd_muhat)

    p = sub.add_parser("segments", parents=[common], help="piecewise description on [lo, hi]")
    p.add_argument("lo", type=_rational)
    p.add_argument("hi", type=_rational)
    p.set_defaults(func=_cmd_segments)

    p = sub.add_parser("plot", parents=[common], help="CSV samples of mu-hat")
    p.add_argument("lo", type=_rational)
    p.add_argument("hi", type=_rational)
    p.add_argument("step", type=_rational)
    p.set_defaults(func=_cmd_plot)

    p = sub.add_parser("catalog", parents=[common], help="sporadic supraminimal curves")
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("cremona", parents=[common], help="apply the degree 8 Cremona map")
    p.add_argument("curve", nargs="?", help="source curve name (D1, D2, C1, C3, C5, C1*, ...)")
    p.add_argument("--degree", type=int)
    p.add_argument("--fundamental", type=_int_list, help="7 multiplicities at the fundamental points")
    p.add_argument("--carried", type=_int_list, help="multiplicities at further points")
    p.set_defaults(func=_cmd_cremona)

    p = sub.add_parser("scan", parents=[common], help="search supraminimal (-1)-classes")
    p.add_argument("lo", type=_rational)
    p.add_argument("hi", type=_rational)
    p.add_argument("--max-degree", type=int, default=64)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--density", type=int, default=1, help="sample denominators up to density*max-degree")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("family", parents=[common], help="the infinite family of (-1)-classes")
    p.add_argument("count", type=int)
    p.set_defaults(func=_cmd_family)

    p = sub.add_parser("minus2", parents=[common], help="(-2)-classes for t = 7 + 1/(s-7)")
    p.add_argument("s", type=int)
    p.add_argument("--bound", choices=("paper", "exact"), default="paper")
    p.set_defaults(func=_cmd_minus2)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())
