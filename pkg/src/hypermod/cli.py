"""Command-line interface.

Subcommands: validate, cdga, betti, range, stable-series, compare,
hilbert.  Varieties come from --builtin specs (torus, pN, curveG,
abelianG, product:A,B) or from JSON description files via --input; the
divisor class can be overridden with --alpha.  Output is a human
rendering by default or one JSON record per line with --format jsonl.

Exit codes: 0 success, 1 bad arguments or invalid input, 2 resource
cutoff (see HYPERMOD_MAX_MONOMIALS).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .cohomology import BettiTable, ResourceCutoff, betti_table
from .grca import AlgebraError, Element, Q, integrate, render_element
from .haefliger import build_section_cdga, render_cdga, torus_generator_names
from .hrr import UnivariatePolynomial, hilbert_polynomial
from .ranges import (SOURCES, RangeReport, curve_report, d_curve, d_power,
                     toric_report)
from .stable import (PoincareSeries, StableComparison, compare_stable,
                     grw_series, stable_moduli_series)
from .variety import (VarietyData, VarietyFileError, builtin_from_spec,
                      validate, variety_from_json, with_alpha)


class _ArgumentParser(argparse.ArgumentParser):
    """argparse exits 2 on bad arguments by default; 2 is reserved for
    the resource cutoff here, so remap argument errors to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


_COEFF_STAR_LABEL = re.compile(r"^([+-]?\d+(?:/\d+)?)\*(.+)$")
_BARE_LABEL = re.compile(r"^([+-]?\d+(?:/\d+)?)?([A-Za-z_][A-Za-z0-9_*']*)$")


def parse_class_expression(ring, text: str) -> Element:
    """A degree-2 class written as coeff*label (3/2*u, 2*1*h) or with
    the coefficient juxtaposed (9h, -2h, u), or the literal 0.  Labels
    that start with a digit need the starred form with an explicit
    coefficient."""
    text = text.strip()
    if text == "0":
        return ring.zero()
    m = _COEFF_STAR_LABEL.match(text) or _BARE_LABEL.match(text)
    if not m:
        raise ValueError(f"cannot parse class expression {text!r}")
    coeff = Fraction(m.group(1)) if m.group(1) else Q(1)
    label = m.group(2)
    if label not in ring.degrees:
        raise ValueError(f"unknown basis label {label!r} in class expression")
    if ring.degrees[label] != 2:
        raise ValueError(
            f"label {label!r} has degree {ring.degrees[label]}, need degree 2")
    return coeff * ring.basis_element(label)


# ---------------------------------------------------------------------------
# machine-readable records


def to_record(x) -> dict:
    if isinstance(x, BettiTable):
        return {"type": "betti_table", "max_degree": x.max_degree,
                "betti": list(x.betti)}
    if isinstance(x, RangeReport):
        return {"type": "range_report", "jet_bound": x.jet_bound,
                "source": x.source, "max_valid_degree": x.max_valid_degree,
                "exact": x.exact, "assumptions": list(x.assumptions)}
    if isinstance(x, PoincareSeries):
        return {"type": "poincare_series", "max_degree": x.max_degree,
                "coefficients": list(x.coefficients)}
    if isinstance(x, UnivariatePolynomial):
        return {"type": "hilbert_polynomial",
                "coefficients": [str(c) for c in x.coefficients]}
    if isinstance(x, StableComparison):
        return {"type": "stable_comparison", "jet_bound": x.jet_bound,
                "max_valid_degree": x.max_valid_degree,
                "rows": [list(row) for row in x.rows],
                "all_equal": x.all_equal}
    raise TypeError(f"no record form for {type(x).__name__}")


def from_record(record: dict):
    kind = record.get("type")
    if kind == "betti_table":
        return BettiTable(record["max_degree"], tuple(record["betti"]))
    if kind == "range_report":
        return RangeReport(
            jet_bound=record["jet_bound"], source=record["source"],
            max_valid_degree=record["max_valid_degree"],
            exact=record["exact"],
            assumptions=tuple(record["assumptions"]))
    if kind == "poincare_series":
        return PoincareSeries(record["max_degree"],
                              tuple(record["coefficients"]))
    if kind == "hilbert_polynomial":
        return UnivariatePolynomial(
            tuple(Fraction(c) for c in record["coefficients"]))
    raise ValueError(f"unknown record type {kind!r}")


def _emit_record(x):
    print(json.dumps(to_record(x)))


# ---------------------------------------------------------------------------
# subcommands


def _load_variety(args, check: bool = True) -> VarietyData:
    if args.builtin is not None:
        v = builtin_from_spec(args.builtin)
    else:
        with open(args.input, encoding="utf-8") as fh:
            v = variety_from_json(fh.read())
    if getattr(args, "alpha", None) is not None:
        v = with_alpha(v, parse_class_expression(v.ring, args.alpha))
    if check:
        errors = validate(v)
        if errors:
            raise AlgebraError("invalid variety data: " + "; ".join(errors))
    return v


def _cmd_validate(args) -> int:
    v = _load_variety(args, check=False)
    errors = validate(v)
    if args.format == "jsonl":
        print(json.dumps({"type": "validation", "name": v.name,
                          "valid": not errors, "errors": errors}))
    elif errors:
        for e in errors:
            print(f"invalid: {e}")
    else:
        print("valid")
    return 1 if errors else 0


def _cmd_cdga(args) -> int:
    v = _load_variety(args)
    cdga = build_section_cdga(v)
    names = torus_generator_names(cdga)
    if args.format == "jsonl":
        record = {
            "type": "cdga",
            "generators": [[names.get(n, n), d, p]
                           for n, d, p in cdga.generators],
            "differentials": {
                names.get(n, n): render_element(cdga.d(n), names)
                for n, _, _ in cdga.generators},
        }
        print(json.dumps(record))
    else:
        print(render_cdga(cdga, names))
    return 0


def _cmd_betti(args) -> int:
    v = _load_variety(args)
    cdga = build_section_cdga(v)
    table = betti_table(cdga, args.max_degree)
    if args.format == "jsonl":
        _emit_record(table)
    else:
        print(" ".join(str(b) for b in table.betti))
    return 0


def _cmd_range(args) -> int:
    modes = [args.curve_genus is not None or args.degree is not None,
             args.toric is not None,
             args.jet_bound is not None]
    if sum(modes) != 1:
        raise ValueError(
            "pick exactly one of --curve-genus/--degree, --toric, --jet-bound")
    if modes[0]:
        if args.curve_genus is None or args.degree is None:
            raise ValueError("--curve-genus and --degree go together")
        report = curve_report(args.curve_genus, args.degree)
    elif modes[1]:
        numbers = [int(x) for x in args.toric.split(",") if x.strip() != ""]
        report = toric_report(numbers)
    else:
        report = RangeReport.from_bound(
            args.jet_bound, args.source,
            ("jet bound supplied by the user",)
            if args.source == "user_supplied" else ())
    if args.format == "jsonl":
        _emit_record(report)
    else:
        print(report.describe())
        for assumption in report.assumptions:
            print(f"assumes: {assumption}")
    return 0


def _cmd_stable_series(args) -> int:
    v = _load_variety(args)
    series = (grw_series if args.grw else stable_moduli_series)(
        v, args.max_degree)
    if args.format == "jsonl":
        _emit_record(series)
    else:
        print(" ".join(str(c) for c in series.coefficients))
    return 0


def _derived_jet_bound(v: VarietyData) -> int:
    """Only two shapes are derivable without user input: curves (exact)
    and projective spaces with alpha a multiple of the hyperplane."""
    if v.n == 1:
        deg = integrate(v.alpha)
        if deg.denominator != 1:
            raise ValueError("alpha has non-integral degree")
        return d_curve(v.ring.betti(1) // 2, int(deg))
    if re.fullmatch(r"p\d+", v.name):
        terms = dict(v.alpha.items())
        if not terms:
            return 0
        if set(terms) == {"h"} and terms["h"].denominator == 1 \
                and terms["h"] >= 0:
            c = int(terms["h"])
            return d_power(1, c) if c else 0
    raise ValueError(
        "cannot derive a jet bound for this input; pass --jet-bound")


def _cmd_compare(args) -> int:
    v = _load_variety(args)
    bound = args.jet_bound if args.jet_bound is not None \
        else _derived_jet_bound(v)
    report = compare_stable(v, bound)
    if args.format == "jsonl":
        _emit_record(report)
        return 0
    print(f"jet bound d = {report.jet_bound}, "
          f"certified through degree {report.max_valid_degree}")
    for degree, model, stable, equal in report.rows:
        status = "ok" if equal else "MISMATCH"
        print(f"degree {degree}: model {model}, stable {stable}, {status}")
    if not report.rows:
        print("verdict: no certified degrees")
    elif report.all_equal:
        print("verdict: all equal in the certified range")
    else:
        print("verdict: MISMATCH")
    return 0


def _render_polynomial(p: UnivariatePolynomial) -> str:
    if not p.coefficients:
        return "0"
    parts = []
    for j, c in enumerate(p.coefficients):
        if not c:
            continue
        mag = abs(c)
        power = "" if j == 0 else ("m" if j == 1 else f"m^{j}")
        if not power:
            body = str(mag)
        elif mag == 1:
            body = power
        else:
            body = f"{mag} {power}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def _cmd_hilbert(args) -> int:
    v = _load_variety(args)
    c1 = parse_class_expression(v.ring, args.c1)
    p = hilbert_polynomial(v, c1)
    if args.format == "jsonl":
        _emit_record(p)
    else:
        print(f"P(m) = {_render_polynomial(p)}")
        print("integer valued:", "yes" if p.is_integer_valued() else "no")
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_variety_options(sub, alpha: bool = True):
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--builtin", metavar="SPEC",
                       help="torus, pN, curveG, abelianG, or product:A,B")
    group.add_argument("--input", metavar="FILE",
                       help="variety description file (JSON)")
    if alpha:
        sub.add_argument("--alpha", metavar="EXPR",
                         help="divisor class, e.g. 3u or 9h or 0")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="hypermod")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_format(p):
        p.add_argument("--format", choices=("human", "jsonl"),
                       default="human")
        return p

    p = with_format(sub.add_parser("validate", help="check a variety"))
    _add_variety_options(p, alpha=False)
    p.set_defaults(func=_cmd_validate)

    p = with_format(sub.add_parser(
        "cdga", help="print the section-space model"))
    _add_variety_options(p)
    p.set_defaults(func=_cmd_cdga)

    p = with_format(sub.add_parser(
        "betti", help="Betti numbers of the section space"))
    _add_variety_options(p)
    p.add_argument("--max-degree", type=int, required=True)
    p.set_defaults(func=_cmd_betti)

    p = with_format(sub.add_parser(
        "range", help="jet-ampleness bound and certified degree range"))
    p.add_argument("--curve-genus", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--toric", metavar="N,N,...",
                   help="intersection numbers with all invariant curves")
    p.add_argument("--jet-bound", type=int)
    p.add_argument("--source", choices=SOURCES, default="user_supplied")
    p.set_defaults(func=_cmd_range)

    p = with_format(sub.add_parser(
        "stable-series", help="stable cohomology Poincare series"))
    _add_variety_options(p, alpha=False)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--grw", action="store_true",
                   help="include the extra degree-1 generators")
    p.set_defaults(func=_cmd_stable_series)

    p = with_format(sub.add_parser(
        "compare", help="model Betti numbers vs the stable series"))
    _add_variety_options(p)
    p.add_argument("--jet-bound", type=int,
                   help="certified jet-ampleness bound (derived for "
                            "curves and projective spaces if omitted)")
    p.set_defaults(func=_cmd_compare)

    p = with_format(sub.add_parser(
        "hilbert", help="Hilbert polynomial by exact integration"))
    _add_variety_options(p, alpha=False)
    p.add_argument("--c1", metavar="EXPR", default="0",
                   help="first Chern class of the bundle (default 0)")
    p.set_defaults(func=_cmd_hilbert)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except ResourceCutoff as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (VarietyFileError, AlgebraError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
