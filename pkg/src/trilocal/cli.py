"""Command-line interface.

Subcommands: normalize, rho, verify, fraction, factor, localize-ring,
localize-module.  Exit codes: 0 success, 1 verification failure,
2 parse or schema error, 3 step-budget exhaustion.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import (
    BudgetExceededError,
    ParseError,
    SchemaError,
    TrilocalError,
    UnsupportedFamilyError,
    UnsupportedRingError,
)
from .exprs import format_element, format_oracle, parse_bim_element, parse_element, parse_ring_element
from .families import family_from_json
from .fracloc import CentralPair, factor_inverting_hom, rational_value_hom
from .matrixloc import rho_matrix, verify_sigma_inverting
from .modloc import localize_module
from .report import Report
from .tring import DEFAULT_BUDGET, family_iso, rho, t_normalize
from .triangular import TriElement, triple_from_json
from .verify import DEFAULT_SEED, example_suite, random_suite

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3


def _load_family(spec):
    if spec is None:
        raise SchemaError("--family is required for this command")
    if spec.startswith("@"):
        try:
            with open(spec[1:], "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise SchemaError(f"cannot read family file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise SchemaError(f"family file is not valid JSON: {exc}") from exc
    else:
        try:
            data = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"--family is not valid JSON: {exc}") from exc
    return family_from_json(data)


def _emit(doc, fmt):
    if fmt == "json":
        print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    else:
        for key, value in doc.items():
            if isinstance(value, list):
                print(f"{key}:")
                for item in value:
                    if isinstance(item, list):
                        print("  [" + " ".join(str(x) for x in item) + "]")
                    else:
                        print(f"  {item}")
            else:
                print(f"{key}: {value}")


def _emit_report(report, fmt):
    print(report.render(fmt))


def cmd_normalize(args):
    family = _load_family(args.family)
    tree = parse_element(family, args.expr)
    element = t_normalize(family, tree, args.budget)
    _emit(
        {
            "family": family.describe(),
            "input": args.expr,
            "normal_form": format_element(element),
            "oracle": format_oracle(family, family_iso(element)),
        },
        args.format,
    )
    return EXIT_OK


def cmd_rho(args):
    family = _load_family(args.family)
    if args.component == "M":
        value = parse_bim_element(family, args.value)
        shown = family.fmt_m(value)
    else:
        value = parse_ring_element(family, args.component, args.value)
        ring = family.a_ring if args.component == "A" else family.b_ring
        shown = ring.fmt(value)
    image = rho(family, args.component, value)
    _emit(
        {
            "family": family.describe(),
            "component": args.component,
            "value": shown,
            "normal_form": format_element(image),
            "oracle": format_oracle(family, family_iso(image)),
        },
        args.format,
    )
    return EXIT_OK


def cmd_verify(args):
    if args.suite == "examples":
        report = example_suite(seed=args.seed, negative_control=args.negative_control)
    else:
        report = random_suite(seed=args.seed)
    _emit_report(report, args.format)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_fraction(args):
    family = _load_family(args.family)
    pair = CentralPair(family, args.a0, args.b0, seed=args.seed)
    target = pair.target_family()
    tree = parse_element(target, args.expr)
    element = t_normalize(target, tree, args.budget)
    form = pair.fraction_form(element)
    _emit(
        {
            "family": family.describe(),
            "target_family": target.describe(),
            "input": args.expr,
            "value": format_oracle(target, family_iso(element)),
            "numerator": format_element(form.numerator),
            "denominator_exponent": form.exponent,
        },
        args.format,
    )
    return EXIT_OK


def cmd_factor(args):
    family = _load_family(args.family)
    pair = CentralPair(family, args.a0, args.b0, seed=args.seed)
    target = pair.target_family()
    tree = parse_element(target, args.expr)
    element = t_normalize(target, tree, args.budget)
    hom = rational_value_hom(family)
    report = Report(f"factorization through T(M,a0*p) [{family.describe()}]", seed=args.seed)
    report.add("letter images satisfy the presentation", hom.respects_relations(samples=50, seed=args.seed))
    f_inv = Fraction(1, args.a0)
    value = factor_inverting_hom(pair, hom, f_inv, element)
    report.add("factored image computed", True, str(value))
    _emit(
        {
            "family": family.describe(),
            "target_family": target.describe(),
            "input": args.expr,
            "factored_value": str(value),
            "checks": "pass" if report.passed else "fail",
        },
        args.format,
    )
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_localize_ring(args):
    family = _load_family(args.family)
    report = verify_sigma_inverting(family, samples=args.samples, seed=args.seed)
    one = TriElement.one(family)
    corner = TriElement(family, family.a_ring.zero(), family.p, family.b_ring.zero())
    doc = {
        "family": family.describe(),
        "image_of_identity": rho_matrix(one).fmt(),
        "image_of_corner_p": rho_matrix(corner).fmt(),
        "certificate": "pass" if report.passed else "fail",
    }
    _emit(doc, args.format)
    if args.format == "text":
        _emit_report(report, args.format)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_localize_module(args):
    try:
        with open(args.spec, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read module spec: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"module spec is not valid JSON: {exc}") from exc
    if args.family:
        family = _load_family(args.family)
    else:
        if "family" not in data:
            raise SchemaError("module spec must carry a 'family' descriptor")
        family = family_from_json(data["family"])
    triple = triple_from_json(family, data)
    localized = localize_module(triple, samples=args.samples, seed=args.seed)
    doc = localized.to_json()
    doc["family"] = family.describe()
    _emit(doc, args.format)
    if args.format == "text":
        _emit_report(localized.report, args.format)
    return EXIT_OK if localized.report.passed else EXIT_VERIFY


def build_parser():
    parser = argparse.ArgumentParser(
        prog="trilocal",
        description="Exact universal localization of triangular 2x2 matrix rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, family=True, expr=False):
        if family:
            p.add_argument("--family", help="family descriptor: inline JSON or @path")
        if expr:
            p.add_argument("--expr", required=True, help="element expression in the published grammar")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for sampled checks")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="rewrite-step budget")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("normalize", help="normalize an expression and show its oracle value")
    common(p, expr=True)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("rho", help="image of an A, M or B element in T(M,p)")
    common(p)
    p.add_argument("--component", choices=("A", "M", "B"), required=True)
    p.add_argument("--value", required=True, help="element text (scalar, word expression, or melem sum)")
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("verify", help="run the worked-example or random property suites")
    common(p, family=False)
    p.add_argument("--suite", choices=("examples", "random"), default="examples")
    p.add_argument(
        "--negative-control",
        action="store_true",
        help="corrupt one fixture to prove the suite can fail (self-test)",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fraction", help="fraction form over T(M,a0*p)")
    common(p, expr=True)
    p.add_argument("--a0", type=int, required=True)
    p.add_argument("--b0", type=int, required=True)
    p.set_defaults(func=cmd_fraction)

    p = sub.add_parser("factor", help="evaluate the factorization through T(M,a0*p)")
    common(p, expr=True)
    p.add_argument("--a0", type=int, required=True)
    p.add_argument("--b0", type=int, required=True)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("localize-ring", help="certify the 2x2 matrix localization")
    common(p)
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(func=cmd_localize_ring)

    p = sub.add_parser("localize-module", help="localize a module triple from a JSON spec")
    common(p)
    p.add_argument("--spec", required=True, help="path to the TripleModule JSON document")
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=cmd_localize_module)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (UnsupportedFamilyError, UnsupportedRingError, TrilocalError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
