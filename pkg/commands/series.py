"""`series`: closed-form DT series of a family, with the reduced classes of a model."""

import argparse
import logging

import config
from commands.common import (
    add_model_arguments,
    add_output_arguments,
    assignment_argument,
    cut_argument,
    load_model,
    parse_int_list,
    positive_int,
    primes_argument,
)
from commands.output import CommandResult
from dt.engine import euler_numerators, family_for_model, reduced_class, theorem_series
from dt.theorems import Branch, Family, TheoremSpec
from motive.scalar import default_convention
from oracle.finite_field import check_prime, reduce_assignment
from oracle.verify import parameter_order, select_branch

logger = logging.getLogger(__name__)


def setup(subparsers) -> None:
    parser = subparsers.add_parser("series", help="expand a family's DT series and the reduced classes")
    add_model_arguments(parser, required=False)
    add_output_arguments(parser)
    parser.add_argument("--branch", default="generic",
                        help="generic, root:<r>, or auto (needs --prime and --set)")
    parser.add_argument("--truncate", type=positive_int, default=getattr(config, "DEFAULT_TRUNCATION", 4),
                        help="total degree N")
    parser.add_argument("--prime", action="append", type=parse_int_list, default=None,
                        help="prime for --branch auto")
    parser.add_argument("--set", action="append", default=[], metavar="NAME=VALUE",
                        help="parameter value for --branch auto")
    parser.add_argument("--euler", action="store_true",
                        help="also report the Euler specialization of each Exp numerator")
    parser.set_defaults(handler=run)


def _resolve_spec(args: argparse.Namespace, model, family: Family) -> TheoremSpec:
    if args.branch != "auto":
        return TheoremSpec(family, Branch.parse(args.branch))
    primes = primes_argument(args)
    if len(primes) != 1 or model is None:
        raise ValueError("--branch auto needs --model and exactly one --prime")
    p = check_prime(primes[0])
    params = reduce_assignment(assignment_argument(args), model.params, p)
    _, order = parameter_order(model, family, params, p)
    branch, _ = select_branch(family, order, args.truncate, "auto")
    logger.info(f"Branch auto-selected: {branch} (order of q mod {p}: {order})")
    return TheoremSpec(family, branch)


def run(args: argparse.Namespace) -> CommandResult:
    model = None
    label = None
    if args.model:
        label, model = load_model(args)
        family = family_for_model(model, args.family)
    elif args.family:
        family = Family.parse(args.family)
    else:
        raise ValueError("series needs --model or --family")

    spec = _resolve_spec(args, model, family)
    series = theorem_series(spec, args.truncate)
    cut = cut_argument(args)
    with_reduced = model is not None and (cut is not None or model.cut is not None)

    body = series.to_dict()
    coeffs = body["coeffs"]
    if with_reduced:
        for entry in coeffs:
            entry["reduced"] = reduced_class(series, model, cut, entry["alpha"]).render()

    payload = {**spec.to_dict(), "convention": default_convention().value, **body}
    if label:
        payload["model"] = label
    if args.euler:
        payload["euler"] = euler_numerators(spec)
    logger.info(f"✅ {spec.label} to N={args.truncate}: {len(coeffs)} coefficient(s)")
    return CommandResult(payload=payload, rows=coeffs)
