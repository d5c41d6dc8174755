"""`factorization-check`: stratum series against the total series, and q-independence of nilpotent strata."""

import argparse
import logging

from commands.common import (
    add_model_arguments,
    add_oracle_arguments,
    add_output_arguments,
    assignment_argument,
    cut_argument,
    load_model,
    positive_int,
    primes_argument,
)
from commands.output import CommandResult
from oracle.factorization import DEFAULT_TRUNCATION, check_factorization, check_q_independence
from oracle.verify import deformation_parameter

logger = logging.getLogger(__name__)


def setup(subparsers) -> None:
    parser = subparsers.add_parser("factorization-check",
                                   help="multiply the nilpotent/invertible stratum series and compare")
    add_model_arguments(parser)
    add_oracle_arguments(parser)
    add_output_arguments(parser)
    parser.add_argument("--truncate", type=positive_int, default=DEFAULT_TRUNCATION, help="total degree N")
    parser.add_argument("--block", default=None,
                        help="arrows forming the split endomorphism, e.g. a2,b2 (conifold)")
    parser.add_argument("--all-q", action="store_true", help="repeat for every q in F_p^x")
    parser.add_argument("--q-independence", action="store_true",
                        help="also compare nilpotent-stratum counts across all q")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> CommandResult:
    label, model = load_model(args)
    cut = cut_argument(args)
    block = tuple(name.strip() for name in args.block.split(",")) if args.block else None
    assignment = assignment_argument(args)
    name = deformation_parameter(model)

    reports = []
    rows = []
    for p in primes_argument(args):
        if args.all_q and name is not None:
            settings = [{**assignment, name: q} for q in range(1, p)]
        else:
            settings = [assignment]
        for params in settings:
            report = check_factorization(model, cut, p, params, truncation=args.truncate, family=args.family,
                                         block=block, cap=args.cap, jobs=args.jobs)
            reports.append(report)
            rows.append({"check": "factorization", "p": p, "params": report.to_dict()["params"],
                         "pass": report.passed})
        if args.q_independence:
            independence = check_q_independence(model, cut, p, truncation=args.truncate, params=assignment,
                                                cap=args.cap, jobs=args.jobs)
            reports.append(independence)
            rows.append({"check": "q-independence", "p": p, "params": {}, "pass": independence.passed})

    failures = sum(1 for report in reports if not report.passed)
    if failures:
        logger.error(f"❌ {failures} of {len(reports)} check(s) failed for {label}")
    else:
        logger.info(f"✅ All {len(reports)} check(s) passed for {label}")
    documents = [report.to_dict(timings=not args.no_timings) for report in reports]
    payload = documents[0] if len(documents) == 1 else documents
    return CommandResult(payload=payload, rows=rows, status=1 if failures else 0)
