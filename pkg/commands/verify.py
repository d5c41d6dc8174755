"""`verify`: closed-form prediction against exhaustive counts, exit 1 on any mismatch."""

import argparse
import logging

from commands.common import (
    add_alpha_arguments,
    add_model_arguments,
    add_oracle_arguments,
    add_output_arguments,
    alphas_argument,
    assignment_argument,
    cut_argument,
    load_model,
    primes_argument,
)
from commands.output import CommandResult
from oracle.verify import verify_model

logger = logging.getLogger(__name__)


def setup(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="check a theorem's reduced classes against point counts")
    add_model_arguments(parser)
    add_alpha_arguments(parser)
    add_oracle_arguments(parser)
    add_output_arguments(parser)
    parser.add_argument("--branch", default="auto", help="auto, generic or root:<r>")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> CommandResult:
    label, model = load_model(args)
    assignment = assignment_argument(args)
    cut = cut_argument(args)

    reports = []
    failures = 0
    for p in primes_argument(args):
        for alpha in alphas_argument(args, model):
            report = verify_model(model, alpha, p, assignment, branch=args.branch, family=args.family,
                                  cut=cut, cap=args.cap, jobs=args.jobs, chunk=args.chunk)
            failures += not report.passed
            reports.append(report.to_dict(timings=not args.no_timings))

    if failures:
        logger.error(f"❌ {failures} of {len(reports)} check(s) failed for {label}")
    else:
        logger.info(f"✅ All {len(reports)} check(s) passed for {label}")
    payload = reports[0] if len(reports) == 1 else reports
    return CommandResult(payload=payload, rows=reports, status=1 if failures else 0)
