"""`oracle-count`: exhaustive counts of a model's cut representation variety over F_p."""

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
from oracle.counting import count_representations
from oracle.finite_field import multiplicative_order, reduce_assignment
from oracle.plan import CountTask, parse_strata
from oracle.verify import deformation_parameter
from quivers.potential import reduced_presentation

logger = logging.getLogger(__name__)


def setup(subparsers) -> None:
    parser = subparsers.add_parser("oracle-count", help="count representations of the cut relations over F_p")
    add_model_arguments(parser)
    add_alpha_arguments(parser)
    add_oracle_arguments(parser)
    add_output_arguments(parser)
    parser.add_argument("--strata", default="",
                        help="constraints such as x:N,y:I or a2+b2:invertible (N, I or *)")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> CommandResult:
    label, model = load_model(args)
    presentation = reduced_presentation(model, cut_argument(args))
    strata = parse_strata(args.strata)
    assignment = assignment_argument(args)
    name = deformation_parameter(model)

    reports = []
    for p in primes_argument(args):
        params = reduce_assignment(assignment, model.params, p)
        order = multiplicative_order(params[name], p) if name in params else None
        for alpha in alphas_argument(args, model):
            task = CountTask(presentation=presentation, alpha=alpha, p=p, params=params,
                             cap=args.cap, strata=strata)
            report = count_representations(task, jobs=args.jobs, chunk=args.chunk, order_q=order)
            logger.info(f"📊 {label} alpha={alpha} p={p}: {report.representation_count}/{report.gl_count}")
            reports.append(report.to_dict(timings=not args.no_timings))
    payload = reports[0] if len(reports) == 1 else reports
    return CommandResult(payload=payload, rows=reports)
