"""`parse`: read a model, validate it and its cut, print the reduced presentation."""

import argparse
import logging

from commands.common import add_model_arguments, add_output_arguments, cut_argument, load_model
from commands.output import CommandResult
from quivers.dsl import render_model, render_polynomial
from quivers.potential import reduced_presentation

logger = logging.getLogger(__name__)


def setup(subparsers) -> None:
    parser = subparsers.add_parser("parse", help="parse a model file and print its reduced presentation")
    add_model_arguments(parser)
    add_output_arguments(parser)
    parser.add_argument("--render", action="store_true", help="print the canonical model text instead")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> CommandResult:
    label, model = load_model(args)
    cut = cut_argument(args)
    if args.render:
        return CommandResult(payload=None, text=render_model(model.with_cut(cut) if cut else model))

    payload = {"model": label, **model.summary(), "potential": render_polynomial(model.potential)}
    rows = [
        {"item": "vertices", "value": ", ".join(model.vertices)},
        {"item": "arrows", "value": ", ".join(f"{a.name}: {a.source}->{a.target}" for a in model.arrows)},
        {"item": "params", "value": ", ".join(model.params)},
        {"item": model.potential_name, "value": payload["potential"]},
    ]
    if cut is not None or model.cut is not None:
        presentation = reduced_presentation(model, cut)
        payload["cut"] = list(presentation.cut)
        payload["reduced"] = presentation.to_dict()
        payload["relations"] = {
            name: relation.render() for name, relation in zip(presentation.cut, presentation.relations)
        }
        rows.append({"item": "cut", "value": ", ".join(presentation.cut)})
        rows.extend(
            {"item": f"d{model.potential_name}/d{name}", "value": relation.render()}
            for name, relation in zip(presentation.cut, presentation.relations)
        )
    else:
        logger.info("ℹ️ No cut declared; relations not computed")
    if model.family:
        rows.append({"item": "family", "value": model.family})
    logger.info(f"✅ Parsed {label}")
    return CommandResult(payload=payload, rows=rows)
