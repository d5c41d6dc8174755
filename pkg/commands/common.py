"""Arguments and loaders shared by the subcommands."""

import argparse
import logging
from typing import Dict, List, Optional, Tuple

import config
from commands.output import FORMATS
from motive.series import Alpha, keys_up_to
from oracle.finite_field import parse_assignment
from quivers.corpus import read_model_source
from quivers.dsl import parse_model
from quivers.model import QuiverModel

logger = logging.getLogger(__name__)


def parse_cap(text: str) -> int:
    """Search-space cap; accepts `100000000` and `1e8`."""
    try:
        value = int(float(text)) if any(c in text.lower() for c in ".e") else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid cap {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"cap must be positive, got {text!r}")
    return value


def parse_alpha(text: str) -> Alpha:
    try:
        alpha = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"dimension vector must look like 1,1 - got {text!r}") from None
    if any(x < 0 for x in alpha):
        raise argparse.ArgumentTypeError(f"dimension vector entries must be >= 0, got {text!r}")
    return alpha


def parse_int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text!r}")
    return value


def jobs_count(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"jobs must be >= 0 (0 = one per core), got {text!r}")
    return value


def add_model_arguments(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--model", required=required,
                        help="model file, or a built-in name such as conifold or cyclic_2")
    parser.add_argument("--cut", default=None,
                        help="comma-separated cut arrows (default: the model's cut line)")
    parser.add_argument("--family", default=None,
                        help="theorem family, overriding the model's family line")


def add_oracle_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--prime", action="append", type=parse_int_list, default=None,
                        help="prime(s), comma-separated or repeated")
    parser.add_argument("--set", action="append", default=[], metavar="NAME=VALUE",
                        help="parameter value, e.g. q=2 (repeatable)")
    parser.add_argument("--cap", type=parse_cap, default=getattr(config, "ORACLE_CAP", 10**8),
                        help="largest search space to enumerate (default from DT_ORACLE_CAP)")
    parser.add_argument("--jobs", type=jobs_count, default=1,
                        help="worker processes; 0 picks one per physical core")
    parser.add_argument("--chunk", type=positive_int, default=None,
                        help="assignments per numpy batch (default sized from free memory)")


def add_alpha_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", action="append", type=parse_alpha, default=None,
                        help="dimension vector, e.g. 1,1 (repeatable)")
    parser.add_argument("--degree", type=positive_int, default=None,
                        help="every nonzero dimension vector with |alpha| <= DEGREE")


def add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=FORMATS, default="json", help="report format")
    parser.add_argument("--no-timings", action="store_true",
                        help="leave elapsed times out of reports (byte-identical reruns)")


def load_model(args: argparse.Namespace) -> Tuple[str, QuiverModel]:
    label, text = read_model_source(args.model)
    model = parse_model(text)
    logger.debug(f"Loaded {label}: {len(model.vertices)} vertex(es), {len(model.arrows)} arrow(s)")
    return label, model


def cut_argument(args: argparse.Namespace) -> Optional[Tuple[str, ...]]:
    if not getattr(args, "cut", None):
        return None
    return tuple(name.strip() for name in args.cut.split(",") if name.strip())


def primes_argument(args: argparse.Namespace, required: bool = True) -> List[int]:
    primes = [p for group in (args.prime or []) for p in group]
    if required and not primes:
        raise ValueError("At least one --prime is required")
    return primes


def assignment_argument(args: argparse.Namespace) -> Dict[str, int]:
    return parse_assignment(args.set or [])


def alphas_argument(args: argparse.Namespace, model: QuiverModel) -> List[Alpha]:
    alphas = list(args.alpha or [])
    if args.degree:
        alphas.extend(keys_up_to(len(model.vertices), args.degree)[1:])
    if not alphas:
        raise ValueError("Give --alpha or --degree")
    return list(dict.fromkeys(alphas))
