"""
dtcheck subcommands

Each module exposes setup(subparsers), which registers its parser with a `handler`
returning a CommandResult.
"""

from commands import factorization, oracle_count, parse, series, verify
from commands.output import CommandResult, emit, render

COMMAND_MODULES = (parse, series, oracle_count, verify, factorization)


def setup_all(subparsers) -> None:
    for module in COMMAND_MODULES:
        module.setup(subparsers)


__all__ = ["COMMAND_MODULES", "CommandResult", "emit", "render", "setup_all"]
