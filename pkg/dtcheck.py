#!/usr/bin/env python3
"""
dtcheck: motivic DT series of quivers with potential, checked against point counts over F_p.

Usage:
    python dtcheck.py parse --model conifold
    python dtcheck.py series --model conifold --branch generic --truncate 3
    python dtcheck.py oracle-count --model q1_quantum --alpha 1 --prime 3 --set q=2
    python dtcheck.py verify --model q1_quantum --alpha 1 --prime 3 --set q=2 --branch auto
    python dtcheck.py factorization-check --model q1_quantum --prime 3 --all-q --q-independence

Exit status: 0 when every check passes, 1 on a failed check, 2 on usage or input errors,
3 when a search space exceeds the cap.
"""

import argparse
import logging
import sys
from typing import List, Optional

import config
from commands import CommandResult, emit, setup_all
from logging_utils import log_system_info, setup_logging
from motive.scalar import LambdaConvention, set_default_convention
from oracle.errors import OracleError, SearchSpaceTooLarge

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3

VERSION = "1.0.0"


class CommandManager:
    """Parses arguments, configures logging and dispatches to the subcommand handlers"""

    def __init__(self):
        self.parser = self.build_parser()
        self.logger: Optional[logging.Logger] = None

    @staticmethod
    def build_parser() -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="dtcheck",
            description="Motivic DT series of quivers with potential, checked by point counts over F_p.",
        )
        parser.add_argument("-v", "--verbose", action="count", default=0,
                            help="-v for debug logs and system info")
        parser.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
        parser.add_argument("--log-file", default=None, help="also write detailed logs to this file")
        parser.add_argument("--convention", choices=[c.value for c in LambdaConvention], default=None,
                            help="lambda-ring convention for L^(1/2) (default from DT_LAMBDA_CONVENTION)")
        parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
        subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
        subparsers.required = True
        setup_all(subparsers)
        return parser

    def _log_level(self, args: argparse.Namespace) -> int:
        if args.verbose:
            return logging.DEBUG
        if args.quiet:
            return logging.WARNING
        return getattr(config, "LOG_LEVEL", logging.INFO)

    def run(self, argv: Optional[List[str]] = None) -> int:
        args = self.parser.parse_args(argv)
        self.logger = setup_logging(config, level=self._log_level(args), log_file=args.log_file)
        if args.verbose:
            log_system_info(self.logger, config, {"dtcheck": VERSION, "Command": args.command})
        if args.convention:
            set_default_convention(LambdaConvention(args.convention))

        try:
            result: CommandResult = args.handler(args)
        except SearchSpaceTooLarge as e:
            self.logger.error(f"❌ {e}")
            return EXIT_CAP
        except (ValueError, OracleError, OSError) as e:
            self.logger.error(f"❌ {e}")
            return EXIT_USAGE
        except KeyboardInterrupt:
            self.logger.info("⌨️ Interrupted")
            return EXIT_FAILED

        emit(result, getattr(args, "format", "json"))
        return result.status


def main(argv: Optional[List[str]] = None) -> int:
    return CommandManager().run(argv)


if __name__ == "__main__":
    sys.exit(main())
