"""
effbasis — command-line entry point.
"""

import sys

from effbasis.cli.commands import build_parser
from effbasis.core.config import settings
from effbasis.core.logging import configure_logging


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = "DEBUG" if args.verbose else settings.LOG_LEVEL
    configure_logging(level, json=settings.LOG_JSON)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
