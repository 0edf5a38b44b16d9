"""
Command-line entry point.

Usage:
    fraclab <command> --config <file> [--out <dir>] [--threads N]

Examples:
    fraclab selftest --config data/configs/selftest.json
    fraclab evolve --config data/configs/periodic_alpha05.json --out /tmp/run
"""

import argparse
import os
import sys
from typing import List, Optional

from fraclab.config.settings import settings
from fraclab.core.errors import ConfigError
from fraclab.tools.config import CommandName, load_config
from fraclab.tools.registry import CommandRegistry
from fraclab.utils.xlogger import logger

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2

COMMANDS = list(CommandName.__args__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fraclab",
        description="Numerical laboratory for blow-up in the fractional Euler-Alignment equation",
    )
    parser.add_argument("command", choices=COMMANDS, help="Experiment to run")
    parser.add_argument("--config", "-c", required=True, help="JSON experiment configuration")
    parser.add_argument("--out", "-o", default=None, help="Output directory (overrides output_dir)")
    parser.add_argument("--threads", "-t", type=int, default=None,
                        help="Sweep workers (falls back to FRACLAB_THREADS)")
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.XAPP_VERSION}")
    return parser


def resolve_out_dir(cli_out: Optional[str], config_out: Optional[str]) -> str:
    out_dir = cli_out or config_out or settings.OUTPUT_PATH
    os.makedirs(out_dir, exist_ok=True)
    return out_dir


def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one command and map its outcome to an exit status."""
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    if config.command != args.command:
        print(f"config error: {args.config} is a '{config.command}' config, not '{args.command}'",
              file=sys.stderr)
        return EXIT_CONFIG

    registry = CommandRegistry()
    entry = registry.get_command(args.command)
    command = entry.command
    if args.threads is not None and hasattr(command, "threads"):
        command.threads = args.threads
    if not command.validate_input(config):
        print(f"config error: {args.config} rejected by {args.command}", file=sys.stderr)
        return EXIT_CONFIG

    out_dir = resolve_out_dir(args.out, config.output_dir)
    logger.info(f"Running {args.command}", data={"config": args.config, "out": out_dir}, category="cli")
    result = command.execute(config, out_dir)

    for path in result.artifacts:
        print(path)
    if result.error:
        print(f"error: {result.error}", file=sys.stderr)
    for failure in result.failures:
        print(f"FAILED {failure}", file=sys.stderr)
    status = EXIT_OK if result.success else EXIT_FAILED
    logger.info(f"{args.command} finished with status {status}", category="cli")
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
