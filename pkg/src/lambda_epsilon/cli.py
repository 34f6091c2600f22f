#!/usr/bin/env python3
"""
CLI parsing and argument handling for lambda-epsilon.

Contains all CLI parsing and argument handling including:
- argparse setup and configuration
- subcommands definition
- help and version handling
"""

import argparse
import sys
from pathlib import Path

from . import __version__
from .config_loader import Config, load_config
from .logging_config import get_logger
from .testkit import SUITES

# Initialize logger for this module
logger = get_logger(__name__)


def _common_parser() -> argparse.ArgumentParser:
    """Flags accepted before or after the subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json",
        action="store_true",
        default=argparse.SUPPRESS,
        help="Emit a single JSON object instead of text",
    )
    common.add_argument(
        "--quiet",
        action="store_true",
        default=argparse.SUPPRESS,
        help="No stdout output; the exit code still reports the outcome",
    )
    common.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=argparse.SUPPRESS,
        help="Level of log records written to stderr (default: WARNING)",
    )
    common.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=argparse.SUPPRESS,
        help="More log records on stderr: -v for INFO, -vv for DEBUG",
    )
    common.add_argument(
        "--config",
        type=Path,
        default=argparse.SUPPRESS,
        help="Path to config.yaml (default: config/config.yaml if present)",
    )
    common.add_argument(
        "--log-file",
        type=str,
        default=argparse.SUPPRESS,
        help="Append each command result as a JSONL line to this file",
    )
    return common


def _add_inputs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "inputs",
        nargs="*",
        metavar="FILE",
        help="Input file ('-' for standard input)",
    )
    parser.add_argument(
        "-e",
        "--expr",
        action="append",
        default=[],
        metavar="TERM",
        help="Term given inline (repeatable)",
    )


def build_parser() -> argparse.ArgumentParser:
    """Set up the command line interface with argparse."""
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="lambda-epsilon",
        description="Difference lambda-calculus toolkit: canonical forms, "
        "reduction, typing, finite models and property suites",
        parents=[common],
    )
    parser.add_argument(
        "--version", action="version", version=f"lambda-epsilon {__version__}"
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    parse_parser = subparsers.add_parser(
        "parse", parents=[common], help="Parse a term and print it back"
    )
    _add_inputs(parse_parser)
    parse_parser.add_argument(
        "--ast", action="store_true", help="Print the JSON syntax tree instead"
    )

    canon_parser = subparsers.add_parser(
        "canon", parents=[common], help="Print the canonical form of a term"
    )
    _add_inputs(canon_parser)

    equiv_parser = subparsers.add_parser(
        "equiv", parents=[common], help="Decide differential equivalence of two terms"
    )
    _add_inputs(equiv_parser)

    reduce_parser = subparsers.add_parser(
        "reduce", parents=[common], help="List the one-step reducts of a term"
    )
    _add_inputs(reduce_parser)
    reduce_parser.add_argument(
        "--classes",
        action="store_true",
        help="Reduce the equivalence class (canonical successors) instead",
    )

    normalize_parser = subparsers.add_parser(
        "normalize", parents=[common], help="Reduce a term to its normal form"
    )
    _add_inputs(normalize_parser)
    normalize_parser.add_argument(
        "--fuel", type=int, help="Maximum number of parallel steps (default: 10000)"
    )

    subst_parser = subparsers.add_parser(
        "subst", parents=[common], help="Standard or differential substitution"
    )
    _add_inputs(subst_parser)
    subst_parser.add_argument("--var", required=True, help="Variable to substitute")
    subst_parser.add_argument(
        "--with", dest="replacement", required=True, metavar="TERM", help="Term to insert"
    )
    subst_parser.add_argument(
        "--differential",
        action="store_true",
        help="Differential substitution (derivative along TERM)",
    )

    typecheck_parser = subparsers.add_parser(
        "typecheck", parents=[common], help="Check or infer the type of a term"
    )
    _add_inputs(typecheck_parser)
    typecheck_parser.add_argument(
        "--type", dest="type_text", metavar="TYPE", help="Type to check against"
    )
    typecheck_parser.add_argument(
        "--ctx", default="", metavar="CTX", help='Typing context, e.g. "x:a,f:a->a"'
    )
    typecheck_parser.add_argument(
        "--class",
        dest="whole_class",
        action="store_true",
        help="Type the equivalence class (canonical form) instead of the term",
    )

    eval_parser = subparsers.add_parser(
        "eval", parents=[common], help="Evaluate a typed term in the group model"
    )
    _add_inputs(eval_parser)
    eval_parser.add_argument(
        "--model", metavar="SPEC", help='Base type moduli, e.g. "a=Z3,b=Z2"'
    )
    eval_parser.add_argument(
        "--type", dest="type_text", required=True, metavar="TYPE", help="Type of the term"
    )
    eval_parser.add_argument("--ctx", default="", metavar="CTX", help="Typing context")
    eval_parser.add_argument(
        "--env",
        metavar="ENV",
        help='Values for the context, e.g. "z=1,f=[0,2,1]" (default: all environments)',
    )
    eval_parser.add_argument(
        "--size-limit", type=int, help="Largest carrier the evaluator may build"
    )

    erase_parser = subparsers.add_parser(
        "erase", parents=[common], help="Erase eps-marked parts of a term"
    )
    _add_inputs(erase_parser)
    erase_parser.add_argument(
        "--reduct",
        metavar="TERM",
        help="Check that erasure simulates this one-step reduct",
    )
    erase_parser.add_argument(
        "--bound", type=int, help="Search bound for --reduct (default: 8)"
    )

    axioms_parser = subparsers.add_parser(
        "axioms", parents=[common], help="Check the difference-category axioms"
    )
    axioms_parser.add_argument("--model", metavar="Zn", help="Carrier Z_n (default: Z2)")
    axioms_parser.add_argument(
        "--budget", type=int, help="Maximum instances per identity (default: 10000)"
    )
    axioms_parser.add_argument("--seed", type=int, help="Seed for sampled instances")
    axioms_parser.add_argument("--workers", type=int, help="Worker processes")
    axioms_parser.add_argument(
        "--family",
        choices=["cdc", "lambda", "all"],
        default="all",
        help="Which identities to check (default: all)",
    )

    fuzz_parser = subparsers.add_parser(
        "fuzz", parents=[common], help="Run a seeded property suite"
    )
    fuzz_parser.add_argument(
        "--suite", required=True, choices=[*SUITES, "all"], help="Suite to run"
    )
    fuzz_parser.add_argument(
        "--count", type=int, default=100, help="Number of instances (default: 100)"
    )
    fuzz_parser.add_argument("--seed", type=int, help="First seed (default: 0)")
    fuzz_parser.add_argument("--size", type=int, help="Maximum term size (default: 12)")
    fuzz_parser.add_argument("--type-depth", type=int, help="Maximum type depth")
    fuzz_parser.add_argument("--workers", type=int, help="Worker processes")
    fuzz_parser.add_argument("--fuel", type=int, help="Normalization fuel")
    fuzz_parser.add_argument("--bound", type=int, help="Erasure search bound")
    fuzz_parser.add_argument(
        "--model", metavar="SPEC", help='Base type moduli for soundness, e.g. "a=Z2"'
    )

    docs_parser = subparsers.add_parser(
        "docs", parents=[common], help="Regenerate the reference pages"
    )
    docs_parser.add_argument(
        "--out",
        type=Path,
        default=Path("docs/generated"),
        help="Output directory (default: docs/generated)",
    )
    docs_parser.add_argument(
        "--check",
        action="store_true",
        help="Only report pages that differ from freshly generated output",
    )

    return parser


def setup_cli(argv: list[str] | None = None) -> argparse.Namespace:
    """Parse arguments and fill in the global flags left unset."""
    parser = build_parser()
    args = parser.parse_args(argv)

    # If no command is specified, show help
    if args.command is None:
        parser.print_help(sys.stderr)
        raise SystemExit(2)

    for flag, default in (
        ("json", False),
        ("quiet", False),
        ("log_level", None),
        ("verbose", 0),
        ("config", None),
        ("log_file", None),
    ):
        if not hasattr(args, flag):
            setattr(args, flag, default)

    return args


def load_cli_config(args: argparse.Namespace) -> Config:
    """Load config.yaml and let CLI flags override it."""
    config = load_config(args.config)
    config.merge_with_cli_args(args)
    logger.debug(f"command {args.command} with config from {args.config or 'defaults'}")
    return config


def app():
    """Console script entry point."""
    from .main import main

    sys.exit(main())
