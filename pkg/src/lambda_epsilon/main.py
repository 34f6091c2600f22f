#!/usr/bin/env python3
"""
Command implementations for lambda-epsilon.

Each run_*_command renders its result through a CommandLogger and returns the
exit status: 0 success, 1 semantic negative (not equivalent, ill-typed, fuel
exhausted, failed checks), 2 usage, parse or configuration error, 3 violated
substitution or reduction precondition, 4 carrier too large.
"""

import json
import sys
from collections.abc import Callable
from pathlib import Path

from .axioms import check_cdc_axioms, check_lambda_axioms
from .canonical import canonicalize, diff_eq, embed, embed_basic, perm_normalize
from .cli import load_cli_config, setup_cli
from .config_loader import Config
from .docs_gen import regen_examples, stale_pages
from .enhanced_logging import CommandLogger
from .erasure import erase, erase_simulates
from .errors import (
    CarrierTooLargeError,
    FreeVariableCaptureError,
    LambdaEpsilonError,
    ModelInvariantError,
    NotAReductionError,
    TermSyntaxError,
    UnknownBaseTypeError,
    UsageError,
)
from .logging_config import get_logger, setup_logging
from .model import environments, eval_term, format_value, parse_env
from .parsers import parse, parse_context, parse_type
from .reduction import normalize, step, wf_step
from .schema import ValidationError
from .subst import dsubst, subst
from .syntax import Term, Var, print_term, print_type, to_json
from .testkit import SUITES, run_suite
from .typecheck import TypeChecker, format_context

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_CARRIER = 4

MAX_REPORTED_FAILURES = 10


def read_source(path: str) -> str:
    """Read a term file; '-' reads standard input."""
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def read_terms(args, expected: int) -> list[Term]:
    """Parse the inline terms then the input files, in that order."""
    sources = [(f"-e #{i}", text) for i, text in enumerate(args.expr, 1)]
    sources += [(path, read_source(path)) for path in args.inputs]
    if not sources and expected == 1:
        sources = [("-", read_source("-"))]
    if len(sources) != expected:
        raise UsageError(
            f"{args.command} expects {expected} term(s), got {len(sources)}"
        )
    terms = []
    for label, text in sources:
        try:
            terms.append(parse(text))
        except TermSyntaxError as e:
            raise TermSyntaxError(f"{label}: {e}") from e
    return terms


def _canonical_text(t: Term) -> str:
    return print_term(embed(perm_normalize(canonicalize(t))))


def run_parse_command(args, config: Config, out: CommandLogger) -> int:
    (t,) = read_terms(args, 1)
    ast = to_json(t)
    if args.ast:
        out.line(json.dumps(ast, ensure_ascii=False, indent=2))
    else:
        out.line(print_term(t))
    return out.finish({"term": print_term(t), "ast": ast}, EXIT_OK)


def run_canon_command(args, config: Config, out: CommandLogger) -> int:
    (t,) = read_terms(args, 1)
    canon = perm_normalize(canonicalize(t))
    text = print_term(embed(canon))
    out.line(text)
    summands = [
        {"eps": s.exponent, "term": print_term(embed_basic(s.body))} for s in canon
    ]
    return out.finish({"term": text, "summands": summands}, EXIT_OK)


def run_equiv_command(args, config: Config, out: CommandLogger) -> int:
    left, right = read_terms(args, 2)
    equivalent = diff_eq(left, right)
    left_text, right_text = _canonical_text(left), _canonical_text(right)
    out.line("equivalent" if equivalent else "not equivalent")
    if not equivalent:
        out.diagnostic(f"left:  {left_text}")
        out.diagnostic(f"right: {right_text}")
    result = {"equivalent": equivalent, "left": left_text, "right": right_text}
    return out.finish(result, EXIT_OK if equivalent else EXIT_NEGATIVE)


def run_reduce_command(args, config: Config, out: CommandLogger) -> int:
    (t,) = read_terms(args, 1)
    if args.classes:
        classes = wf_step(t)
        texts = [print_term(embed(c)) for c in classes]
        for text in texts:
            out.line(text)
        if not texts:
            out.diagnostic("no redex")
        return out.finish({"successors": [{"term": x} for x in texts]}, EXIT_OK)

    successors = []
    for redex in step(t):
        text = print_term(redex.result)
        out.line(f"# {redex.kind} at {redex.location}", style="dim")
        out.line(text)
        successors.append(
            {"kind": redex.kind, "path": list(redex.path), "term": text}
        )
    if not successors:
        out.diagnostic("no redex")
    return out.finish({"successors": successors}, EXIT_OK)


def run_normalize_command(args, config: Config, out: CommandLogger) -> int:
    (t,) = read_terms(args, 1)
    result = normalize(t, config.fuel)
    if result.normal_form is None:
        out.diagnostic(f"fuel exhausted after {result.steps} steps")
        return out.finish(
            {"normal_form": None, "steps": result.steps, "exhausted": True},
            EXIT_NEGATIVE,
        )
    text = print_term(embed(result.normal_form))
    out.line(text)
    out.line(f"# steps: {result.steps}", style="dim")
    return out.finish(
        {"normal_form": text, "steps": result.steps, "exhausted": False}, EXIT_OK
    )


def run_subst_command(args, config: Config, out: CommandLogger) -> int:
    (t,) = read_terms(args, 1)
    variable = parse(args.var)
    if not isinstance(variable, Var):
        raise UsageError(f"'{args.var}' is not a variable")
    replacement = parse(args.replacement)
    if args.differential:
        result = dsubst(t, variable.name, replacement)
    else:
        result = subst(t, variable.name, replacement)
    text = print_term(result)
    out.line(text)
    return out.finish({"term": text, "differential": args.differential}, EXIT_OK)


def run_typecheck_command(args, config: Config, out: CommandLogger) -> int:
    (t,) = read_terms(args, 1)
    ctx = parse_context(args.ctx)
    target = embed(canonicalize(t)) if args.whole_class else t
    checker = TypeChecker()
    if args.type_text is not None:
        ty = parse_type(args.type_text)
        typed = checker.check(ctx, target, ty)
    else:
        inferred = checker.infer(ctx, target)
        typed = inferred is not None
        ty = inferred
    if typed and ty is not None:
        judgement = f"|- {print_term(t)} : {print_type(ty)}"
        out.line(f"{format_context(ctx)} {judgement}" if ctx else judgement)
    else:
        out.line("ill-typed" if args.type_text is not None else "no type inferred")
        for message in checker.diagnostics:
            out.diagnostic(message)
    result = {
        "typed": typed,
        "type": print_type(ty) if typed and ty is not None else None,
        "context": format_context(ctx),
    }
    return out.finish(result, EXIT_OK if typed else EXIT_NEGATIVE)


def run_eval_command(args, config: Config, out: CommandLogger) -> int:
    (t,) = read_terms(args, 1)
    cfg = config.model_config()
    ctx = parse_context(args.ctx)
    ty = parse_type(args.type_text)
    checker = TypeChecker()
    if not checker.check(ctx, t, ty):
        out.line("ill-typed")
        for message in checker.diagnostics:
            out.diagnostic(message)
        return out.finish({"typed": False, "values": []}, EXIT_NEGATIVE)

    if args.env is not None:
        envs = [parse_env(args.env, ctx, cfg)]
    else:
        envs = list(environments(ctx, cfg))

    values = []
    for env in envs:
        value = format_value(eval_term(ctx, env, t, ty, cfg))
        shown = {name: format_value(v) for (name, _), v in zip(ctx, env, strict=True)}
        values.append({"env": shown, "value": value})

    if not ctx or args.env is not None:
        for entry in values:
            out.line(entry["value"])
    else:
        out.table(
            None,
            [name for name, _ in ctx] + ["value"],
            [[*entry["env"].values(), entry["value"]] for entry in values],
        )
    return out.finish({"typed": True, "values": values}, EXIT_OK)


def run_erase_command(args, config: Config, out: CommandLogger) -> int:
    (t,) = read_terms(args, 1)
    text = print_term(erase(t))
    out.line(text)
    if args.reduct is None:
        return out.finish({"term": text}, EXIT_OK)

    reduct = parse(args.reduct)
    simulated = erase_simulates(t, reduct, config.erasure_bound)
    verdict = {True: "simulated", False: "not simulated", None: "inconclusive"}[
        simulated
    ]
    out.line(f"# {verdict} within {config.erasure_bound} steps", style="dim")
    result = {"term": text, "simulated": simulated, "bound": config.erasure_bound}
    return out.finish(result, EXIT_OK if simulated else EXIT_NEGATIVE)


def run_axioms_command(args, config: Config, out: CommandLogger) -> int:
    cfg = config.axiom_config()
    checks = {"cdc": check_cdc_axioms, "lambda": check_lambda_axioms}
    families = list(checks) if args.family == "all" else [args.family]
    result = {}
    violations = 0
    for family in families:
        report = checks[family](cfg)
        summary = report.to_dict()
        result[family] = summary
        violations += len(report.violations)
        out.table(
            f"{family} identities over Z{cfg.modulus}",
            ["identity", "instances", "coverage", "violations"],
            [
                [
                    entry["name"],
                    str(entry["instances"]),
                    "exhaustive" if entry["exhaustive"] else "sampled",
                    str(entry["violations"]),
                ]
                for entry in summary["identities"]
            ],
        )
        for violation in report.violations[:MAX_REPORTED_FAILURES]:
            out.diagnostic(
                f"{violation.identity} {violation.shape}: {violation.maps}"
            )
    out.line(f"violations: {violations}")
    return out.finish(result, EXIT_OK if violations == 0 else EXIT_NEGATIVE)


def run_fuzz_command(args, config: Config, out: CommandLogger) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    gen = config.gen_config()
    options = config.suite_options()
    reports = [
        run_suite(name, args.count, gen, options, config.generation_workers)
        for name in names
    ]
    out.table(
        f"seeds {gen.seed}..{gen.seed + args.count - 1}, size <= {gen.max_size}",
        ["suite", "count", "passed", "failed", "skipped", "seconds"],
        [
            [
                r.suite,
                str(r.count),
                str(r.passed),
                str(r.failed),
                str(r.skipped),
                f"{r.elapsed:.2f}",
            ]
            for r in reports
        ],
    )
    for report in reports:
        for failure in report.failures[:MAX_REPORTED_FAILURES]:
            out.diagnostic(f"{report.suite} seed {failure.seed}: {failure.message}")
            for item in failure.instance:
                out.diagnostic(f"    {item}")
    ok = all(r.ok for r in reports)
    return out.finish(
        {"suites": [r.to_dict() for r in reports]}, EXIT_OK if ok else EXIT_NEGATIVE
    )


def run_docs_command(args, config: Config, out: CommandLogger) -> int:
    if args.check:
        stale = stale_pages(args.out)
        for name in stale:
            out.diagnostic(f"out of date: {args.out / name}")
        if not stale:
            out.line("up to date")
        return out.finish(
            {"stale": stale}, EXIT_OK if not stale else EXIT_NEGATIVE
        )
    written = regen_examples(args.out)
    for path in written:
        out.line(path.as_posix())
    return out.finish({"pages": [p.as_posix() for p in written]}, EXIT_OK)


COMMANDS: dict[str, Callable[..., int]] = {
    "parse": run_parse_command,
    "canon": run_canon_command,
    "equiv": run_equiv_command,
    "reduce": run_reduce_command,
    "normalize": run_normalize_command,
    "subst": run_subst_command,
    "typecheck": run_typecheck_command,
    "eval": run_eval_command,
    "erase": run_erase_command,
    "axioms": run_axioms_command,
    "fuzz": run_fuzz_command,
    "docs": run_docs_command,
}


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the application."""
    try:
        args = setup_cli(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    setup_logging(args.log_level, verbose=args.verbose)
    out = CommandLogger(args, args.command)

    try:
        config = load_cli_config(args)
        return COMMANDS[args.command](args, config, out)
    except (TermSyntaxError, UsageError, UnknownBaseTypeError) as e:
        return out.fail(type(e).__name__, str(e), EXIT_USAGE)
    except ValidationError as e:
        return out.fail("ConfigError", str(e), EXIT_USAGE)
    except (FreeVariableCaptureError, NotAReductionError) as e:
        return out.fail(type(e).__name__, str(e), EXIT_PRECONDITION)
    except CarrierTooLargeError as e:
        return out.fail(type(e).__name__, str(e), EXIT_CARRIER)
    except ModelInvariantError as e:
        logger.error(f"model invariant violated: {e}")
        return out.fail(type(e).__name__, str(e), EXIT_NEGATIVE)
    except LambdaEpsilonError as e:
        return out.fail(type(e).__name__, str(e), EXIT_NEGATIVE)
    except OSError as e:
        return out.fail("InputError", str(e), EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
