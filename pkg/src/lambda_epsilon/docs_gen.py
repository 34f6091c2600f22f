"""
Reference pages generated from the engine itself.

`regen_examples` writes four Markdown pages: the surface grammar, the rule
tables, a worked-examples gallery computed live, and an axiom report. Output
depends only on the code, so regenerating is byte-for-byte reproducible and the
committed pages double as golden files.
"""

from __future__ import annotations

from collections.abc import Callable
from pathlib import Path

from .axioms import AxiomConfig, AxiomReport, check_cdc_axioms, check_lambda_axioms
from .canonical import canonicalize, embed, embed_basic, perm_normalize
from .erasure import erase
from .logging_config import get_logger
from .model import ModelConfig, eval_term, format_value, parse_env
from .parsers import GRAMMAR_EBNF, parse, parse_context, parse_type
from .reduction import normalize, step
from .syntax import KEYWORDS, DApp, print_term, print_type
from .typecheck import infer

logger = get_logger(__name__)

HEADER = "<!-- Generated by `lambda-epsilon docs`; do not edit. -->\n\n"

CANON_EXAMPLE = "D(u) * (x + y + eps z)"
REDUCTION_EXAMPLES = ("(\\x. x) y", "D(\\x. x) * u")
ERASURE_EXAMPLES = ("x + eps y", "D(f) * eps u")
TYPING_EXAMPLES = ("\\x:a. x", "\\f:a -> a. \\x:a. f (f x)", "x")
EVAL_EXAMPLES = (
    # term, context, environment, type
    ("\\x:a. x + x", "", "", "a -> a"),
    ("D(\\x:a. x + x) * y", "y:a", "y=1", "a -> a"),
)
EVAL_MODEL = {"a": 3}
DOCS_AXIOM_BUDGET = 2_000


def _block(text: str) -> str:
    return "".join(f"    {line}\n" for line in text.splitlines())


def render_grammar() -> str:
    keywords = ", ".join(f"`{k}`" for k in sorted(KEYWORDS))
    return (
        HEADER
        + "# Surface grammar\n\n"
        + _block(GRAMMAR_EBNF)
        + "\n"
        + f"Reserved words: {keywords}.\n\n"
        + "A lambda body extends as far to the right as possible; application is\n"
        + "left-associative and binds tighter than `+`; `eps` and `D(_) * _` take a\n"
        + "single prefix operand.\n"
    )


EQUIVALENCE_RULES = (
    ("unit", "s + 0", "s"),
    ("comm", "s + t", "t + s"),
    ("assoc", "(s + t) + e", "s + (t + e)"),
    ("eps-zero", "eps 0", "0"),
    ("lam-zero", "\\x. 0", "0"),
    ("app-zero", "0 t", "0"),
    ("d-zero-fun", "D(0) * t", "0"),
    ("d-zero-arg", "D(s) * 0", "0"),
    ("eps-sum", "eps (s + t)", "eps s + eps t"),
    ("lam-sum", "\\x. s + t", "(\\x. s) + (\\x. t)"),
    ("lam-eps", "\\x. eps s", "eps (\\x. s)"),
    ("app-sum", "(s + t) e", "s e + t e"),
    ("app-eps", "(eps s) t", "eps (s t)"),
    ("d-sum-fun", "D(s + t) * e", "D(s) * e + D(t) * e"),
    ("d-eps-fun", "D(eps s) * e", "eps (D(s) * e)"),
    ("d-eps-arg", "D(s) * eps e", "eps (D(s) * e)"),
    ("d-sum-arg", "D(s) * (t + e)", "D(s) * t + D(s) * e + eps D(D(s) * t) * e"),
    ("d-swap", "D(D(s) * t) * e", "D(D(s) * e) * t"),
    ("saturation", "eps eps D(D(s) * t) * e", "eps D(D(s) * t) * e"),
    ("app-taylor", "s (t + eps e)", "s t + eps (D(s) * e t)"),
)

SUBSTITUTION_RULES = (
    ("x", "s"),
    ("y (y distinct from x)", "0"),
    ("0", "0"),
    ("\\y. t", "\\y. dt.s"),
    ("t u", "D(t) * du.s u + dt.s u'"),
    ("D(t) * u", "D(t) * du.s + D(dt.s) * u' + eps D(D(t) * u) * du.s"),
    ("eps t", "eps dt.s"),
    ("t + u", "dt.s + du.s"),
)

REDUCTION_RULES = (
    ("beta", "(\\x. t) s", "t[x := s]"),
    ("partial", "D(\\x. t) * s", "\\x. dt.s"),
)

TYPING_RULES = (
    "G |- 0 : T",
    "x : T in G  ==>  G |- x : T",
    "G, x : A |- t : B  ==>  G |- \\x. t : A -> B",
    "G |- s : A -> B  and  G |- t : A  ==>  G |- s t : B",
    "G |- s : A -> B  and  G |- t : A  ==>  G |- D(s) * t : A -> B",
    "G |- s : T  ==>  G |- eps s : T",
    "G |- s : T  and  G |- t : T  ==>  G |- s + t : T",
)


def _table(columns: list[str], rows: list[list[str]]) -> str:
    lines = [
        "| " + " | ".join(columns) + " |",
        "|" + "|".join("---" for _ in columns) + "|",
    ]
    lines.extend("| " + " | ".join(row) + " |" for row in rows)
    return "\n".join(lines) + "\n"


def render_rules() -> str:
    equivalence = _table(
        ["rule", "left", "right"],
        [[name, f"`{lhs}`", f"`{rhs}`"] for name, lhs, rhs in EQUIVALENCE_RULES],
    )
    substitution = _table(
        ["t", "dt.s"], [[f"`{t}`", f"`{d}`"] for t, d in SUBSTITUTION_RULES]
    )
    reduction = _table(
        ["redex", "term", "reduct"],
        [[name, f"`{lhs}`", f"`{rhs}`"] for name, lhs, rhs in REDUCTION_RULES],
    )
    return (
        HEADER
        + "# Rules\n\n"
        + "## Differential equivalence\n\n"
        + "Each rule holds in both directions, under any context.\n\n"
        + equivalence
        + "\n## Differential substitution\n\n"
        + "`dt.s` is the derivative of `t` in `x` along `s`, defined when `x` is not\n"
        + "free in `s`; `u'` abbreviates `u[x := x + eps s]`.\n\n"
        + substitution
        + "\n## Reduction\n\n"
        + "One-step reduction contracts a single redex anywhere in a term.\n\n"
        + reduction
        + "\n## Simple types\n\n"
        + _block("\n".join(TYPING_RULES))
    )


def render_examples() -> str:
    parts = [HEADER, "# Worked examples\n\n"]

    term = parse(CANON_EXAMPLE)
    direction = term.arg if isinstance(term, DApp) else term
    canon = perm_normalize(canonicalize(term))
    parts.append("## Canonical form of a differential application\n\n")
    parts.append("Input:\n\n" + _block(CANON_EXAMPLE) + "\n")
    parts.append(
        "Canonical form of the direction:\n\n"
        + _block(print_term(embed(canonicalize(direction))))
        + "\n"
    )
    parts.append(
        f"Canonical form ({len(canon)} summands, permutative normal form):\n\n"
        + _block(print_term(embed(canon)))
        + "\n"
    )
    parts.append(
        _table(
            ["#", "eps", "basic term"],
            [
                [str(i), str(s.exponent), f"`{print_term(embed_basic(s.body))}`"]
                for i, s in enumerate(canon, 1)
            ],
        )
    )

    parts.append("\n## Reduction\n")
    for text in REDUCTION_EXAMPLES:
        t = parse(text)
        rows = [[r.kind, r.location, f"`{print_term(r.result)}`"] for r in step(t)]
        result = normalize(t)
        parts.append(f"\n### `{print_term(t)}`\n\n")
        parts.append(_table(["kind", "position", "reduct"], rows))
        if result.normal_form is not None:
            parts.append(
                f"\nNormal form (parallel steps: {result.steps}):\n\n"
                + _block(print_term(embed(result.normal_form)))
            )

    parts.append("\n## Erasure\n\n")
    parts.append(
        _table(
            ["term", "erased"],
            [[f"`{text}`", f"`{print_term(erase(parse(text)))}`"] for text in ERASURE_EXAMPLES],
        )
    )

    parts.append("\n## Typing\n\n")
    rows = []
    for text in TYPING_EXAMPLES:
        ty = infer((), parse(text))
        rows.append([f"`{text}`", f"`{print_type(ty)}`" if ty is not None else "not typable"])
    parts.append(_table(["term", "inferred type"], rows))

    parts.append("\n## Group model\n\n")
    cfg = ModelConfig(base_assignment=EVAL_MODEL)
    model_text = ", ".join(f"{name} = Z{n}" for name, n in EVAL_MODEL.items())
    parts.append(f"Base types: {model_text}.\n\n")
    rows = []
    for text, ctx_text, env_text, type_text in EVAL_EXAMPLES:
        ctx = parse_context(ctx_text)
        env = parse_env(env_text, ctx, cfg)
        value = eval_term(ctx, env, parse(text), parse_type(type_text), cfg)
        rows.append(
            [f"`{text}`", ctx_text or "-", env_text or "-", type_text, format_value(value)]
        )
    parts.append(_table(["term", "context", "environment", "type", "value"], rows))
    return "".join(parts)


def _axiom_rows(report: AxiomReport) -> list[list[str]]:
    summary = report.to_dict()["identities"]
    return [
        [
            entry["name"],
            str(entry["instances"]),
            "exhaustive" if entry["exhaustive"] else "sampled",
            str(entry["violations"]),
        ]
        for entry in summary
    ]


def render_axioms() -> str:
    cfg = AxiomConfig(budget=DOCS_AXIOM_BUDGET)
    cdc = check_cdc_axioms(cfg)
    closed = check_lambda_axioms(cfg)
    columns = ["identity", "instances", "coverage", "violations"]
    return (
        HEADER
        + "# Axiom report\n\n"
        + f"Carrier Z{cfg.modulus}, at most {cfg.budget} instances per identity "
        + f"and shape, seed {cfg.seed}.\n\n"
        + "## Difference category\n\n"
        + _table(columns, _axiom_rows(cdc))
        + f"\nViolations: {len(cdc.violations)}.\n\n"
        + "## Closed structure\n\n"
        + _table(columns, _axiom_rows(closed))
        + f"\nViolations: {len(closed.violations)}.\n"
    )


PAGES: dict[str, Callable[[], str]] = {
    "grammar.md": render_grammar,
    "rules.md": render_rules,
    "examples.md": render_examples,
    "axioms.md": render_axioms,
}


def render_pages() -> dict[str, str]:
    return {name: render() for name, render in PAGES.items()}


def regen_examples(out_dir: Path) -> list[Path]:
    """Write every page under out_dir; returns the written paths."""
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, text in render_pages().items():
        path = out_dir / name
        path.write_text(text, encoding="utf-8", newline="\n")
        written.append(path)
        logger.info(f"wrote {path}")
    return written


def stale_pages(out_dir: Path) -> list[str]:
    """Names of pages under out_dir that differ from freshly rendered output."""
    stale = []
    for name, text in render_pages().items():
        path = out_dir / name
        if not path.exists() or path.read_text(encoding="utf-8") != text:
            stale.append(name)
    return stale
