"""
Parsers for the surface syntax: terms, types, typing contexts.

The grammar is LALR; its two shift/reduce conflicts (on "+" and on
juxtaposition after a lambda body) resolve as shift, which is exactly
"a lambda body extends as far to the right as possible".
"""

from __future__ import annotations

import lark as L

from .errors import TermSyntaxError
from .logging_config import get_logger
from .syntax import ZERO, App, Arrow, Base, DApp, Eps, Sum, Term, Type, Var, lam

logger = get_logger(__name__)

GRAMMAR_EBNF = """\
term   := sum
sum    := app ("+" app)*
app    := prefix+
prefix := "eps" prefix | "D(" term ")" "*" prefix | atom
atom   := "0" | ident | "(" term ")" | "\\" ident (":" type)? "." term
type   := btype ("->" type)?
btype  := ident | "(" type ")"
ident  := [a-zA-Z_][a-zA-Z0-9_']*   (excluding the keywords eps and D)
"""

_LARK_GRAMMAR = r"""
?term_start: term
?type_start: type

?term: sum
?sum: app
    | sum "+" app                   -> add
?app: prefix
    | app prefix                    -> apply
?prefix: "eps" prefix               -> eps
    | "D" "(" term ")" "*" prefix   -> dapp
    | atom
?atom: "0"                          -> zero
    | IDENT                         -> var
    | "(" term ")"
    | "\\" IDENT [":" type] "." term -> lam

?type: btype
    | btype "->" type               -> arrow
?btype: IDENT                       -> base
    | "(" type ")"

IDENT: /(?!(?:eps|D)(?![a-zA-Z0-9_']))[a-zA-Z_][a-zA-Z0-9_']*/

%import common.WS
%ignore WS
"""


class _TermBuilder(L.Transformer):
    def add(self, items):
        return Sum(items[0], items[1])

    def apply(self, items):
        return App(items[0], items[1])

    def eps(self, items):
        return Eps(items[0])

    def dapp(self, items):
        return DApp(items[0], items[1])

    def zero(self, _items):
        return ZERO

    def var(self, items):
        return Var(str(items[0]))

    def lam(self, items):
        name, annotation, body = items
        return lam(str(name), body, annotation)

    def arrow(self, items):
        return Arrow(items[0], items[1])

    def base(self, items):
        return Base(str(items[0]))


_parser = L.Lark(
    _LARK_GRAMMAR,
    parser="lalr",
    start=["term_start", "type_start"],
    transformer=_TermBuilder(),
    maybe_placeholders=True,
)


def _run(text: str, start: str, what: str):
    try:
        return _parser.parse(text, start=start)
    except L.exceptions.UnexpectedEOF as exc:
        lines = text.splitlines() or [""]
        raise TermSyntaxError(
            f"unexpected end of {what}", len(lines), len(lines[-1]) + 1
        ) from exc
    except L.exceptions.UnexpectedInput as exc:
        line = exc.line if exc.line and exc.line > 0 else 1
        column = exc.column if exc.column and exc.column > 0 else 1
        logger.debug(f"{what} rejected at {line}:{column}")
        raise TermSyntaxError(f"unexpected input in {what}", line, column) from exc


def parse(text: str) -> Term:
    """Parse a term; free variables are legal."""
    return _run(text, "term_start", "term")


def parse_type(text: str) -> Type:
    return _run(text, "type_start", "type")


def parse_context(text: str) -> tuple[tuple[str, Type], ...]:
    """Parse `x:a,y:a->b` into an ordered typing context."""
    entries: list[tuple[str, Type]] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        name, sep, type_text = chunk.partition(":")
        name = name.strip()
        if not sep or not name:
            raise TermSyntaxError(f"context entry '{chunk}' is not of the form name:type")
        if name in ("eps", "D") or not (name[0].isalpha() or name[0] == "_"):
            raise TermSyntaxError(f"'{name}' is not a variable name")
        entries.append((name, parse_type(type_text)))
    return tuple(entries)
