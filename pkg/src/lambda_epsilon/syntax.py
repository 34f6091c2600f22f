"""
Raw terms of the difference lambda-calculus.

Terms are locally nameless: free variables carry their names, bound variables
are de Bruijn indices counted from the innermost enclosing binder. Binder names
survive only as printing hints (they are excluded from equality), so two
alpha-equivalent terms are equal dataclasses.

Every public operation expects locally closed terms (no dangling indices);
`instantiate` and `abstract` are the only ways in and out of a binder.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Any

KEYWORDS = frozenset({"eps", "D"})


# Types


@dataclass(frozen=True)
class Base:
    name: str

    def __str__(self) -> str:
        return print_type(self)


@dataclass(frozen=True)
class Arrow:
    domain: Type
    codomain: Type

    def __str__(self) -> str:
        return print_type(self)


Type = Base | Arrow


def print_type(ty: Type) -> str:
    """Render a type; arrows associate to the right."""
    match ty:
        case Base(name):
            return name
        case Arrow(Arrow() as domain, codomain):
            return f"({print_type(domain)}) -> {print_type(codomain)}"
        case Arrow(domain, codomain):
            return f"{print_type(domain)} -> {print_type(codomain)}"
    raise TypeError(f"not a type: {ty!r}")


def type_order(ty: Type) -> int:
    match ty:
        case Base():
            return 0
        case Arrow(domain, codomain):
            return max(type_order(domain) + 1, type_order(codomain))
    raise TypeError(f"not a type: {ty!r}")


# Terms


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return print_term(self)


@dataclass(frozen=True)
class Bound:
    index: int


@dataclass(frozen=True)
class Lam:
    binder: str = field(compare=False)
    annotation: Type | None = field(compare=False)
    body: Term

    def __str__(self) -> str:
        return print_term(self)


@dataclass(frozen=True)
class App:
    fun: Term
    arg: Term

    def __str__(self) -> str:
        return print_term(self)


@dataclass(frozen=True)
class DApp:
    fun: Term
    arg: Term

    def __str__(self) -> str:
        return print_term(self)


@dataclass(frozen=True)
class Eps:
    body: Term

    def __str__(self) -> str:
        return print_term(self)


@dataclass(frozen=True)
class Sum:
    left: Term
    right: Term

    def __str__(self) -> str:
        return print_term(self)


@dataclass(frozen=True)
class Zero:
    def __str__(self) -> str:
        return "0"


ZERO = Zero()

Term = Var | Bound | Lam | App | DApp | Eps | Sum | Zero


# Binding


def instantiate(body: Term, value: Term, depth: int = 0) -> Term:
    """Replace the index bound at `depth` by the locally closed `value`."""
    match body:
        case Bound(index):
            if index == depth:
                return value
            if index > depth:
                return Bound(index - 1)
            return body
        case Var() | Zero():
            return body
        case Lam(binder, annotation, inner):
            return Lam(binder, annotation, instantiate(inner, value, depth + 1))
        case App(fun, arg):
            return App(instantiate(fun, value, depth), instantiate(arg, value, depth))
        case DApp(fun, arg):
            return DApp(instantiate(fun, value, depth), instantiate(arg, value, depth))
        case Eps(inner):
            return Eps(instantiate(inner, value, depth))
        case Sum(left, right):
            return Sum(instantiate(left, value, depth), instantiate(right, value, depth))
    raise TypeError(f"not a term: {body!r}")


def abstract(term: Term, name: str, depth: int = 0) -> Term:
    """Turn free occurrences of `name` into the index bound at `depth`."""
    match term:
        case Var(other):
            return Bound(depth) if other == name else term
        case Bound(index):
            return Bound(index + 1) if index >= depth else term
        case Zero():
            return term
        case Lam(binder, annotation, inner):
            return Lam(binder, annotation, abstract(inner, name, depth + 1))
        case App(fun, arg):
            return App(abstract(fun, name, depth), abstract(arg, name, depth))
        case DApp(fun, arg):
            return DApp(abstract(fun, name, depth), abstract(arg, name, depth))
        case Eps(inner):
            return Eps(abstract(inner, name, depth))
        case Sum(left, right):
            return Sum(abstract(left, name, depth), abstract(right, name, depth))
    raise TypeError(f"not a term: {term!r}")


def lam(name: str, body: Term, annotation: Type | None = None) -> Lam:
    """Build `\\name. body` from a body mentioning `name` as a free variable."""
    return Lam(name, annotation, abstract(body, name))


def fresh_name(hint: str, avoid: Iterable[str]) -> str:
    """Prime `hint` until it clashes with nothing in `avoid`."""
    taken = set(avoid)
    name = hint
    while name in taken or name in KEYWORDS:
        name += "'"
    return name


def open_binder(term: Lam, avoid: Iterable[str] = ()) -> tuple[str, Term]:
    """Open a lambda with a name fresh for its body and `avoid`."""
    name = fresh_name(term.binder, set(avoid) | free_vars(term.body))
    return name, instantiate(term.body, Var(name))


# Queries


def free_vars(term: Term) -> frozenset[str]:
    match term:
        case Var(name):
            return frozenset({name})
        case Bound() | Zero():
            return frozenset()
        case Lam(_, _, body) | Eps(body):
            return free_vars(body)
        case App(left, right) | DApp(left, right) | Sum(left, right):
            return free_vars(left) | free_vars(right)
    raise TypeError(f"not a term: {term!r}")


def alpha_eq(s: Term, t: Term) -> bool:
    return s == t


def size(term: Term) -> int:
    """Number of constructors in the tree."""
    match term:
        case Var() | Bound() | Zero():
            return 1
        case Lam(_, _, body) | Eps(body):
            return 1 + size(body)
        case App(left, right) | DApp(left, right) | Sum(left, right):
            return 1 + size(left) + size(right)
    raise TypeError(f"not a term: {term!r}")


def has_eps(term: Term) -> bool:
    match term:
        case Eps():
            return True
        case Var() | Bound() | Zero():
            return False
        case Lam(_, _, body):
            return has_eps(body)
        case App(left, right) | DApp(left, right) | Sum(left, right):
            return has_eps(left) or has_eps(right)
    raise TypeError(f"not a term: {term!r}")


def sum_of(terms: Iterable[Term]) -> Term:
    """Right-nested sum; the empty sum is 0."""
    items = list(terms)
    if not items:
        return ZERO
    result = items[-1]
    for item in reversed(items[:-1]):
        result = Sum(item, result)
    return result


def eps_power(term: Term, exponent: int) -> Term:
    for _ in range(exponent):
        term = Eps(term)
    return term


# Printing

_SUM, _APP, _PREFIX = 0, 1, 2


def print_term(term: Term) -> str:
    """Render with the fewest parentheses the grammar allows."""
    return _show(term, _SUM, True)


def _show(term: Term, level: int, rightmost: bool) -> str:
    match term:
        case Zero():
            return "0"
        case Var(name):
            return name
        case Bound(index):
            # Only reachable for terms with dangling indices.
            return f"#{index}"
        case Sum(left, right):
            wrap = level > _SUM
            text = f"{_show(left, _SUM, False)} + {_show(right, _APP, wrap or rightmost)}"
            return f"({text})" if wrap else text
        case App(fun, arg):
            wrap = level > _APP
            text = f"{_show(fun, _APP, False)} {_show(arg, _PREFIX, wrap or rightmost)}"
            return f"({text})" if wrap else text
        case Eps(body):
            return f"eps {_show(body, _PREFIX, rightmost)}"
        case DApp(fun, arg):
            return f"D({_show(fun, _SUM, True)}) * {_show(arg, _PREFIX, rightmost)}"
        case Lam(_, annotation, _):
            name, opened = open_binder(term)
            typed = f":{print_type(annotation)}" if annotation is not None else ""
            text = f"\\{name}{typed}. {_show(opened, _SUM, True)}"
            return text if rightmost else f"({text})"
    raise TypeError(f"not a term: {term!r}")


def to_json(term: Term) -> dict[str, Any]:
    """JSON AST export; binder names match `print_term`."""
    match term:
        case Zero():
            return {"tag": "zero"}
        case Var(name):
            return {"tag": "var", "name": name}
        case Lam(_, annotation, _):
            name, opened = open_binder(term)
            return {
                "tag": "lam",
                "binder": name,
                "annotation": print_type(annotation) if annotation is not None else None,
                "body": to_json(opened),
            }
        case App(fun, arg):
            return {"tag": "app", "fun": to_json(fun), "arg": to_json(arg)}
        case DApp(fun, arg):
            return {"tag": "dapp", "fun": to_json(fun), "arg": to_json(arg)}
        case Eps(body):
            return {"tag": "eps", "body": to_json(body)}
        case Sum(left, right):
            return {"tag": "sum", "left": to_json(left), "right": to_json(right)}
    raise TypeError(f"cannot export {term!r}")
