"""
Standard and differential substitution, and the syntactic Taylor expansion.

Both substitutions walk under binders without renaming: bound variables are
indices and the substituted terms are locally closed, so capture cannot occur.
"""

from __future__ import annotations

from collections.abc import Sequence

from .errors import FreeVariableCaptureError
from .syntax import (
    ZERO,
    App,
    Bound,
    DApp,
    Eps,
    Lam,
    Sum,
    Term,
    Var,
    Zero,
    free_vars,
)


def subst(t: Term, x: str, s: Term) -> Term:
    """t[x := s]."""
    match t:
        case Var(name):
            return s if name == x else t
        case Bound() | Zero():
            return t
        case Lam(binder, annotation, body):
            return Lam(binder, annotation, subst(body, x, s))
        case App(fun, arg):
            return App(subst(fun, x, s), subst(arg, x, s))
        case DApp(fun, arg):
            return DApp(subst(fun, x, s), subst(arg, x, s))
        case Eps(body):
            return Eps(subst(body, x, s))
        case Sum(left, right):
            return Sum(subst(left, x, s), subst(right, x, s))
    raise TypeError(f"not a term: {t!r}")


def _derive(t: Term, x: str, s: Term, shifted: Term) -> Term:
    match t:
        case Var(name):
            return s if name == x else ZERO
        case Bound() | Zero():
            return ZERO
        case Lam(binder, annotation, body):
            return Lam(binder, annotation, _derive(body, x, s, shifted))
        case App(fun, arg):
            return Sum(
                App(DApp(fun, _derive(arg, x, s, shifted)), arg),
                App(_derive(fun, x, s, shifted), subst(arg, x, shifted)),
            )
        case DApp(fun, arg):
            d_arg = _derive(arg, x, s, shifted)
            return Sum(
                Sum(
                    DApp(fun, d_arg),
                    DApp(_derive(fun, x, s, shifted), subst(arg, x, shifted)),
                ),
                Eps(DApp(DApp(fun, arg), d_arg)),
            )
        case Eps(body):
            return Eps(_derive(body, x, s, shifted))
        case Sum(left, right):
            return Sum(_derive(left, x, s, shifted), _derive(right, x, s, shifted))
    raise TypeError(f"not a term: {t!r}")


def dsubst(t: Term, x: str, s: Term) -> Term:
    """The differential substitution of s for x in t.

    Raises:
        FreeVariableCaptureError: if x occurs free in s
    """
    if x in free_vars(s):
        raise FreeVariableCaptureError(x)
    return _derive(t, x, s, Sum(Var(x), Eps(s)))


def dsubst_seq(t: Term, binders: Sequence[str], args: Sequence[Term]) -> Term:
    """Nested differential substitutions, innermost first."""
    if len(binders) != len(args):
        raise ValueError(
            f"{len(binders)} variables but {len(args)} directions in a nested derivative"
        )
    for x, u in zip(binders, args, strict=True):
        t = dsubst(t, x, u)
    return t


def taylor_rhs(s: Term, x: str, t: Term, e: Term) -> Term:
    """s[x:=t] + eps((ds/dx . e)[x:=t])."""
    if x in free_vars(e):
        raise FreeVariableCaptureError(x, "Taylor expansion")
    return Sum(subst(s, x, t), Eps(subst(dsubst(s, x, e), x, t)))
