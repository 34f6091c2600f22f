"""
Translation into the differential lambda-calculus by deleting every eps-marked part.
"""

from __future__ import annotations

from .canonical import CanonicalTerm, canonicalize, perm_eq
from .errors import NotAReductionError
from .logging_config import get_logger
from .reduction import bounded_search, step
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
    has_eps,
    print_term,
)

logger = get_logger(__name__)


def erase(t: Term) -> Term:
    match t:
        case Var() | Bound() | Zero():
            return t
        case Eps():
            return ZERO
        case Lam(binder, annotation, body):
            return Lam(binder, annotation, erase(body))
        case App(fun, arg):
            return App(erase(fun), erase(arg))
        case DApp(fun, arg):
            return DApp(erase(fun), erase(arg))
        case Sum(left, right):
            return Sum(erase(left), erase(right))
    raise TypeError(f"not a term: {t!r}")


def is_eps_free(t: Term) -> bool:
    return not has_eps(t)


def _primal_part(t: CanonicalTerm) -> CanonicalTerm:
    return CanonicalTerm(tuple(s for s in t if s.exponent == 0))


def erased_eq(s: Term, t: Term) -> bool:
    """Equality in the differential lambda-calculus, for eps-free s and t.

    Canonical forms are compared without their eps-weighted summands: on eps-free
    input those only come from D(s) * (t + e), whose correction term the
    differential lambda-calculus does not have.
    """
    return perm_eq(_primal_part(canonicalize(s)), _primal_part(canonicalize(t)))


def erase_simulates(s: Term, reduct: Term, bound: int) -> bool | None:
    """Whether erase(s) reduces to a term equivalent to erase(reduct).

    Returns None when `bound` steps were not enough to decide.

    Raises:
        NotAReductionError: if reduct is not a one-step reduct of s
    """
    if reduct not in step(s).terms:
        raise NotAReductionError(
            f"{print_term(reduct)} is not a one-step reduct of {print_term(s)}"
        )
    target = erase(reduct)
    # Contracting a differential redex reintroduces eps corrections; they are
    # erased again before comparing.
    result = bounded_search(erase(s), lambda u: erased_eq(erase(u), target), bound)
    logger.debug(f"erasure simulation within {bound} steps: {result}")
    return result
