"""
One-step, well-formed and parallel reduction, plus the fuel-bounded normalizer.

Redexes are (\\x. t) s, contracting to t[x:=s], and D(\\x. t) * s, contracting
to \\x. (dt/dx . s). Reduction under a binder opens it with a fresh name and
closes the result again, so contraction only ever sees locally closed terms.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .canonical import (
    BLam,
    CanonicalTerm,
    canonicalize,
    embed,
    embed_basic,
    perm_normalize,
    tower_orders,
)
from .logging_config import get_logger
from .subst import dsubst
from .syntax import (
    App,
    Bound,
    DApp,
    Eps,
    Lam,
    Sum,
    Term,
    Var,
    Zero,
    abstract,
    eps_power,
    free_vars,
    fresh_name,
    instantiate,
    open_binder,
    sum_of,
)

logger = get_logger(__name__)

DEFAULT_FUEL = 10_000

BETA = "beta"
PARTIAL = "partial"


@dataclass(frozen=True)
class Redex:
    """One contracted redex: its kind, where it sat, and the resulting term."""

    kind: str
    path: tuple[str, ...]
    result: Term

    @property
    def location(self) -> str:
        return ".".join(self.path) or "root"


@dataclass(frozen=True)
class StepResult:
    successors: tuple[Redex, ...]

    def __iter__(self) -> Iterator[Redex]:
        return iter(self.successors)

    def __len__(self) -> int:
        return len(self.successors)

    @property
    def terms(self) -> tuple[Term, ...]:
        return tuple(dict.fromkeys(r.result for r in self.successors))


@dataclass(frozen=True)
class NormalizationResult:
    normal_form: CanonicalTerm | None
    steps: int

    @property
    def exhausted(self) -> bool:
        return self.normal_form is None


def _close(original: Lam, name: str, body: Term) -> Lam:
    return Lam(original.binder, original.annotation, abstract(body, name))


def contract_beta(fun: Lam, arg: Term) -> Term:
    return instantiate(fun.body, arg)


def contract_partial(fun: Lam, arg: Term) -> Term:
    """D(\\x. t) * s  =>  \\x. dt/dx . s"""
    name = fresh_name(fun.binder, free_vars(fun.body) | free_vars(arg))
    return _close(fun, name, dsubst(instantiate(fun.body, Var(name)), name, arg))


def _redexes(t: Term, path: tuple[str, ...]) -> Iterator[Redex]:
    match t:
        case App(Lam() as fun, arg):
            yield Redex(BETA, path, contract_beta(fun, arg))
        case DApp(Lam() as fun, arg):
            yield Redex(PARTIAL, path, contract_partial(fun, arg))

    match t:
        case Lam():
            name, opened = open_binder(t)
            for r in _redexes(opened, path + ("body",)):
                yield Redex(r.kind, r.path, _close(t, name, r.result))
        case App(fun, arg) | DApp(fun, arg):
            rebuild = type(t)
            for r in _redexes(fun, path + ("fun",)):
                yield Redex(r.kind, r.path, rebuild(r.result, arg))
            for r in _redexes(arg, path + ("arg",)):
                yield Redex(r.kind, r.path, rebuild(fun, r.result))
        case Eps(body):
            for r in _redexes(body, path + ("eps",)):
                yield Redex(r.kind, r.path, Eps(r.result))
        case Sum(left, right):
            for r in _redexes(left, path + ("left",)):
                yield Redex(r.kind, r.path, Sum(r.result, right))
            for r in _redexes(right, path + ("right",)):
                yield Redex(r.kind, r.path, Sum(left, r.result))


def step(t: Term) -> StepResult:
    """All one-step reducts of t, each tagged with its redex kind and position."""
    return StepResult(tuple(_redexes(t, ())))


def has_redex(t: Term) -> bool:
    match t:
        case App(Lam(), _) | DApp(Lam(), _):
            return True
        case Lam(_, _, body) | Eps(body):
            return has_redex(body)
        case App(left, right) | DApp(left, right) | Sum(left, right):
            return has_redex(left) or has_redex(right)
    return False


def representative_steps(canon: CanonicalTerm) -> Iterator[tuple[Term, Term]]:
    """(representative, one-step reduct) pairs over all tower argument orders."""
    pieces = [eps_power(embed_basic(s.body), s.exponent) for s in canon]
    for i, summand in enumerate(canon):
        if not has_redex(pieces[i]):
            continue
        for variant in tower_orders(summand.body):
            basic = embed_basic(variant)
            representative = sum_of(
                pieces[:i] + [eps_power(basic, summand.exponent)] + pieces[i + 1 :]
            )
            for redex in _redexes(basic, ()):
                reduct = eps_power(redex.result, summand.exponent)
                yield representative, sum_of(pieces[:i] + [reduct] + pieces[i + 1 :])


def wf_step(t: Term) -> tuple[CanonicalTerm, ...]:
    """One-step reducts of the differential-equivalence class of t."""
    found: dict[CanonicalTerm, None] = {}
    for _representative, reduct in representative_steps(canonicalize(t)):
        found[perm_normalize(canonicalize(reduct))] = None
    logger.debug(f"well-formed step produced {len(found)} classes")
    return tuple(found)


def fpr(t: Term) -> Term:
    """Full parallel reduct: fire every redex of t at once."""
    match t:
        case Var() | Bound() | Zero():
            return t
        case Lam():
            name, opened = open_binder(t)
            return _close(t, name, fpr(opened))
        case App(fun, arg):
            fun, arg = fpr(fun), fpr(arg)
            return contract_beta(fun, arg) if isinstance(fun, Lam) else App(fun, arg)
        case DApp(fun, arg):
            fun, arg = fpr(fun), fpr(arg)
            return contract_partial(fun, arg) if isinstance(fun, Lam) else DApp(fun, arg)
        case Eps(body):
            return Eps(fpr(body))
        case Sum(left, right):
            return Sum(fpr(left), fpr(right))
    raise TypeError(f"not a term: {t!r}")


@lru_cache(maxsize=4096)
def parallel_reducts(t: Term) -> frozenset[Term]:
    """Every t' with t => t' in the parallel reduction relation."""
    match t:
        case Var() | Bound() | Zero():
            return frozenset({t})
        case Lam():
            name, opened = open_binder(t)
            return frozenset(_close(t, name, r) for r in parallel_reducts(opened))
        case Eps(body):
            return frozenset(Eps(r) for r in parallel_reducts(body))
        case Sum(left, right):
            return frozenset(
                Sum(a, b) for a, b in product(parallel_reducts(left), parallel_reducts(right))
            )
        case App(fun, arg) | DApp(fun, arg):
            rebuild = type(t)
            contract = contract_beta if isinstance(t, App) else contract_partial
            results: set[Term] = set()
            for f, a in product(parallel_reducts(fun), parallel_reducts(arg)):
                results.add(rebuild(f, a))
                if isinstance(f, Lam):
                    results.add(contract(f, a))
            return frozenset(results)
    raise TypeError(f"not a term: {t!r}")


def par_step_check(s: Term, t: Term) -> bool:
    return t in parallel_reducts(s)


def bounded_search(
    start: Term, goal: Callable[[Term], bool], bound: int
) -> bool | None:
    """Breadth-first search along one-step reduction.

    Returns True when a term satisfying `goal` is reached within `bound` steps,
    False when every path ends in a normal form first, None when the bound cuts
    the search short.
    """
    frontier = [start]
    seen = {start}
    for depth in range(bound + 1):
        if any(goal(term) for term in frontier):
            return True
        if depth == bound:
            break
        successors: list[Term] = []
        for term in frontier:
            for reduct in step(term).terms:
                if reduct not in seen:
                    seen.add(reduct)
                    successors.append(reduct)
        if not successors:
            return False
        frontier = successors
    logger.debug(f"search bound {bound} reached with {len(frontier)} open terms")
    return None


def reachable(s: Term, t: Term, bound: int) -> bool | None:
    return bounded_search(s, lambda u: u == t, bound)


def normalize(t: Term, fuel: int = DEFAULT_FUEL) -> NormalizationResult:
    """Alternate canonicalization and full parallel reduction until no redex is left."""
    current = t
    steps = 0
    while True:
        canon = canonicalize(current)
        term = embed(canon)
        if not has_redex(term):
            return NormalizationResult(perm_normalize(canon), steps)
        if steps >= fuel:
            logger.warning(f"normalization stopped after {steps} steps (fuel exhausted)")
            return NormalizationResult(None, steps)
        current = fpr(term)
        steps += 1


def is_canonical_value(t: CanonicalTerm) -> bool:
    return all(isinstance(s.body, BLam) for s in t)


