"""
Canonical forms and the decision procedure for differential equivalence.

A canonical term is a list of summands eps^k b where b is a basic term:
a variable, a lambda over a basic body, an application of a basic head to an
additive (eps-free) sum, or a differential application of two basics. Two raw
terms are differentially equivalent iff their canonical forms agree up to
reordering of sums and of the arguments of differential towers.

Saturation: whenever a basic term contains a second differential D(D(s)*t)*e
in a linear position (lambda body, application head, either side of a
differential application) then eps^2 b ~ eps b, so its exponent is capped at 1.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from itertools import permutations, product

from .logging_config import get_logger
from .syntax import (
    App,
    Bound,
    DApp,
    Eps,
    Lam,
    Sum,
    Term,
    Type,
    Var,
    Zero,
    eps_power,
    print_term,
    sum_of,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class BVar:
    name: str


@dataclass(frozen=True)
class BBound:
    index: int


@dataclass(frozen=True)
class BLam:
    binder: str = field(compare=False)
    annotation: Type | None = field(compare=False)
    body: BasicTerm


@dataclass(frozen=True)
class BApp:
    fun: BasicTerm
    arg: AdditiveTerm


@dataclass(frozen=True)
class BDApp:
    fun: BasicTerm
    arg: BasicTerm


BasicTerm = BVar | BBound | BLam | BApp | BDApp
AdditiveTerm = tuple[BasicTerm, ...]


@dataclass(frozen=True)
class Summand:
    exponent: int
    body: BasicTerm


@dataclass(frozen=True)
class CanonicalTerm:
    summands: tuple[Summand, ...] = ()

    def __iter__(self) -> Iterator[Summand]:
        return iter(self.summands)

    def __len__(self) -> int:
        return len(self.summands)

    def __str__(self) -> str:
        return print_term(embed(self))


CANONICAL_ZERO = CanonicalTerm()


def absorbs_eps(body: BasicTerm) -> bool:
    """True when eps^2 body ~ eps body."""
    match body:
        case BDApp(BDApp(), _):
            return True
        case BDApp(fun, arg):
            return absorbs_eps(fun) or absorbs_eps(arg)
        case BLam(_, _, inner):
            return absorbs_eps(inner)
        case BApp(fun, _):
            return absorbs_eps(fun)
    return False


def _summand(exponent: int, body: BasicTerm) -> Summand:
    if exponent > 1 and absorbs_eps(body):
        exponent = 1
    return Summand(exponent, body)


def _canonical(summands: Iterable[Summand]) -> CanonicalTerm:
    return CanonicalTerm(tuple(summands))


def is_saturated(t: CanonicalTerm) -> bool:
    return all(s.exponent <= 1 or not absorbs_eps(s.body) for s in t)


# Operations on canonical terms


def cansum(s: CanonicalTerm, t: CanonicalTerm) -> CanonicalTerm:
    return CanonicalTerm(s.summands + t.summands)


def eps_star(t: CanonicalTerm) -> CanonicalTerm:
    return _canonical(_summand(s.exponent + 1, s.body) for s in t)


def _eps_star_power(t: CanonicalTerm, times: int) -> CanonicalTerm:
    for _ in range(times):
        t = eps_star(t)
    return t


def d_star(s: CanonicalTerm, t: BasicTerm) -> CanonicalTerm:
    return _canonical(_summand(item.exponent, BDApp(item.body, t)) for item in s)


def pri(t: CanonicalTerm) -> AdditiveTerm:
    return tuple(s.body for s in t if s.exponent == 0)


def tan(t: CanonicalTerm) -> CanonicalTerm:
    return _canonical(Summand(s.exponent - 1, s.body) for s in t if s.exponent > 0)


def ap(s: CanonicalTerm, t: AdditiveTerm) -> CanonicalTerm:
    return _canonical(_summand(item.exponent, BApp(item.body, t)) for item in s)


def reg(s: BasicTerm, t: CanonicalTerm) -> CanonicalTerm:
    """Expand D(s) over the sum t, adding the higher-difference corrections."""
    if not t.summands:
        return CANONICAL_ZERO
    first = t.summands[0]
    tail = reg(s, CanonicalTerm(t.summands[1:]))
    head = _eps_star_power(
        CanonicalTerm((Summand(0, BDApp(s, first.body)),)), first.exponent
    )
    correction = _eps_star_power(d_star(tail, first.body), first.exponent + 1)
    return cansum(cansum(head, tail), correction)


def canonicalize(t: Term) -> CanonicalTerm:
    match t:
        case Zero():
            return CANONICAL_ZERO
        case Var(name):
            return CanonicalTerm((Summand(0, BVar(name)),))
        case Bound(index):
            return CanonicalTerm((Summand(0, BBound(index)),))
        case Sum(left, right):
            return cansum(canonicalize(left), canonicalize(right))
        case Eps(body):
            return eps_star(canonicalize(body))
        case Lam(binder, annotation, body):
            return _canonical(
                _summand(s.exponent, BLam(binder, annotation, s.body))
                for s in canonicalize(body)
            )
        case DApp(fun, arg):
            direction = canonicalize(arg)
            result = CANONICAL_ZERO
            for head in canonicalize(fun):
                result = cansum(
                    result, _eps_star_power(reg(head.body, direction), head.exponent)
                )
            return result
        case App(fun, arg):
            heads = canonicalize(fun)
            argument = canonicalize(arg)
            primal, tangent = pri(argument), tan(argument)
            direct = _canonical(_summand(h.exponent, BApp(h.body, primal)) for h in heads)
            spread = CANONICAL_ZERO
            for head in heads:
                spread = cansum(
                    spread,
                    _eps_star_power(ap(reg(head.body, tangent), primal), head.exponent),
                )
            return cansum(direct, eps_star(spread))
    raise TypeError(f"not a term: {t!r}")


def embed_basic(b: BasicTerm) -> Term:
    match b:
        case BVar(name):
            return Var(name)
        case BBound(index):
            return Bound(index)
        case BLam(binder, annotation, body):
            return Lam(binder, annotation, embed_basic(body))
        case BApp(fun, arg):
            return App(embed_basic(fun), sum_of(embed_basic(a) for a in arg))
        case BDApp(fun, arg):
            return DApp(embed_basic(fun), embed_basic(arg))
    raise TypeError(f"not a basic term: {b!r}")


def embed(t: CanonicalTerm) -> Term:
    return sum_of(eps_power(embed_basic(s.body), s.exponent) for s in t)


# Permutative normal forms


def _key(b: BasicTerm) -> tuple:
    match b:
        case BVar(name):
            return (0, name)
        case BBound(index):
            return (1, index)
        case BLam(_, _, body):
            return (2, _key(body))
        case BApp(fun, arg):
            return (3, _key(fun), tuple(_key(a) for a in arg))
        case BDApp(fun, arg):
            return (4, _key(fun), _key(arg))
    raise TypeError(f"not a basic term: {b!r}")


def flatten_tower(b: BasicTerm) -> tuple[BasicTerm, list[BasicTerm]]:
    """Split D(...D(head)*t1...)*tl into head and [t1, ..., tl]."""
    args: list[BasicTerm] = []
    while isinstance(b, BDApp):
        args.append(b.arg)
        b = b.fun
    args.reverse()
    return b, args


def _rebuild_tower(head: BasicTerm, args: Iterable[BasicTerm]) -> BasicTerm:
    for arg in args:
        head = BDApp(head, arg)
    return head


def _normalize_basic(b: BasicTerm) -> BasicTerm:
    match b:
        case BVar() | BBound():
            return b
        case BLam(binder, annotation, body):
            return BLam(binder, annotation, _normalize_basic(body))
        case BApp(fun, arg):
            return BApp(
                _normalize_basic(fun), tuple(sorted(map(_normalize_basic, arg), key=_key))
            )
        case BDApp():
            head, args = flatten_tower(b)
            return _rebuild_tower(
                _normalize_basic(head), sorted(map(_normalize_basic, args), key=_key)
            )
    raise TypeError(f"not a basic term: {b!r}")


def perm_normalize(t: CanonicalTerm) -> CanonicalTerm:
    summands = [Summand(s.exponent, _normalize_basic(s.body)) for s in t]
    summands.sort(key=lambda s: (_key(s.body), s.exponent))
    return CanonicalTerm(tuple(summands))


def perm_eq(s: CanonicalTerm, t: CanonicalTerm) -> bool:
    return perm_normalize(s) == perm_normalize(t)


def diff_eq(s: Term, t: Term) -> bool:
    left, right = canonicalize(s), canonicalize(t)
    logger.debug(f"comparing canonical forms of {len(left)} and {len(right)} summands")
    return perm_eq(left, right)


def tower_orders(b: BasicTerm) -> list[BasicTerm]:
    """All basic terms obtained from `b` by reordering differential tower arguments."""
    match b:
        case BVar() | BBound():
            return [b]
        case BLam(binder, annotation, body):
            return [BLam(binder, annotation, v) for v in tower_orders(body)]
        case BApp(fun, arg):
            choices = product(tower_orders(fun), *(tower_orders(a) for a in arg))
            return list(dict.fromkeys(BApp(f, tuple(rest)) for f, *rest in choices))
        case BDApp():
            head, args = flatten_tower(b)
            variants = [tower_orders(a) for a in args]
            found: dict[BasicTerm, None] = {}
            for h in tower_orders(head):
                for order in permutations(range(len(args))):
                    for chosen in product(*(variants[i] for i in order)):
                        found[_rebuild_tower(h, chosen)] = None
            return list(found)
    raise TypeError(f"not a basic term: {b!r}")
