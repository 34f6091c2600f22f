"""
Evaluation of typed terms in finite Abelian groups.

Base types denote cyclic groups Z_n, arrow types denote every function between
carriers (stored as exhaustive tables), sums are pointwise, eps is the identity
and the difference operator is the finite difference f(x + u) - f(x).
"""

from __future__ import annotations

import math
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Any

import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .errors import (
    CarrierTooLargeError,
    ModelInvariantError,
    TermSyntaxError,
    UnknownBaseTypeError,
)
from .logging_config import get_logger
from .syntax import (
    App,
    Arrow,
    Base,
    DApp,
    Eps,
    Lam,
    Sum,
    Term,
    Type,
    Var,
    Zero,
    open_binder,
    print_type,
)
from .typecheck import TypeChecker, TypingContext, check

logger = get_logger(__name__)

DEFAULT_SIZE_LIMIT = 2**16


class ModelConfig(BaseModel):
    """Moduli for base types and the largest carrier the evaluator may build."""

    model_config = ConfigDict(extra="forbid")

    base_assignment: dict[str, int] = Field(default_factory=lambda: {"a": 3})
    size_limit: int = Field(default=DEFAULT_SIZE_LIMIT, ge=1)

    @field_validator("base_assignment")
    @classmethod
    def validate_moduli(cls, v: dict[str, int]) -> dict[str, int]:
        for name, modulus in v.items():
            if modulus < 1:
                raise ValueError(f"modulus for '{name}' must be at least 1")
        return v


# Semantic types


@dataclass(frozen=True)
class GroupT:
    modulus: int

    @property
    def size(self) -> int:
        return self.modulus

    def element(self, index: int) -> GroupElem:
        return GroupElem(self.modulus, index)

    def index_of(self, value: SemValue) -> int:
        if not isinstance(value, GroupElem) or value.modulus != self.modulus:
            raise ModelInvariantError(f"{value!r} is not an element of Z_{self.modulus}")
        return value.residue

    def carrier(self) -> Iterator[SemValue]:
        for residue in range(self.modulus):
            yield GroupElem(self.modulus, residue)


@dataclass(frozen=True)
class FuncT:
    domain: SemType
    codomain: SemType

    @cached_property
    def size(self) -> int:
        return self.codomain.size ** self.domain.size

    def element(self, index: int) -> FuncTable:
        # Mixed radix, last entry varying fastest (itertools.product order).
        base = self.codomain.size
        digits = []
        for _ in range(self.domain.size):
            index, digit = divmod(index, base)
            digits.append(digit)
        return FuncTable(
            self.domain, tuple(self.codomain.element(d) for d in reversed(digits))
        )

    def index_of(self, value: SemValue) -> int:
        if not isinstance(value, FuncTable) or len(value.entries) != self.domain.size:
            raise ModelInvariantError(f"{value!r} is not a table over the expected domain")
        index = 0
        for entry in value.entries:
            index = index * self.codomain.size + self.codomain.index_of(entry)
        return index

    def carrier(self) -> Iterator[SemValue]:
        domain_size = self.domain.size
        for entries in product(list(self.codomain.carrier()), repeat=domain_size):
            yield FuncTable(self.domain, entries)


SemType = GroupT | FuncT


# Semantic values


@dataclass(frozen=True)
class GroupElem:
    modulus: int
    residue: int


@dataclass(frozen=True)
class FuncTable:
    domain: SemType
    entries: tuple[SemValue, ...]

    def __call__(self, arg: SemValue) -> SemValue:
        return self.entries[self.domain.index_of(arg)]


SemValue = GroupElem | FuncTable


def val_add(u: SemValue, v: SemValue) -> SemValue:
    match u, v:
        case GroupElem(n, a), GroupElem(m, b) if n == m:
            return GroupElem(n, (a + b) % n)
        case FuncTable(domain, left), FuncTable(other, right) if (
            domain == other and len(left) == len(right)
        ):
            return FuncTable(domain, tuple(map(val_add, left, right)))
    raise ModelInvariantError(f"cannot add {u!r} and {v!r}")


def val_neg(u: SemValue) -> SemValue:
    match u:
        case GroupElem(n, a):
            return GroupElem(n, (-a) % n)
        case FuncTable(domain, entries):
            return FuncTable(domain, tuple(map(val_neg, entries)))
    raise ModelInvariantError(f"cannot negate {u!r}")


def val_sub(u: SemValue, v: SemValue) -> SemValue:
    return val_add(u, val_neg(v))


def val_zero(ty: SemType) -> SemValue:
    match ty:
        case GroupT(n):
            return GroupElem(n, 0)
        case FuncT(domain, codomain):
            return FuncTable(domain, (val_zero(codomain),) * domain.size)
    raise ModelInvariantError(f"not a semantic type: {ty!r}")


def val_eps(u: SemValue) -> SemValue:
    return u


def denote_type(ty: Type, cfg: ModelConfig) -> SemType:
    """Carrier of a type; refuses carriers larger than cfg.size_limit."""
    match ty:
        case Base(name):
            if name not in cfg.base_assignment:
                raise UnknownBaseTypeError(name)
            sem: SemType = GroupT(cfg.base_assignment[name])
        case Arrow(domain, codomain):
            left = denote_type(domain, cfg)
            right = denote_type(codomain, cfg)
            if right.size > 1 and left.size * math.log2(right.size) > math.log2(
                cfg.size_limit
            ):
                raise CarrierTooLargeError(print_type(ty), cfg.size_limit)
            sem = FuncT(left, right)
        case _:
            raise TypeError(f"not a type: {ty!r}")
    if sem.size > cfg.size_limit:
        raise CarrierTooLargeError(print_type(ty), cfg.size_limit)
    return sem


class Evaluator:
    """Compositional interpreter; caches carriers and application typings."""

    def __init__(self, cfg: ModelConfig):
        self.cfg = cfg
        self.checker = TypeChecker()
        self._carriers: dict[Type, SemType] = {}
        self._domains: dict[tuple, Type | None] = {}

    def denote(self, ty: Type) -> SemType:
        if ty not in self._carriers:
            self._carriers[ty] = denote_type(ty, self.cfg)
        return self._carriers[ty]

    def _domain(self, ctx: TypingContext, fun: Term, arg: Term, ty: Type) -> Type:
        key = (ctx, fun, arg, ty)
        if key not in self._domains:
            self._domains[key] = self.checker.application_domain(ctx, fun, arg, ty)
        domain = self._domains[key]
        if domain is None:
            raise ModelInvariantError("application is not typable")
        return domain

    def eval(
        self, ctx: TypingContext, env: Mapping[str, SemValue], t: Term, ty: Type
    ) -> SemValue:
        match t:
            case Zero():
                return val_zero(self.denote(ty))
            case Var(name):
                if name not in env:
                    raise ModelInvariantError(f"no value for '{name}'")
                return env[name]
            case Sum(left, right):
                return val_add(self.eval(ctx, env, left, ty), self.eval(ctx, env, right, ty))
            case Eps(body):
                return val_eps(self.eval(ctx, env, body, ty))
            case Lam():
                if not isinstance(ty, Arrow):
                    raise ModelInvariantError("abstraction at a base type")
                self.denote(ty)
                domain = self.denote(ty.domain)
                name, opened = open_binder(t, (n for n, _ in ctx))
                inner = ctx + ((name, ty.domain),)
                return FuncTable(
                    domain,
                    tuple(
                        self.eval(inner, {**env, name: v}, opened, ty.codomain)
                        for v in domain.carrier()
                    ),
                )
            case App(fun, arg):
                domain_type = self._domain(ctx, fun, arg, ty)
                table = self.eval(ctx, env, fun, Arrow(domain_type, ty))
                value = self.eval(ctx, env, arg, domain_type)
                if not isinstance(table, FuncTable):
                    raise ModelInvariantError("applying a group element")
                return table(value)
            case DApp(fun, arg):
                if not isinstance(ty, Arrow):
                    raise ModelInvariantError("differential application at a base type")
                table = self.eval(ctx, env, fun, ty)
                shift = self.eval(ctx, env, arg, ty.domain)
                if not isinstance(table, FuncTable):
                    raise ModelInvariantError("differentiating a group element")
                domain = self.denote(ty.domain)
                return FuncTable(
                    domain,
                    tuple(
                        val_sub(table(val_add(y, shift)), table(y))
                        for y in domain.carrier()
                    ),
                )
        raise ModelInvariantError(f"cannot evaluate {t!r}")


def eval_term(
    ctx: Sequence[tuple[str, Type]],
    env: Sequence[SemValue],
    t: Term,
    ty: Type,
    cfg: ModelConfig,
) -> SemValue:
    """Denotation of t at ty under the environment env (one value per context entry)."""
    ctx = tuple(ctx)
    if len(env) != len(ctx):
        raise ModelInvariantError(f"{len(env)} values for a context of {len(ctx)}")
    if not check(ctx, t, ty):
        raise ModelInvariantError(f"term does not have type {print_type(ty)}")
    values = {name: value for (name, _), value in zip(ctx, env, strict=True)}
    return Evaluator(cfg).eval(ctx, values, t, ty)


def environments(
    ctx: Sequence[tuple[str, Type]], cfg: ModelConfig
) -> Iterator[tuple[SemValue, ...]]:
    """Every environment for ctx, in carrier order."""
    carriers = [list(denote_type(ty, cfg).carrier()) for _, ty in ctx]
    yield from product(*carriers)


def format_value(value: SemValue) -> str:
    match value:
        case GroupElem(_, residue):
            return str(residue)
        case FuncTable(domain, entries):
            pairs = (
                f"{format_value(arg)}↦{format_value(res)}"
                for arg, res in zip(domain.carrier(), entries, strict=True)
            )
            return "{" + ", ".join(pairs) + "}"
    raise ModelInvariantError(f"not a semantic value: {value!r}")


def parse_model_spec(text: str) -> dict[str, int]:
    """`a=Z3,b=Z2` to {"a": 3, "b": 2}."""
    assignment: dict[str, int] = {}
    for chunk in filter(None, (c.strip() for c in text.split(","))):
        name, sep, group = chunk.partition("=")
        group = group.strip()
        if not sep or not group.upper().startswith("Z") or not group[1:].isdigit():
            raise TermSyntaxError(f"model entry '{chunk}' is not of the form name=Zn")
        assignment[name.strip()] = int(group[1:])
    return assignment


def _to_value(raw: Any, sem: SemType, label: str) -> SemValue:
    match sem:
        case GroupT(n):
            if isinstance(raw, bool) or not isinstance(raw, int) or not 0 <= raw < n:
                raise TermSyntaxError(f"value of {label} must be a residue below {n}")
            return GroupElem(n, raw)
        case FuncT(domain, codomain):
            if not isinstance(raw, list) or len(raw) != domain.size:
                raise TermSyntaxError(
                    f"value of {label} must list {domain.size} table entries"
                )
            return FuncTable(domain, tuple(_to_value(r, codomain, label) for r in raw))
    raise ModelInvariantError(f"not a semantic type: {sem!r}")


def parse_env(
    text: str, ctx: Sequence[tuple[str, Type]], cfg: ModelConfig
) -> tuple[SemValue, ...]:
    """`z=1,f=[0,2,1]`: residues for base types, entry lists for tables."""
    try:
        raw = yaml.safe_load("{" + text.replace("=", ": ") + "}") if text.strip() else {}
    except yaml.YAMLError as exc:
        raise TermSyntaxError(f"cannot read environment '{text}'") from exc
    if not isinstance(raw, dict):
        raise TermSyntaxError(f"cannot read environment '{text}'")
    values = []
    for name, ty in ctx:
        if name not in raw:
            raise TermSyntaxError(f"no value given for '{name}'")
        values.append(_to_value(raw[name], denote_type(ty, cfg), name))
    return tuple(values)
