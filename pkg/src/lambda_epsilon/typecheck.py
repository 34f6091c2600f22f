"""
Bidirectional checking of simple types.

`0` admits every type, sums and eps keep the type of their parts, and a
differential application D(s) * t has the arrow type of s. Binders may carry
annotations; an unannotated lambda can only be checked, never synthesised.

When neither side of an application synthesises, its argument type is solved
by first-order unification over type holes; holes left open are filled with a
base type of the goal, since any instance of a solution is a derivation.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .canonical import canonicalize, embed
from .logging_config import get_logger
from .syntax import (
    App,
    Arrow,
    Base,
    Bound,
    DApp,
    Eps,
    Lam,
    Sum,
    Term,
    Type,
    Var,
    Zero,
    open_binder,
    print_term,
    print_type,
)

logger = get_logger(__name__)

TypingContext = tuple[tuple[str, Type], ...]


def lookup(ctx: TypingContext, name: str) -> Type | None:
    for bound_name, ty in reversed(ctx):
        if bound_name == name:
            return ty
    return None


def format_context(ctx: TypingContext) -> str:
    return ",".join(f"{name}:{print_type(ty)}" for name, ty in ctx)


def _type_parts(ty: Type) -> Iterator[Type]:
    yield ty
    if isinstance(ty, Arrow):
        yield from _type_parts(ty.domain)
        yield from _type_parts(ty.codomain)


def _first_base(ty: Type) -> Type:
    return next(part for part in _type_parts(ty) if isinstance(part, Base))


@dataclass(frozen=True)
class Hole:
    """An unknown type while an argument type is being solved."""

    index: int


class Unifier:
    """Constraint solving for simple types containing holes."""

    def __init__(self) -> None:
        self.solution: dict[int, object] = {}
        self._count = 0

    def fresh(self) -> Hole:
        self._count += 1
        return Hole(self._count)

    def walk(self, ty):
        while isinstance(ty, Hole) and ty.index in self.solution:
            ty = self.solution[ty.index]
        return ty

    def _occurs(self, hole: Hole, ty) -> bool:
        ty = self.walk(ty)
        if ty == hole:
            return True
        if isinstance(ty, Arrow):
            return self._occurs(hole, ty.domain) or self._occurs(hole, ty.codomain)
        return False

    def unify(self, left, right) -> bool:
        left, right = self.walk(left), self.walk(right)
        if left == right:
            return True
        if isinstance(right, Hole) and not isinstance(left, Hole):
            left, right = right, left
        if isinstance(left, Hole):
            if self._occurs(left, right):
                return False
            self.solution[left.index] = right
            return True
        if isinstance(left, Arrow) and isinstance(right, Arrow):
            return self.unify(left.domain, right.domain) and self.unify(
                left.codomain, right.codomain
            )
        return False

    def resolve(self, ty, default: Type) -> Type:
        """Substitute the solution, filling open holes with `default`."""
        ty = self.walk(ty)
        if isinstance(ty, Hole):
            return default
        if isinstance(ty, Arrow):
            return Arrow(
                self.resolve(ty.domain, default), self.resolve(ty.codomain, default)
            )
        return ty

    def constrain(self, ctx: tuple, t: Term, ty) -> bool:
        """Record the constraints of a derivation of t : ty; False once unsolvable."""
        match t:
            case Zero():
                return True
            case Var(name):
                found = lookup(ctx, name)
                return found is not None and self.unify(found, ty)
            case Bound():
                return False
            case Sum(left, right):
                return self.constrain(ctx, left, ty) and self.constrain(ctx, right, ty)
            case Eps(body):
                return self.constrain(ctx, body, ty)
            case Lam(_, annotation, _):
                domain = annotation if annotation is not None else self.fresh()
                codomain = self.fresh()
                if not self.unify(ty, Arrow(domain, codomain)):
                    return False
                name, opened = open_binder(t, (bound for bound, _ in ctx))
                return self.constrain(ctx + ((name, domain),), opened, codomain)
            case DApp(fun, arg):
                domain = self.fresh()
                return (
                    self.unify(ty, Arrow(domain, self.fresh()))
                    and self.constrain(ctx, fun, ty)
                    and self.constrain(ctx, arg, domain)
                )
            case App(fun, arg):
                domain = self.fresh()
                return self.constrain(ctx, fun, Arrow(domain, ty)) and self.constrain(
                    ctx, arg, domain
                )
        raise TypeError(f"not a term: {t!r}")


class TypeChecker:
    """Checker that records why a judgement failed."""

    def __init__(self) -> None:
        self.diagnostics: list[str] = []

    def _fail(self, message: str) -> bool:
        self.diagnostics.append(message)
        return False

    def _probe(self, ctx: TypingContext, t: Term, ty: Type) -> bool:
        mark = len(self.diagnostics)
        ok = self.check(ctx, t, ty)
        del self.diagnostics[mark:]
        return ok

    def _open(self, ctx: TypingContext, t: Lam) -> tuple[str, Term]:
        return open_binder(t, (name for name, _ in ctx))

    def check(self, ctx: TypingContext, t: Term, ty: Type) -> bool:
        match t:
            case Zero():
                return True
            case Var(name):
                found = lookup(ctx, name)
                if found is None:
                    return self._fail(f"unbound variable '{name}'")
                if found != ty:
                    return self._fail(
                        f"'{name}' has type {print_type(found)}, expected {print_type(ty)}"
                    )
                return True
            case Bound(index):
                return self._fail(f"dangling bound index {index}")
            case Sum(left, right):
                return self.check(ctx, left, ty) and self.check(ctx, right, ty)
            case Eps(body):
                return self.check(ctx, body, ty)
            case Lam(_, annotation, _):
                if not isinstance(ty, Arrow):
                    return self._fail(
                        f"abstraction {print_term(t)} checked against {print_type(ty)}"
                    )
                if annotation is not None and annotation != ty.domain:
                    return self._fail(
                        f"binder annotated {print_type(annotation)}, "
                        f"expected {print_type(ty.domain)}"
                    )
                name, opened = self._open(ctx, t)
                return self.check(ctx + ((name, ty.domain),), opened, ty.codomain)
            case DApp(fun, arg):
                if not isinstance(ty, Arrow):
                    return self._fail(
                        f"differential application checked against {print_type(ty)}"
                    )
                return self.check(ctx, fun, ty) and self.check(ctx, arg, ty.domain)
            case App(fun, arg):
                return self.application_domain(ctx, fun, arg, ty) is not None
        raise TypeError(f"not a term: {t!r}")

    def application_domain(
        self, ctx: TypingContext, fun: Term, arg: Term, ty: Type
    ) -> Type | None:
        """The argument type that makes `fun arg` check at `ty`, if any."""
        fun_type = self.infer(ctx, fun)
        if fun_type is not None:
            if not isinstance(fun_type, Arrow):
                self._fail(f"{print_term(fun)} of type {print_type(fun_type)} is applied")
                return None
            if fun_type.codomain != ty:
                self._fail(
                    f"application yields {print_type(fun_type.codomain)}, "
                    f"expected {print_type(ty)}"
                )
                return None
            return fun_type.domain if self.check(ctx, arg, fun_type.domain) else None

        arg_type = self.infer(ctx, arg)
        if arg_type is not None:
            return arg_type if self.check(ctx, fun, Arrow(arg_type, ty)) else None

        unifier = Unifier()
        domain = unifier.fresh()
        if unifier.constrain(ctx, fun, Arrow(domain, ty)) and unifier.constrain(
            ctx, arg, domain
        ):
            candidate = unifier.resolve(domain, _first_base(ty))
            logger.debug(f"argument type {print_type(candidate)} solved by unification")
            if self._probe(ctx, arg, candidate) and self._probe(
                ctx, fun, Arrow(candidate, ty)
            ):
                return candidate
        self._fail(f"no argument type found for {print_term(App(fun, arg))}")
        return None

    def infer(self, ctx: TypingContext, t: Term) -> Type | None:
        match t:
            case Var(name):
                return lookup(ctx, name)
            case Lam(_, annotation, _):
                if annotation is None:
                    return None
                name, opened = self._open(ctx, t)
                codomain = self.infer(ctx + ((name, annotation),), opened)
                return Arrow(annotation, codomain) if codomain is not None else None
            case App(fun, arg):
                fun_type = self.infer(ctx, fun)
                if isinstance(fun_type, Arrow) and self._probe(ctx, arg, fun_type.domain):
                    return fun_type.codomain
                return None
            case DApp(fun, arg):
                fun_type = self.infer(ctx, fun)
                if isinstance(fun_type, Arrow) and self._probe(ctx, arg, fun_type.domain):
                    return fun_type
                return None
            case Eps(body):
                return self.infer(ctx, body)
            case Sum(left, right):
                ty = self.infer(ctx, left)
                if ty is not None:
                    return ty if self._probe(ctx, right, ty) else None
                ty = self.infer(ctx, right)
                if ty is not None and self._probe(ctx, left, ty):
                    return ty
                return None
        return None


def check(ctx: Sequence[tuple[str, Type]], t: Term, ty: Type) -> bool:
    return TypeChecker().check(tuple(ctx), t, ty)


def infer(ctx: Sequence[tuple[str, Type]], t: Term) -> Type | None:
    return TypeChecker().infer(tuple(ctx), t)


def check_wf(ctx: Sequence[tuple[str, Type]], t: Term, ty: Type) -> bool:
    """Typing of the differential-equivalence class of t."""
    return check(ctx, embed(canonicalize(t)), ty)


