"""
Seeded generators for raw terms, typed terms and equivalent pairs, and the
property suites built on them.

Every generator draws from a `random.Random` seeded by `GenConfig.seed`, so a
(suite, seed, size) triple always reproduces the same instance. Suites shard
their seeds over worker processes and shrink failing instances greedily by
replacing subterms with 0.
"""

from __future__ import annotations

import math
import random
import time
from collections.abc import Callable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any

from .canonical import (
    canonicalize,
    diff_eq,
    embed,
    is_saturated,
    perm_eq,
    perm_normalize,
)
from .erasure import erase, erase_simulates, is_eps_free
from .errors import CarrierTooLargeError, LambdaEpsilonError
from .logging_config import current_level, get_logger, worker_initializer
from .model import ModelConfig, denote_type, environments, eval_term
from .reduction import (
    DEFAULT_FUEL,
    fpr,
    has_redex,
    is_canonical_value,
    normalize,
    parallel_reducts,
    representative_steps,
    step,
)
from .subst import dsubst, dsubst_seq, subst, taylor_rhs
from .syntax import (
    ZERO,
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
    fresh_name,
    free_vars,
    lam,
    print_term,
    print_type,
    type_order,
)
from .typecheck import TypingContext, check, format_context, lookup

logger = get_logger(__name__)

MAX_REWRITES = 5
ERASURE_BOUND = 8
_MAX_INHABIT_CALLS = 2_000
_MAX_SHRINK_ROUNDS = 200
_MAX_ENVIRONMENTS = 729


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_size: int = 12
    var_pool: tuple[str, ...] = ("x", "y", "z", "u", "v")
    type_depth: int = 3
    closed: bool = False
    base_types: tuple[str, ...] = ("a",)

    def __post_init__(self) -> None:
        if self.max_size < 1 or self.type_depth < 1:
            raise ValueError("max_size and type_depth must be at least 1")
        if not self.var_pool or not self.base_types:
            raise ValueError("var_pool and base_types must not be empty")

    def rng(self, salt: int = 0) -> random.Random:
        return random.Random(self.seed * 1_000_003 + salt)


def _weighted_order(rng: random.Random, weights: dict[str, float]) -> list[str]:
    """A random permutation of the keys, heavier keys tending to come first."""
    keyed = [(rng.random() ** (1.0 / w), name) for name, w in weights.items() if w > 0]
    return [name for _, name in sorted(keyed, reverse=True)]


# Raw terms

_TERM_WEIGHTS = {"app": 3.0, "dapp": 3.0, "lam": 2.0, "sum": 1.5, "eps": 1.0}


def _leaf(rng: random.Random, cfg: GenConfig, scope: Sequence[str]) -> Term:
    names = list(scope) if cfg.closed else list(dict.fromkeys([*cfg.var_pool, *scope]))
    if not names or rng.random() < 0.2:
        return ZERO
    return Var(rng.choice(names))


def _gen(rng: random.Random, cfg: GenConfig, size: int, scope: tuple[str, ...]) -> Term:
    if size <= 1:
        return _leaf(rng, cfg, scope)
    kind = _weighted_order(
        rng, {k: w for k, w in _TERM_WEIGHTS.items() if size >= 3 or k in ("lam", "eps")}
    )[0]
    if kind == "lam":
        name = rng.choice(cfg.var_pool)
        return lam(name, _gen(rng, cfg, size - 1, scope + (name,)))
    if kind == "eps":
        return Eps(_gen(rng, cfg, size - 1, scope))
    left = rng.randint(1, size - 2)
    build = {"app": App, "dapp": DApp, "sum": Sum}[kind]
    return build(_gen(rng, cfg, left, scope), _gen(rng, cfg, size - 1 - left, scope))


def gen_term(cfg: GenConfig) -> Term:
    """A raw term of at most cfg.max_size constructors."""
    rng = cfg.rng()
    return _gen(rng, cfg, rng.randint(1, cfg.max_size), ())


# Types and typed terms


def gen_type(rng: random.Random, depth: int, base_types: Sequence[str]) -> Type:
    if depth <= 1 or rng.random() < 0.5:
        return Base(rng.choice(list(base_types)))
    return Arrow(
        gen_type(rng, depth - 1, base_types), gen_type(rng, depth - 1, base_types)
    )


def _type_depth(ty: Type) -> int:
    if isinstance(ty, Arrow):
        return 1 + max(_type_depth(ty.domain), _type_depth(ty.codomain))
    return 1


class _Inhabitor:
    """Goal-directed search for a term of a given type, with bounded backtracking."""

    def __init__(self, rng: random.Random, cfg: GenConfig):
        self.rng = rng
        self.cfg = cfg
        self.calls = 0

    def _argument_type(self, ctx: TypingContext, ty: Type) -> Type:
        choices = [ty, *(Base(b) for b in self.cfg.base_types), *(t for _, t in ctx)]
        choices.append(gen_type(self.rng, self.cfg.type_depth - 1, self.cfg.base_types))
        allowed = [c for c in choices if _type_depth(Arrow(c, ty)) <= self.cfg.type_depth]
        return self.rng.choice(allowed or [Base(self.cfg.base_types[0])])

    def inhabit(self, ctx: TypingContext, ty: Type, size: int) -> Term | None:
        self.calls += 1
        if self.calls > _MAX_INHABIT_CALLS:
            return None
        variables = [name for name, _ in ctx if lookup(ctx, name) == ty]
        weights = {"var": 2.0 if variables else 0.0, "zero": 0.5}
        if size >= 2:
            weights |= {"lam": 4.0 if isinstance(ty, Arrow) else 0.0, "eps": 0.5}
        if size >= 3:
            weights |= {
                "app": 3.0,
                "dapp": 2.0 if isinstance(ty, Arrow) else 0.0,
                "sum": 1.0,
            }
        for kind in _weighted_order(self.rng, weights):
            found = self._build(kind, ctx, ty, size, variables)
            if found is not None:
                return found
        return None

    def _build(
        self, kind: str, ctx: TypingContext, ty: Type, size: int, variables: list[str]
    ) -> Term | None:
        rng = self.rng
        match kind:
            case "var":
                return Var(rng.choice(variables))
            case "zero":
                return ZERO
            case "eps":
                body = self.inhabit(ctx, ty, size - 1)
                return Eps(body) if body is not None else None
            case "lam":
                assert isinstance(ty, Arrow)
                name = fresh_name(rng.choice(self.cfg.var_pool), (n for n, _ in ctx))
                body = self.inhabit(ctx + ((name, ty.domain),), ty.codomain, size - 1)
                return lam(name, body, ty.domain) if body is not None else None
        left_size = rng.randint(1, size - 2)
        right_size = size - 1 - left_size
        match kind:
            case "sum":
                left = self.inhabit(ctx, ty, left_size)
                right = self.inhabit(ctx, ty, right_size) if left is not None else None
                return Sum(left, right) if right is not None else None
            case "dapp":
                assert isinstance(ty, Arrow)
                fun = self.inhabit(ctx, ty, left_size)
                arg = self.inhabit(ctx, ty.domain, right_size) if fun is not None else None
                return DApp(fun, arg) if arg is not None else None
            case "app":
                domain = self._argument_type(ctx, ty)
                fun = self.inhabit(ctx, Arrow(domain, ty), left_size)
                arg = self.inhabit(ctx, domain, right_size) if fun is not None else None
                return App(fun, arg) if arg is not None else None
        raise ValueError(f"unknown constructor kind '{kind}'")


def gen_typed_term(cfg: GenConfig, ctx: Sequence[tuple[str, Type]], ty: Type) -> Term | None:
    """A term checking at ty under ctx, or None when the search gives up."""
    ctx = tuple(ctx)
    rng = cfg.rng(salt=1)
    for _ in range(10):
        term = _Inhabitor(rng, cfg).inhabit(ctx, ty, rng.randint(1, cfg.max_size))
        if term is not None and check(ctx, term, ty):
            return term
    return None


def gen_context(
    rng: random.Random, cfg: GenConfig, entries: int, max_order: int = 1
) -> TypingContext:
    names = rng.sample(list(cfg.var_pool), min(entries, len(cfg.var_pool)))
    ctx: list[tuple[str, Type]] = []
    for name in names:
        ty = gen_type(rng, cfg.type_depth, cfg.base_types)
        while type_order(ty) > max_order:
            ty = gen_type(rng, cfg.type_depth, cfg.base_types)
        ctx.append((name, ty))
    return tuple(ctx)


# Positions


Path = tuple[int, ...]


def positions(t: Term, path: Path = ()) -> Iterator[tuple[Path, Term]]:
    """Every subterm with its path, parents before children."""
    yield path, t
    match t:
        case Lam(_, _, body) | Eps(body):
            yield from positions(body, path + (0,))
        case App(left, right) | DApp(left, right) | Sum(left, right):
            yield from positions(left, path + (0,))
            yield from positions(right, path + (1,))


def replace_at(t: Term, path: Path, new: Term) -> Term:
    if not path:
        return new
    head, rest = path[0], path[1:]
    match t:
        case Lam(binder, annotation, body):
            return Lam(binder, annotation, replace_at(body, rest, new))
        case Eps(body):
            return Eps(replace_at(body, rest, new))
        case App() | DApp() | Sum():
            left, right = (t.fun, t.arg) if not isinstance(t, Sum) else (t.left, t.right)
            if head == 0:
                left = replace_at(left, rest, new)
            else:
                right = replace_at(right, rest, new)
            return type(t)(left, right)
    raise ValueError(f"path {path} leaves the term")


# Equivalence rewrites


def _rewrites(
    t: Term, make: Callable[[], Term] | None, typed: bool
) -> list[tuple[str, Term]]:
    """Every single-rule rewrite of t at its root, in either direction.

    `make` builds fresh subterms for right-to-left uses of the zero rules; when
    it is None those rewrites are skipped. `typed` drops rewrites that can turn
    a well-typed term into an ill-typed one.
    """
    out: list[tuple[str, Term]] = [("unit", Sum(t, ZERO)), ("comm-unit", Sum(ZERO, t))]
    match t:
        case Sum(Sum(s, u), e):
            out.append(("assoc", Sum(s, Sum(u, e))))
    match t:
        case Sum(s, Sum(u, e)):
            out.append(("assoc", Sum(Sum(s, u), e)))
    match t:
        case Sum(s, Zero()):
            out.append(("unit", s))
    match t:
        case Sum(s, u):
            out.append(("comm", Sum(u, s)))
    match t:
        case Zero():
            out.append(("eps-zero", Eps(ZERO)))
            if not typed:
                out.append(("lam-zero", Lam("x", None, ZERO)))
            if make is not None:
                out.append(("app-zero", App(ZERO, make())))
                out.append(("d-zero-fun", DApp(ZERO, make())))
                out.append(("d-zero-arg", DApp(make(), ZERO)))
        case Eps(Zero()) | Lam(_, _, Zero()) | App(Zero(), _):
            out.append(("zero", ZERO))
        case DApp(Zero(), _) | DApp(_, Zero()):
            out.append(("zero", ZERO))
    match t:
        case Eps(Sum(s, u)):
            out.append(("eps-sum", Sum(Eps(s), Eps(u))))
        case Sum(Eps(s), Eps(u)):
            out.append(("eps-sum", Eps(Sum(s, u))))
    match t:
        case Lam(b, a, Sum(s, u)):
            out.append(("lam-sum", Sum(Lam(b, a, s), Lam(b, a, u))))
        case Sum(Lam(b, a, s), Lam(_, a2, u)) if not typed or a == a2:
            out.append(("lam-sum", Lam(b, a, Sum(s, u))))
    match t:
        case Lam(b, a, Eps(s)):
            out.append(("lam-eps", Eps(Lam(b, a, s))))
        case Eps(Lam(b, a, s)):
            out.append(("lam-eps", Lam(b, a, Eps(s))))
    match t:
        case App(Sum(s, u), e):
            out.append(("app-sum", Sum(App(s, e), App(u, e))))
        case Sum(App(s, e), App(u, e2)) if e == e2:
            out.append(("app-sum", App(Sum(s, u), e)))
    match t:
        case App(Eps(s), u):
            out.append(("app-eps", Eps(App(s, u))))
        case Eps(App(s, u)):
            out.append(("app-eps", App(Eps(s), u)))
    match t:
        case DApp(Sum(s, u), e):
            out.append(("d-sum-fun", Sum(DApp(s, e), DApp(u, e))))
        case Sum(DApp(s, e), DApp(u, e2)) if e == e2:
            out.append(("d-sum-fun", DApp(Sum(s, u), e)))
    match t:
        case DApp(Eps(s), e):
            out.append(("d-eps-fun", Eps(DApp(s, e))))
        case Eps(DApp(s, e)):
            out.append(("d-eps-fun", DApp(Eps(s), e)))
            out.append(("d-eps-arg", DApp(s, Eps(e))))
    match t:
        case DApp(s, Eps(e)):
            out.append(("d-eps-arg", Eps(DApp(s, e))))
    match t:
        case DApp(s, Sum(u, e)):
            out.append(
                ("d-sum-arg", Sum(Sum(DApp(s, u), DApp(s, e)), Eps(DApp(DApp(s, u), e))))
            )
        case Sum(Sum(DApp(s, u), DApp(s2, e)), Eps(DApp(DApp(s3, u2), e2))) if (
            s == s2 == s3 and u == u2 and e == e2
        ):
            out.append(("d-sum-arg", DApp(s, Sum(u, e))))
    match t:
        case DApp(DApp(s, u), e):
            out.append(("d-swap", DApp(DApp(s, e), u)))
    match t:
        case Eps(Eps(DApp(DApp() as inner, e))):
            out.append(("saturation", Eps(DApp(inner, e))))
        case Eps(DApp(DApp() as inner, e)):
            out.append(("saturation", Eps(Eps(DApp(inner, e)))))
    match t:
        case App(s, Sum(u, Eps(e))):
            out.append(("app-taylor", Sum(App(s, u), Eps(App(DApp(s, e), u)))))
        case Sum(App(s, u), Eps(App(DApp(s2, e), u2))) if s == s2 and u == u2:
            out.append(("app-taylor", App(s, Sum(u, Eps(e)))))
    return out


def rewrite_once(
    t: Term, rng: random.Random, cfg: GenConfig, typed: bool = False
) -> tuple[str, Term]:
    """Apply one equivalence rule, in a random direction, at a random position."""
    spots = list(positions(t))
    path, sub = rng.choice(spots)

    def make() -> Term:
        return _gen(rng, cfg, rng.randint(1, 3), ())

    name, result = rng.choice(_rewrites(sub, None if typed else make, typed))
    return name, replace_at(t, path, result)


def gen_equiv_pair(cfg: GenConfig) -> tuple[Term, Term]:
    """(t, t2) with t2 reached from t by at most five rule applications."""
    t = gen_term(cfg)
    rng = cfg.rng(salt=2)
    current = t
    for _ in range(rng.randint(0, MAX_REWRITES)):
        _, current = rewrite_once(current, rng, cfg)
    return t, current


# Suites


@dataclass
class Failure:
    seed: int
    message: str
    instance: list[str]

    def to_dict(self) -> dict[str, Any]:
        return {"seed": self.seed, "message": self.message, "instance": self.instance}


@dataclass
class SuiteReport:
    suite: str
    count: int = 0
    passed: int = 0
    skipped: int = 0
    failures: list[Failure] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def failed(self) -> int:
        return len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: SuiteReport) -> None:
        self.count += other.count
        self.passed += other.passed
        self.skipped += other.skipped
        self.failures.extend(other.failures)

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "count": self.count,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "elapsed": round(self.elapsed, 3),
            "failures": [f.to_dict() for f in self.failures],
        }


class Skip(Exception):
    """The generated instance does not meet the property's preconditions."""


Instance = tuple[Any, ...]


@dataclass(frozen=True)
class SuiteOptions:
    fuel: int = DEFAULT_FUEL
    erasure_bound: int = ERASURE_BOUND
    model: ModelConfig = field(default_factory=ModelConfig)


class Suite:
    name = ""
    shrinkable = True

    def generate(self, cfg: GenConfig, options: SuiteOptions) -> Instance:
        raise NotImplementedError

    def violation(self, instance: Instance, options: SuiteOptions) -> str | None:
        raise NotImplementedError

    def describe(self, instance: Instance) -> list[str]:
        return [print_term(x) if _is_term(x) else str(x) for x in instance]


def _is_term(x: Any) -> bool:
    return isinstance(x, Var | Lam | App | DApp | Eps | Sum | Zero)


def _pool_without(cfg: GenConfig, x: str) -> GenConfig:
    return replace(cfg, var_pool=tuple(v for v in cfg.var_pool if v != x) or ("w",))


class CanonicitySuite(Suite):
    """Rule-rewritten pairs are equivalent; summands that differ are told apart."""

    name = "canonicity"
    shrinkable = False

    def generate(self, cfg, options):
        return gen_equiv_pair(cfg)

    def violation(self, instance, options):
        t, t2 = instance
        if not diff_eq(t, t2):
            return "rewritten pair is not equivalent"
        canon = canonicalize(t)
        if not is_saturated(canon):
            return "canonical form is not saturated"
        if not perm_eq(canonicalize(embed(canon)), canon):
            return "canonicalization is not idempotent"
        if not diff_eq(embed(canon), t):
            return "term is not equivalent to its canonical form"
        # w is absent from t, so neither pair below can be equivalent
        fresh = Var(fresh_name("w", free_vars(t) | free_vars(t2)))
        if diff_eq(t2, Sum(t, fresh)):
            return "term reported equivalent to itself plus a fresh variable"
        if diff_eq(Sum(t, fresh), Sum(t2, Eps(fresh))):
            return "primal and eps-weighted summands reported equivalent"
        return None


class TaylorSuite(Suite):
    """s[x := t + eps e] ~ s[x:=t] + eps((ds/dx . e)[x:=t])"""

    name = "taylor"

    def generate(self, cfg, options):
        rng = cfg.rng(salt=3)
        x = rng.choice(cfg.var_pool)
        size = max(1, cfg.max_size // 2)
        s = gen_term(cfg)
        t = gen_term(replace(cfg, seed=cfg.seed + 1, max_size=size))
        e = gen_term(replace(_pool_without(cfg, x), seed=cfg.seed + 2, max_size=size))
        return s, x, t, e

    def violation(self, instance, options):
        s, x, t, e = instance
        if x in free_vars(e):
            raise Skip
        if not diff_eq(subst(s, x, Sum(t, Eps(e))), taylor_rhs(s, x, t, e)):
            return "Taylor expansion does not hold"
        return None


class RegularitySuite(Suite):
    """Regularity of differential substitution and commutation of second derivatives."""

    name = "regularity"

    def generate(self, cfg, options):
        rng = cfg.rng(salt=4)
        x = rng.choice(cfg.var_pool)
        size = max(1, cfg.max_size // 2)
        others = _pool_without(cfg, x)
        s = gen_term(cfg)
        u = gen_term(replace(others, seed=cfg.seed + 1, max_size=size))
        v = gen_term(replace(others, seed=cfg.seed + 2, max_size=size))
        return s, x, u, v

    def violation(self, instance, options):
        s, x, u, v = instance
        if x in free_vars(u) | free_vars(v):
            raise Skip
        if not diff_eq(dsubst(s, x, ZERO), ZERO):
            return "derivative along 0 is not 0"
        split = Sum(dsubst(s, x, u), subst(dsubst(s, x, v), x, Sum(Var(x), Eps(u))))
        if not diff_eq(dsubst(s, x, Sum(u, v)), split):
            return "derivative along a sum does not split"
        if not diff_eq(dsubst_seq(s, [x, x], [u, v]), dsubst_seq(s, [x, x], [v, u])):
            return "second derivatives do not commute"
        if x not in free_vars(s) and not diff_eq(dsubst(s, x, u), ZERO):
            return "derivative along an absent variable is not 0"
        return None


class ConfluenceSuite(Suite):
    """Every one-step successor parallel-reduces into the full parallel reduct."""

    name = "confluence"

    def generate(self, cfg, options):
        return (gen_term(cfg),)

    def violation(self, instance, options):
        (t,) = instance
        joins: list[Term] = []
        for representative, successor in representative_steps(canonicalize(t)):
            target = fpr(representative)
            reducts = parallel_reducts(successor)
            if successor not in parallel_reducts(representative):
                return f"{print_term(successor)} is not a parallel reduct"
            if not free_vars(successor) <= free_vars(representative):
                return "reduction introduced a free variable"
            if not any(diff_eq(r, target) for r in reducts):
                return f"{print_term(successor)} does not join {print_term(target)}"
            joins.append(target)
        for left, right in zip(joins, joins[1:]):
            if not diff_eq(left, right):
                return "full parallel reducts of equivalent representatives differ"
        return None


class TypingSuite(Suite):
    """Subject reduction, progress and normalization of closed typed terms."""

    name = "typing"

    def generate(self, cfg, options):
        ty = gen_type(cfg.rng(salt=5), cfg.type_depth, cfg.base_types)
        t = gen_typed_term(cfg, (), ty)
        if t is None:
            raise Skip
        return t, ty

    def violation(self, instance, options):
        t, ty = instance
        if not check((), t, ty):
            raise Skip
        for successor in step(t).terms:
            if not check((), successor, ty):
                return f"subject reduction fails for {print_term(successor)}"
        current, steps = t, 0
        while True:
            canon = canonicalize(current)
            term = embed(canon)
            if not check((), term, ty):
                return f"canonical form {print_term(term)} loses its type"
            if not has_redex(term):
                if not is_canonical_value(canon):
                    return f"stuck canonical term {print_term(term)}"
                break
            if steps >= options.fuel:
                return "no normal form within fuel"
            current, steps = fpr(term), steps + 1
        if normalize(t, options.fuel).exhausted:
            return "normalize ran out of fuel"
        return None

    def describe(self, instance):
        t, ty = instance
        return [print_term(t), print_type(ty)]


class SoundnessSuite(Suite):
    """Equivalent and reduction-related typed terms denote the same value."""

    name = "soundness"

    def generate(self, cfg, options):
        rng = cfg.rng(salt=6)
        ctx = gen_context(rng, cfg, rng.randint(0, 2))
        ty = gen_type(rng, 2, cfg.base_types)
        t = gen_typed_term(cfg, ctx, ty)
        if t is None:
            raise Skip
        rewritten = t
        for _ in range(rng.randint(1, MAX_REWRITES)):
            _, rewritten = rewrite_once(rewritten, rng, cfg, typed=True)
        return t, ctx, ty, rewritten

    def violation(self, instance, options):
        t, ctx, ty, rewritten = instance
        if not check(ctx, t, ty):
            raise Skip
        related = [embed(canonicalize(t)), *step(t).terms, fpr(t)]
        if check(ctx, rewritten, ty):
            related.append(rewritten)
        try:
            carriers = [denote_type(entry, options.model).size for _, entry in ctx]
            if math.prod(carriers) > _MAX_ENVIRONMENTS:
                raise Skip
            envs = list(environments(ctx, options.model))
            for env in envs:
                value = eval_term(ctx, env, t, ty, options.model)
                for other in related:
                    if eval_term(ctx, env, other, ty, options.model) != value:
                        return f"{print_term(other)} denotes a different value"
        except CarrierTooLargeError as exc:
            raise Skip from exc
        return None

    def describe(self, instance):
        t, ctx, ty, rewritten = instance
        return [print_term(t), format_context(ctx), print_type(ty), print_term(rewritten)]


class ErasureSuite(Suite):
    """Erasure simulates every one-step reduction."""

    name = "erasure"

    def generate(self, cfg, options):
        for salt in range(20):
            t = gen_term(replace(cfg, seed=cfg.seed + 104_729 * salt))
            if has_redex(t):
                return (t,)
        raise Skip

    def violation(self, instance, options):
        (s,) = instance
        if not is_eps_free(erase(s)):
            return "erasure left an eps"
        for reduct in step(s).terms:
            outcome = erase_simulates(s, reduct, options.erasure_bound)
            if outcome is not True:
                verdict = "inconclusive" if outcome is None else "refuted"
                return f"simulation of {print_term(reduct)} {verdict}"
        return None


SUITES: dict[str, Suite] = {
    suite.name: suite
    for suite in (
        CanonicitySuite(),
        TaylorSuite(),
        RegularitySuite(),
        ConfluenceSuite(),
        TypingSuite(),
        SoundnessSuite(),
        ErasureSuite(),
    )
}


def _fails(suite: Suite, instance: Instance, options: SuiteOptions) -> bool:
    try:
        return suite.violation(instance, options) is not None
    except Skip:
        return False
    except (LambdaEpsilonError, RecursionError):
        return True


def shrink(suite: Suite, instance: Instance, options: SuiteOptions) -> Instance:
    """Greedily replace subterms by 0 while the instance keeps failing."""
    current = instance
    for _ in range(_MAX_SHRINK_ROUNDS):
        smaller = _shrink_once(suite, current, options)
        if smaller is None:
            return current
        current = smaller
    return current


def _shrink_once(suite: Suite, instance: Instance, options: SuiteOptions) -> Instance | None:
    for index, item in enumerate(instance):
        if not _is_term(item):
            continue
        for path, sub in positions(item):
            if isinstance(sub, Zero):
                continue
            candidate = list(instance)
            candidate[index] = replace_at(item, path, ZERO)
            if _fails(suite, tuple(candidate), options):
                return tuple(candidate)
    return None


def _run_one(suite: Suite, cfg: GenConfig, options: SuiteOptions, report: SuiteReport) -> None:
    report.count += 1
    try:
        instance = suite.generate(cfg, options)
        message = suite.violation(instance, options)
    except Skip:
        report.skipped += 1
        return
    except (LambdaEpsilonError, RecursionError) as exc:
        message = f"{type(exc).__name__}: {exc}"
        instance = None
    if message is None:
        report.passed += 1
        return
    described: list[str] = []
    if instance is not None:
        if suite.shrinkable:
            instance = shrink(suite, instance, options)
        described = suite.describe(instance)
    logger.info(f"{suite.name} failed at seed {cfg.seed}: {message}")
    report.failures.append(Failure(cfg.seed, message, described))


def _run_chunk(
    name: str, seeds: Sequence[int], cfg: GenConfig, options: SuiteOptions
) -> SuiteReport:
    suite = SUITES[name]
    report = SuiteReport(name)
    for seed in seeds:
        _run_one(suite, replace(cfg, seed=seed), options, report)
    return report


def run_suite(
    name: str,
    count: int,
    cfg: GenConfig | None = None,
    options: SuiteOptions | None = None,
    workers: int = 1,
) -> SuiteReport:
    """Run `count` seeded instances of a suite, starting at cfg.seed."""
    if name not in SUITES:
        raise ValueError(f"unknown suite '{name}'; choose from {', '.join(SUITES)}")
    cfg = cfg or GenConfig()
    options = options or SuiteOptions()
    seeds = list(range(cfg.seed, cfg.seed + count))
    started = time.perf_counter()
    report = SuiteReport(name)
    if workers > 1 and count > 1:
        shards = [seeds[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(
            max_workers=workers,
            initializer=worker_initializer,
            initargs=(current_level(),),
        ) as executor:
            futures = [
                executor.submit(_run_chunk, name, shard, cfg, options) for shard in shards if shard
            ]
            for future in futures:
                report.merge(future.result())
        report.failures.sort(key=lambda f: f.seed)
    else:
        report.merge(_run_chunk(name, seeds, cfg, options))
    report.elapsed = time.perf_counter() - started
    logger.debug(
        f"{name}: {report.passed} passed, {report.failed} failed, {report.skipped} skipped"
    )
    return report
