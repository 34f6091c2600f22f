"""
Brute-force checks of the difference-category axioms in the Abelian-group model.

Every object is a power Z_n^d of one cyclic group: products add dimensions and
the exponential Z_n^b => Z_n^c is Z_n^(n^b * c) with the group structure lifted
pointwise. A morphism Z_n^a -> Z_n^c is then a numpy table of shape
(n,)*a + (c,), and currying is a reshape. The difference combinator is
df(x, u) = f(x + u) - f(x) and the infinitesimal extension is the identity.

Each identity is checked as an equality of whole tables, so one instance covers
every point of the domain. Argument maps are enumerated exhaustively when the
space of argument tuples fits in the budget and sampled with a seeded generator
otherwise.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .logging_config import current_level, get_logger, worker_initializer

logger = get_logger(__name__)

DEFAULT_BUDGET = 10_000


class AxiomConfig(BaseModel):
    """Carrier and enumeration settings for the axiom reports."""

    model_config = ConfigDict(extra="forbid")

    modulus: int = Field(default=2, ge=1)
    budget: int = Field(default=DEFAULT_BUDGET, ge=1)
    seed: int = 0
    workers: int = Field(default=1, ge=1)
    # (a, b): f maps Z_n^a to Z_n^b
    cdc_shapes: list[tuple[int, int]] = Field(default_factory=lambda: [(1, 1), (2, 1)])
    # (a, b, c): f maps Z_n^a x Z_n^b to Z_n^c
    lambda_shapes: list[tuple[int, int, int]] = Field(
        default_factory=lambda: [(1, 1, 1), (1, 1, 2)]
    )


def points(n: int, dim: int) -> np.ndarray:
    """All points of Z_n^dim, one per row, in table (C) order."""
    return np.indices((n,) * dim, dtype=np.int64).reshape(dim, -1).T


@dataclass(frozen=True, eq=False)
class FiniteMap:
    modulus: int
    dom: int
    table: np.ndarray

    @property
    def cod(self) -> int:
        return int(self.table.shape[-1])

    @classmethod
    def from_points(cls, n: int, dom: int, values: np.ndarray) -> FiniteMap:
        values = np.asarray(values, dtype=np.int64) % n
        return cls(n, dom, values.reshape((n,) * dom + (values.shape[-1],)))

    @classmethod
    def tabulate(
        cls, n: int, dom: int, fn: Callable[[np.ndarray], np.ndarray]
    ) -> FiniteMap:
        return cls.from_points(n, dom, fn(points(n, dom)))

    def __call__(self, xs: np.ndarray) -> np.ndarray:
        return self.table[tuple(np.asarray(xs).T)]

    def same_as(self, other: FiniteMap) -> bool:
        return self.dom == other.dom and np.array_equal(self.table, other.table)

    def to_list(self) -> list:
        return self.table.tolist()


# Left additive structure


def add(f: FiniteMap, g: FiniteMap) -> FiniteMap:
    return FiniteMap(f.modulus, f.dom, (f.table + g.table) % f.modulus)


def zero(n: int, dom: int, cod: int) -> FiniteMap:
    return FiniteMap(n, dom, np.zeros((n,) * dom + (cod,), dtype=np.int64))


def eps(f: FiniteMap) -> FiniteMap:
    return f


# Cartesian structure


def compose(g: FiniteMap, f: FiniteMap) -> FiniteMap:
    """g . f"""
    return FiniteMap.from_points(f.modulus, f.dom, g(f(points(f.modulus, f.dom))))


def pair(*maps: FiniteMap) -> FiniteMap:
    first = maps[0]
    return FiniteMap(first.modulus, first.dom, np.concatenate([m.table for m in maps], axis=-1))


def select(n: int, dom: int, coords: Sequence[int]) -> FiniteMap:
    """Projection onto the listed coordinates of Z_n^dom."""
    index = list(coords)
    return FiniteMap.tabulate(n, dom, lambda xs: xs[:, index])


def identity(n: int, dom: int) -> FiniteMap:
    return select(n, dom, range(dom))


def proj1(n: int, a: int, b: int) -> FiniteMap:
    return select(n, a + b, range(a))


def proj2(n: int, a: int, b: int) -> FiniteMap:
    return select(n, a + b, range(a, a + b))


def bang(n: int, dom: int) -> FiniteMap:
    return zero(n, dom, 0)


# Difference combinator


def derivative(f: FiniteMap) -> FiniteMap:
    n, a = f.modulus, f.dom

    def diff(xs: np.ndarray) -> np.ndarray:
        x, u = xs[:, :a], xs[:, a:]
        return f((x + u) % n) - f(x)

    return FiniteMap.tabulate(n, 2 * a, diff)


# Closed structure


def curry(f: FiniteMap, a: int) -> FiniteMap:
    """Lambda(f) for f on Z_n^a x Z_n^(dom - a)."""
    n = f.modulus
    return FiniteMap(n, a, f.table.reshape((n,) * a + (-1,)))


def uncurry(h: FiniteMap, b: int) -> FiniteMap:
    """Lambda^-(h) for h into Z_n^b => Z_n^c."""
    n = h.modulus
    cod = h.cod // n**b
    return FiniteMap(n, h.dom + b, h.table.reshape((n,) * (h.dom + b) + (cod,)))


def apply(h: FiniteMap, k: FiniteMap) -> FiniteMap:
    """ev . <h, k>"""
    return compose(uncurry(h, k.cod), pair(identity(h.modulus, h.dom), k))


def star(s: FiniteMap, u: FiniteMap) -> FiniteMap:
    """s * u = ds . <Id, <0, u . pi1>> for s on A x B and u: A -> B."""
    n, a, b = s.modulus, u.dom, u.cod
    return compose(
        derivative(s),
        pair(identity(n, a + b), zero(n, a + b, a), compose(u, proj1(n, a, b))),
    )


# Identities


@dataclass(frozen=True)
class Identity:
    name: str
    # (dom, cod) of every argument map for a given shape
    arguments: Callable[[tuple[int, ...]], tuple[tuple[int, int], ...]]
    sides: Callable[..., tuple[FiniteMap, FiniteMap]]


def _vars(n: int, a: int, k: int) -> list[FiniteMap]:
    """The k coordinate blocks of Z_n^(k * a)."""
    return [select(n, k * a, range(i * a, (i + 1) * a)) for i in range(k)]


def _cdc0(n, shape, f):
    x, u = _vars(n, f.dom, 2)
    return compose(f, add(x, eps(u))), add(compose(f, x), eps(compose(derivative(f), pair(x, u))))


def _cdc1_sum(n, shape, f, g):
    return derivative(add(f, g)), add(derivative(f), derivative(g))


def _cdc1_zero(n, shape):
    a, b = shape
    return derivative(zero(n, a, b)), zero(n, 2 * a, b)


def _cdc1_eps(n, shape, f):
    return derivative(eps(f)), eps(derivative(f))


def _cdc2_add(n, shape, f):
    x, u, v = _vars(n, f.dom, 3)
    df = derivative(f)
    return compose(df, pair(x, add(u, v))), add(
        compose(df, pair(x, u)), compose(df, pair(add(x, eps(u)), v))
    )


def _cdc2_zero(n, shape, f):
    a = f.dom
    return compose(derivative(f), pair(identity(n, a), zero(n, a, a))), zero(n, a, f.cod)


def _cdc3_id(n, shape):
    a, _ = shape
    return derivative(identity(n, a)), proj2(n, a, a)


def _cdc3_proj1(n, shape):
    a, b = shape
    lhs = derivative(proj1(n, a, b))
    return lhs, compose(proj1(n, a, b), proj2(n, a + b, a + b))


def _cdc3_proj2(n, shape):
    a, b = shape
    lhs = derivative(proj2(n, a, b))
    return lhs, compose(proj2(n, a, b), proj2(n, a + b, a + b))


def _cdc4_pair(n, shape, f, g):
    return derivative(pair(f, g)), pair(derivative(f), derivative(g))


def _cdc4_bang(n, shape):
    a, _ = shape
    return derivative(bang(n, a)), bang(n, 2 * a)


def _cdc5(n, shape, f, g):
    a = f.dom
    return derivative(compose(g, f)), compose(
        derivative(g), pair(compose(f, proj1(n, a, a)), derivative(f))
    )


def _cdc6(n, shape, f):
    a = f.dom
    x, u, v = _vars(n, a, 3)
    d2 = derivative(derivative(f))
    return compose(d2, pair(x, u, zero(n, 3 * a, a), v)), compose(
        derivative(f), pair(add(x, eps(u)), v)
    )


def _cdc7(n, shape, f):
    a = f.dom
    x, u, v = _vars(n, a, 3)
    d2 = derivative(derivative(f))
    o = zero(n, 3 * a, a)
    return compose(d2, pair(x, u, v, o)), compose(d2, pair(x, v, u, o))


def _lemma1_eps(n, shape, f):
    x, u = _vars(n, f.dom, 2)
    df = derivative(f)
    return compose(df, pair(x, eps(u))), compose(eps(df), pair(x, u))


def _lemma1_second(n, shape, f):
    a = f.dom
    x, u, v = _vars(n, a, 3)
    point = pair(x, u, v, zero(n, 3 * a, a))
    d2 = derivative(derivative(f))
    return compose(eps(d2), point), compose(eps(eps(d2)), point)


def _l1(n, shape, f):
    a, b, _ = shape
    first = select(n, 2 * a + b, [*range(a), *range(2 * a, 2 * a + b)])
    second = pair(select(n, 2 * a + b, range(a, 2 * a)), zero(n, 2 * a + b, b))
    rhs = curry(compose(derivative(f), pair(first, second)), 2 * a)
    return derivative(curry(f, a)), rhs


def _l2(n, shape, f):
    a, _, _ = shape
    return curry(eps(f), a), eps(curry(f, a))


def _lambda_d_ev_1(n, shape, f, e):
    a, b, c = shape
    lam = curry(f, a)
    p1, p2 = _vars(n, a, 2)
    e1 = compose(e, p1)
    lhs = derivative(apply(lam, e))
    rhs = add(
        apply(derivative(lam), e1),
        compose(
            derivative(f),
            pair(add(p1, eps(p2)), e1, zero(n, 2 * a, a), derivative(e)),
        ),
    )
    return lhs, rhs


def _lambda_d_ev_2(n, shape, f, e):
    a, b, c = shape
    lam = curry(f, a)
    p1, _ = _vars(n, a, 2)
    e1 = compose(e, p1)
    lhs = derivative(apply(lam, e))
    rhs = add(
        apply(derivative(lam), add(e1, eps(derivative(e)))),
        compose(derivative(f), pair(p1, e1, zero(n, 2 * a, a), derivative(e))),
    )
    return lhs, rhs


def _star_definition(n, shape, s, u):
    a, b, _ = shape

    def direct(xs: np.ndarray) -> np.ndarray:
        x, y = xs[:, :a], xs[:, a:]
        shifted = np.concatenate([x, (y + u(x)) % n], axis=1)
        return s(shifted) - s(xs)

    return star(s, u), FiniteMap.tabulate(n, a + b, direct)


# lambda-star-ev: f on (A x B) x C with C = Z_n, g: A -> B, g': A x B -> B, e: A x B -> C


def _star_ev_1(n, shape, f, g, e):
    a, b, _ = shape
    ab = a + b
    lam = curry(f, ab)
    lhs = star(apply(lam, e), g)
    shift = pair(proj1(n, a, b), add(proj2(n, a, b), eps(compose(g, proj1(n, a, b)))))
    rhs = add(
        apply(curry(star(f, star(e, g)), ab), e),
        apply(star(lam, g), compose(e, shift)),
    )
    return lhs, rhs


def _star_ev_2(n, shape, f, g, e):
    a, b, _ = shape
    ab = a + b
    lhs = star(curry(star(f, e), ab), g)
    shifted = add(identity(n, ab), pair(zero(n, ab, a), eps(compose(g, proj1(n, a, b)))))
    inner = add(
        add(
            star(uncurry(star(curry(f, ab), g), e.cod), compose(e, shifted)),
            star(eps(star(f, e)), star(e, g)),
        ),
        star(f, star(e, g)),
    )
    return lhs, curry(inner, ab)


def _star_ev_3(n, shape, f, g2, e):
    a, b, _ = shape
    ab = a + b
    reindex = pair(proj1(n, a, b), g2)
    lhs = compose(curry(star(f, e), ab), reindex)
    rhs = curry(
        star(uncurry(compose(curry(f, ab), reindex), e.cod), compose(e, reindex)), ab
    )
    return lhs, rhs


def _cdc_unary(shape):
    a, b = shape
    return ((a, b),)


def _cdc_binary(shape):
    a, b = shape
    return ((a, b), (a, b))


def _cdc_chain(shape):
    a, b = shape
    return ((a, b), (b, b))


def _no_maps(shape):
    return ()


def _lambda_f(shape):
    a, b, c = shape
    return ((a + b, c),)


def _lambda_f_e(shape):
    a, b, c = shape
    return ((a + b, c), (a, b))


def _star_ev_args(shape):
    a, b, c = shape
    return ((a + b + 1, c), (a, b), (a + b, 1))


def _star_ev_3_args(shape):
    a, b, c = shape
    return ((a + b + 1, c), (a + b, b), (a + b, 1))


CDC_IDENTITIES = (
    Identity("CdC0", _cdc_unary, _cdc0),
    Identity("CdC1 sum", _cdc_binary, _cdc1_sum),
    Identity("CdC1 zero", _no_maps, _cdc1_zero),
    Identity("CdC1 eps", _cdc_unary, _cdc1_eps),
    Identity("CdC2 additivity", _cdc_unary, _cdc2_add),
    Identity("CdC2 zero", _cdc_unary, _cdc2_zero),
    Identity("CdC3 identity", _no_maps, _cdc3_id),
    Identity("CdC3 first projection", _no_maps, _cdc3_proj1),
    Identity("CdC3 second projection", _no_maps, _cdc3_proj2),
    Identity("CdC4 pairing", _cdc_binary, _cdc4_pair),
    Identity("CdC4 terminal", _no_maps, _cdc4_bang),
    Identity("CdC5 chain rule", _cdc_chain, _cdc5),
    Identity("CdC6", _cdc_unary, _cdc6),
    Identity("CdC7", _cdc_unary, _cdc7),
    Identity("eps inside derivative", _cdc_unary, _lemma1_eps),
    Identity("eps on second derivative", _cdc_unary, _lemma1_second),
)

LAMBDA_IDENTITIES = (
    Identity("L1", _lambda_f, _l1),
    Identity("L2", _lambda_f, _l2),
    Identity("derivative of evaluation (i)", _lambda_f_e, _lambda_d_ev_1),
    Identity("derivative of evaluation (ii)", _lambda_f_e, _lambda_d_ev_2),
    Identity("differential composition", _lambda_f_e, _star_definition),
    Identity("composition under evaluation (i)", _star_ev_args, _star_ev_1),
    Identity("composition under evaluation (ii)", _star_ev_args, _star_ev_2),
    Identity("composition under evaluation (iii)", _star_ev_3_args, _star_ev_3),
)

IDENTITIES = {rule.name: rule for rule in CDC_IDENTITIES + LAMBDA_IDENTITIES}


# Enumeration


def space_size(n: int, dom: int, cod: int) -> int:
    return n ** (n**dom * cod)


def all_maps(n: int, dom: int, cod: int) -> Iterator[FiniteMap]:
    """Every map Z_n^dom -> Z_n^cod, in lexicographic table order."""
    shape = (n,) * dom + (cod,)
    cells = math.prod(shape)
    for entries in product(range(n), repeat=cells):
        yield FiniteMap(n, dom, np.array(entries, dtype=np.int64).reshape(shape))


def random_map(rng: np.random.Generator, n: int, dom: int, cod: int) -> FiniteMap:
    return FiniteMap(n, dom, rng.integers(0, n, size=(n,) * dom + (cod,), dtype=np.int64))


def argument_tuples(
    n: int,
    signature: Sequence[tuple[int, int]],
    budget: int,
    rng: np.random.Generator,
) -> tuple[bool, Iterator[tuple[FiniteMap, ...]]]:
    """(exhaustive?, tuples of argument maps)"""
    total = math.prod(space_size(n, dom, cod) for dom, cod in signature)
    if total <= budget:
        spaces = [list(all_maps(n, dom, cod)) for dom, cod in signature]
        return True, product(*spaces)

    def sampled() -> Iterator[tuple[FiniteMap, ...]]:
        for _ in range(budget):
            yield tuple(random_map(rng, n, dom, cod) for dom, cod in signature)

    return False, sampled()


# Reports


@dataclass
class Violation:
    identity: str
    shape: tuple[int, ...]
    maps: list[list]

    def to_dict(self) -> dict[str, Any]:
        return {"identity": self.identity, "shape": list(self.shape), "maps": self.maps}


@dataclass
class AxiomReport:
    modulus: int
    counts: dict[str, int] = field(default_factory=dict)
    exhaustive: dict[str, bool] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def instances(self) -> int:
        return sum(self.counts.values())

    def merge(self, other: AxiomReport) -> None:
        for name, count in other.counts.items():
            self.counts[name] = self.counts.get(name, 0) + count
        for name, flag in other.exhaustive.items():
            self.exhaustive[name] = self.exhaustive.get(name, True) and flag
        self.violations.extend(other.violations)

    def to_dict(self) -> dict[str, Any]:
        return {
            "modulus": self.modulus,
            "instances": self.instances,
            "identities": [
                {
                    "name": name,
                    "instances": count,
                    "exhaustive": self.exhaustive.get(name, False),
                    "violations": sum(1 for v in self.violations if v.identity == name),
                }
                for name, count in self.counts.items()
            ],
            "violations": [v.to_dict() for v in self.violations],
        }


@dataclass(frozen=True)
class _Task:
    index: int
    identity: str
    modulus: int
    shape: tuple[int, ...]
    budget: int
    seed: int


def _run_task(task: _Task) -> AxiomReport:
    rule = IDENTITIES[task.identity]
    n = task.modulus
    rng = np.random.default_rng([task.seed, task.index])
    exhaustive, tuples = argument_tuples(
        n, rule.arguments(task.shape), task.budget, rng
    )
    report = AxiomReport(n, {rule.name: 0}, {rule.name: exhaustive})
    for maps in tuples:
        lhs, rhs = rule.sides(n, task.shape, *maps)
        report.counts[rule.name] += 1
        if not lhs.same_as(rhs):
            report.violations.append(
                Violation(rule.name, task.shape, [m.to_list() for m in maps])
            )
    logger.debug(
        f"{rule.name} {task.shape}: {report.counts[rule.name]} instances, "
        f"{len(report.violations)} violations"
    )
    return report


def _run(
    identities: Sequence[Identity],
    shapes: Sequence[tuple[int, ...]],
    cfg: AxiomConfig,
) -> AxiomReport:
    tasks = [
        _Task(index, rule.name, cfg.modulus, tuple(shape), cfg.budget, cfg.seed)
        for index, (rule, shape) in enumerate(product(identities, shapes))
    ]
    report = AxiomReport(cfg.modulus)
    if cfg.workers > 1:
        with ProcessPoolExecutor(
            max_workers=cfg.workers,
            initializer=worker_initializer,
            initargs=(current_level(),),
        ) as executor:
            results = list(executor.map(_run_task, tasks))
    else:
        results = [_run_task(task) for task in tasks]
    for result in results:
        report.merge(result)
    if not report.ok:
        logger.warning(f"{len(report.violations)} axiom instances failed")
    return report


def check_cdc_axioms(cfg: AxiomConfig | None = None) -> AxiomReport:
    """Difference-category axioms CdC0-CdC7 and the two eps lemmas."""
    cfg = cfg or AxiomConfig()
    return _run(CDC_IDENTITIES, cfg.cdc_shapes, cfg)


def check_lambda_axioms(cfg: AxiomConfig | None = None) -> AxiomReport:
    """Closed-structure axioms, derivatives of evaluation and differential composition."""
    cfg = cfg or AxiomConfig()
    return _run(LAMBDA_IDENTITIES, cfg.lambda_shapes, cfg)
