"""Tests for the difference-category axiom checks in the Abelian-group model."""

import numpy as np
import pytest

from lambda_epsilon.axioms import (
    IDENTITIES,
    AxiomConfig,
    AxiomReport,
    FiniteMap,
    Violation,
    add,
    all_maps,
    argument_tuples,
    check_cdc_axioms,
    check_lambda_axioms,
    compose,
    curry,
    derivative,
    identity,
    points,
    proj2,
    space_size,
    star,
    uncurry,
)


def square(n):
    return FiniteMap.tabulate(n, 1, lambda xs: xs**2)


def holds(name, n, shape, *maps):
    lhs, rhs = IDENTITIES[name].sides(n, shape, *maps)
    return lhs.same_as(rhs)


class TestFiniteMaps:
    def test_points_are_in_table_order(self):
        assert points(2, 2).tolist() == [[0, 0], [0, 1], [1, 0], [1, 1]]

    def test_derivative_is_finite_difference(self):
        df = derivative(square(5))
        for x, u in points(5, 2):
            assert df(np.array([[x, u]]))[0, 0] == ((x + u) ** 2 - x**2) % 5

    def test_identity_derivative_is_second_projection(self):
        assert derivative(identity(3, 1)).same_as(proj2(3, 1, 1))

    def test_curry_round_trip(self):
        f = FiniteMap.tabulate(2, 2, lambda xs: xs[:, :1] * xs[:, 1:])
        lam = curry(f, 1)
        assert lam.cod == 2
        assert uncurry(lam, 1).same_as(f)

    def test_addition_is_pointwise(self):
        f = square(3)
        doubled = add(f, f)
        assert doubled.to_list() == [[0], [2], [2]]

    def test_space_size(self):
        assert space_size(2, 1, 1) == 4
        assert space_size(2, 2, 2) == 256
        assert len(list(all_maps(2, 1, 1))) == 4


class TestIdentities:
    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_square_satisfies_cdc0(self, n):
        assert holds("CdC0", n, (1, 1), square(n))

    def test_derivative_vanishes_on_zero_direction(self):
        assert holds("CdC2 zero", 5, (1, 1), square(5))

    def test_projections(self):
        for name in ("CdC3 identity", "CdC3 first projection", "CdC3 second projection"):
            assert holds(name, 3, (1, 2))

    def test_chain_rule(self):
        f = square(5)
        g = FiniteMap.tabulate(5, 1, lambda xs: xs**3 + 2 * xs)
        assert holds("CdC5 chain rule", 5, (1, 1), f, g)
        assert derivative(compose(g, f)).dom == 2

    def test_l1_on_every_map(self):
        rule = IDENTITIES["L1"]
        shape = (1, 1, 2)
        exhaustive, tuples = argument_tuples(
            2, rule.arguments(shape), 2000, np.random.default_rng(0)
        )
        assert exhaustive
        checked = 0
        for (f,) in tuples:
            assert holds("L1", 2, shape, f)
            checked += 1
        assert checked == 256

    def test_star_is_shifted_difference(self):
        s = FiniteMap.tabulate(3, 2, lambda xs: xs[:, :1] * xs[:, 1:] + xs[:, 1:] ** 2)
        u = square(3)
        table = star(s, u)
        for x, y in points(3, 2):
            shifted = s(np.array([[x, (y + x * x) % 3]]))[0, 0]
            here = s(np.array([[x, y]]))[0, 0]
            assert table(np.array([[x, y]]))[0, 0] == (shifted - here) % 3
        assert holds("differential composition", 3, (1, 1, 1), s, u)

    def test_derivative_of_square_depends_on_base_point(self):
        df = derivative(square(5))
        to_origin = FiniteMap.tabulate(5, 2, lambda xs: xs * [0, 1])
        assert not df.same_as(compose(df, to_origin))


class TestArgumentTuples:
    def test_sampling_respects_budget(self):
        exhaustive, tuples = argument_tuples(
            2, ((3, 1), (2, 1)), 10, np.random.default_rng(1)
        )
        assert not exhaustive
        assert len(list(tuples)) == 10

    def test_sampling_is_seeded(self):
        def draw(seed):
            _, tuples = argument_tuples(2, ((3, 1),), 5, np.random.default_rng(seed))
            return [f.to_list() for (f,) in tuples]

        assert draw(7) == draw(7)


class TestReport:
    def test_merge(self):
        left = AxiomReport(2, {"CdC0": 4}, {"CdC0": True})
        right = AxiomReport(
            2, {"CdC0": 16}, {"CdC0": False}, [Violation("CdC0", (2, 1), [[0]])]
        )
        left.merge(right)
        assert left.counts == {"CdC0": 20}
        assert left.exhaustive == {"CdC0": False}
        assert not left.ok
        assert left.to_dict()["identities"][0]["violations"] == 1

    def test_config_rejects_unknown_keys(self):
        with pytest.raises(ValueError):
            AxiomConfig(modulus=2, colour="blue")


CDC_COUNTS = {
    "CdC0": 20,
    "CdC1 sum": 272,
    "CdC1 zero": 2,
    "CdC1 eps": 20,
    "CdC2 additivity": 20,
    "CdC2 zero": 20,
    "CdC3 identity": 2,
    "CdC3 first projection": 2,
    "CdC3 second projection": 2,
    "CdC4 pairing": 272,
    "CdC4 terminal": 2,
    "CdC5 chain rule": 80,
    "CdC6": 20,
    "CdC7": 20,
    "eps inside derivative": 20,
    "eps on second derivative": 20,
}

LAMBDA_COUNTS = {
    "L1": 272,
    "L2": 272,
    "derivative of evaluation (i)": 1088,
    "derivative of evaluation (ii)": 1088,
    "differential composition": 1088,
    "composition under evaluation (i)": 4000,
    "composition under evaluation (ii)": 4000,
    "composition under evaluation (iii)": 4000,
}


@pytest.mark.slow
class TestReports:
    """Full reports over Z_2 with a budget of 2000 argument tuples."""

    CONFIG = AxiomConfig(modulus=2, budget=2000)

    def test_cdc_report(self):
        report = check_cdc_axioms(self.CONFIG)
        assert report.ok
        assert report.counts == CDC_COUNTS
        assert all(report.exhaustive.values())

    def test_lambda_report(self):
        report = check_lambda_axioms(self.CONFIG)
        assert report.ok
        assert report.counts == LAMBDA_COUNTS
        assert not report.exhaustive["composition under evaluation (i)"]
        assert report.exhaustive["L1"]

    def test_workers_give_the_same_report(self):
        cfg = AxiomConfig(modulus=2, budget=200, workers=2, cdc_shapes=[(1, 1)])
        parallel = check_cdc_axioms(cfg)
        serial = check_cdc_axioms(cfg.model_copy(update={"workers": 1}))
        assert parallel.to_dict() == serial.to_dict()

    def test_z3_cdc(self):
        report = check_cdc_axioms(AxiomConfig(modulus=3, budget=300, cdc_shapes=[(1, 1)]))
        assert report.ok
