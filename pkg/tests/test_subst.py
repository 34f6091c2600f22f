"""Tests for substitution, differential substitution and Taylor expansion."""

import pytest
from hypothesis import given, settings

from lambda_epsilon.canonical import canonicalize, diff_eq, embed
from lambda_epsilon.errors import FreeVariableCaptureError
from lambda_epsilon.parsers import parse
from lambda_epsilon.subst import dsubst, dsubst_seq, subst, taylor_rhs
from lambda_epsilon.syntax import ZERO, Eps, Sum, Var, free_vars, print_term

from .conftest import term_strategy, terms

X = Var("x")
U, V = Var("u"), Var("v")

# Directions: no free x, and no free y either for the exchange laws.
without_x = term_strategy(("y", "z"), max_leaves=4)
only_z = term_strategy(("z",), max_leaves=3)
without_y = term_strategy(("x", "z"), max_leaves=3)


class TestSubst:
    def test_variable(self):
        assert subst(X, "x", parse("f y")) == parse("f y")
        assert subst(Var("y"), "x", U) == Var("y")

    def test_binder_is_renamed_on_capture(self):
        result = subst(parse("\\y. x"), "x", Var("y"))
        assert print_term(result) == "\\y'. y"
        assert free_vars(result) == {"y"}

    def test_shadowed_variable_is_untouched(self):
        t = parse("\\x. x")
        assert subst(t, "x", U) == t

    def test_differential_application(self):
        assert subst(parse("D(x) * (x + y)"), "x", U) == parse("D(u) * (u + y)")


class TestDsubst:
    def test_variable(self):
        assert dsubst(X, "x", U) == U
        assert dsubst(Var("y"), "x", U) == ZERO

    def test_application(self):
        assert dsubst(parse("x x"), "x", U) == parse("(D(x) * u) x + u (x + eps u)")

    def test_differential_application_has_three_summands(self):
        expected = parse("D(x) * u + D(u) * (x + eps u) + eps D(D(x) * x) * u")
        assert dsubst(parse("D(x) * x"), "x", U) == expected
        assert diff_eq(dsubst(parse("D(x) * y"), "x", U), parse("D(u) * y"))

    def test_capture_is_rejected(self):
        with pytest.raises(FreeVariableCaptureError) as excinfo:
            dsubst(X, "x", parse("f x"))
        assert excinfo.value.variable == "x"

    def test_sequence(self):
        assert dsubst_seq(parse("f x"), [], []) == parse("f x")
        assert dsubst_seq(X, ["x", "x"], [U, V]) == dsubst(U, "x", V)
        assert dsubst_seq(parse("x x"), ["x"], [U]) == dsubst(parse("x x"), "x", U)

    def test_sequence_length_mismatch(self):
        with pytest.raises(ValueError):
            dsubst_seq(X, ["x"], [])


class TestTaylor:
    def test_base_cases(self):
        t, e = Var("t"), Var("e")
        assert diff_eq(taylor_rhs(X, "x", t, e), parse("t + eps e"))
        assert diff_eq(taylor_rhs(Var("y"), "x", t, e), Var("y"))

    def test_self_application(self):
        t, e = Var("t"), Var("e")
        expected = subst(parse("x x"), "x", Sum(t, Eps(e)))
        assert diff_eq(taylor_rhs(parse("x x"), "x", t, e), expected)

    def test_direction_must_not_mention_variable(self):
        with pytest.raises(FreeVariableCaptureError):
            taylor_rhs(X, "x", U, X)


class TestProperties:
    """Laws of differential substitution on generated terms."""

    @settings(max_examples=100, deadline=None)
    @given(terms, terms, without_x)
    def test_taylor_expansion(self, s, t, e):
        assert diff_eq(subst(s, "x", Sum(t, Eps(e))), taylor_rhs(s, "x", t, e))

    @settings(max_examples=100, deadline=None)
    @given(without_x, without_x)
    def test_vacuity(self, t, u):
        assert diff_eq(dsubst(t, "x", u), ZERO)

    @settings(max_examples=100, deadline=None)
    @given(terms, without_x, without_x)
    def test_regularity(self, s, u, v):
        assert diff_eq(dsubst(s, "x", ZERO), ZERO)
        split = Sum(dsubst(s, "x", u), subst(dsubst(s, "x", v), "x", Sum(X, Eps(u))))
        assert diff_eq(dsubst(s, "x", Sum(u, v)), split)

    @settings(max_examples=75, deadline=None)
    @given(terms, without_x, without_x)
    def test_second_derivatives_commute(self, t, u, v):
        first = dsubst_seq(t, ["x", "x"], [u, v])
        assert diff_eq(first, dsubst_seq(t, ["x", "x"], [v, u]))

    @settings(max_examples=100, deadline=None)
    @given(terms, terms, without_x)
    def test_congruence(self, s, t, u):
        s2 = embed(canonicalize(s))
        assert diff_eq(subst(s, "y", t), subst(s2, "y", t))
        assert diff_eq(dsubst(s, "x", u), dsubst(s2, "x", u))

    @settings(max_examples=100, deadline=None)
    @given(terms, without_x, without_x)
    def test_substitution_exchange(self, t, u, v):
        left = subst(dsubst(t, "x", u), "y", v)
        right = dsubst(subst(t, "y", v), "x", subst(u, "y", v))
        assert diff_eq(left, right)

    @settings(max_examples=75, deadline=None)
    @given(terms, only_z, without_y)
    def test_second_exchange(self, t, u, v):
        left = dsubst(subst(t, "y", v), "x", u)
        shifted = subst(v, "x", Sum(X, Eps(u)))
        right = Sum(
            subst(dsubst(t, "x", u), "y", shifted),
            subst(dsubst(t, "y", dsubst(v, "x", u)), "y", v),
        )
        assert diff_eq(left, right)
