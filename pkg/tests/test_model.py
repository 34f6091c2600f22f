"""Tests for the finite group model."""

from itertools import product

import pytest

from lambda_epsilon.errors import (
    CarrierTooLargeError,
    ModelInvariantError,
    TermSyntaxError,
    UnknownBaseTypeError,
)
from lambda_epsilon.model import (
    FuncTable,
    GroupElem,
    GroupT,
    ModelConfig,
    denote_type,
    environments,
    eval_term,
    format_value,
    parse_env,
    parse_model_spec,
    val_add,
    val_eps,
    val_sub,
    val_zero,
)
from lambda_epsilon.parsers import parse, parse_context, parse_type
from lambda_epsilon.reduction import fpr, step
from lambda_epsilon.subst import dsubst, subst

Z2 = ModelConfig(base_assignment={"a": 2})
Z3 = ModelConfig(base_assignment={"a": 3})
A = parse_type("a")


class TestCarriers:
    @pytest.mark.parametrize(
        "text,expected", [("a", 2), ("a -> a", 4), ("(a -> a) -> a", 16)]
    )
    def test_sizes(self, text, expected):
        assert denote_type(parse_type(text), Z2).size == expected

    def test_size_limit(self):
        cfg = ModelConfig(base_assignment={"a": 3}, size_limit=100)
        assert denote_type(parse_type("a -> a"), cfg).size == 27
        with pytest.raises(CarrierTooLargeError):
            denote_type(parse_type("(a -> a) -> a"), cfg)

    def test_unknown_base_type(self):
        with pytest.raises(UnknownBaseTypeError):
            denote_type(parse_type("b"), Z2)

    def test_table_indexing_round_trips(self):
        sem = denote_type(parse_type("a -> a"), Z3)
        for index, table in enumerate(sem.carrier()):
            assert sem.element(index) == table
            assert sem.index_of(table) == index

    def test_modulus_must_be_positive(self):
        with pytest.raises(ValueError):
            ModelConfig(base_assignment={"a": 0})


class TestValues:
    def test_add(self):
        assert val_add(GroupElem(3, 2), GroupElem(3, 2)) == GroupElem(3, 1)
        with pytest.raises(ModelInvariantError):
            val_add(GroupElem(3, 1), GroupElem(2, 1))

    def test_zero_table(self):
        sem = denote_type(parse_type("a -> a"), Z2)
        zero = val_zero(sem)
        assert isinstance(zero, FuncTable)
        assert zero.entries == (GroupElem(2, 0), GroupElem(2, 0))

    def test_eps_is_identity(self):
        assert val_eps(GroupElem(3, 1)) == GroupElem(3, 1)

    def test_format(self):
        assert format_value(GroupElem(3, 2)) == "2"
        table = FuncTable(GroupT(3), (GroupElem(3, 0), GroupElem(3, 2), GroupElem(3, 1)))
        assert format_value(table) == "{0↦0, 1↦2, 2↦1}"


class TestEval:
    def test_zero(self):
        assert eval_term((), (), parse("0"), A, Z3) == GroupElem(3, 0)

    def test_argument_type_found_by_unification(self):
        assert eval_term((), (), parse("(\\x. 0) (\\y. y)"), A, Z3) == GroupElem(3, 0)
        ctx = parse_context("z:a")
        t = parse("(\\f. f z) (\\y. y + y)")
        assert eval_term(ctx, (GroupElem(3, 1),), t, A, Z3) == GroupElem(3, 2)

    def test_finite_difference(self):
        ctx = parse_context("z:a, w:a")
        env = (GroupElem(3, 1), GroupElem(3, 1))
        t = parse("(D(\\x:a. x + x) * w) z")
        assert eval_term(ctx, env, t, A, Z3) == GroupElem(3, 2)

    def test_eps_is_transparent(self):
        ctx = parse_context("f:a -> a, z:a")
        for env in environments(ctx, Z3):
            plain = eval_term(ctx, env, parse("f z"), A, Z3)
            assert eval_term(ctx, env, parse("eps (f z)"), A, Z3) == plain

    def test_doubling_table(self):
        value = eval_term((), (), parse("\\x:a. x + x"), parse_type("a -> a"), Z3)
        assert format_value(value) == "{0↦0, 1↦2, 2↦1}"

    def test_ill_typed_term_is_rejected(self):
        with pytest.raises(ModelInvariantError):
            eval_term((), (), parse("x"), A, Z3)

    def test_environment_length(self):
        with pytest.raises(ModelInvariantError):
            eval_term(parse_context("z:a"), (), parse("z"), A, Z3)

    def test_environments_enumerate_carriers(self):
        ctx = parse_context("z:a, f:a -> a")
        assert len(list(environments(ctx, Z2))) == 2 * 4


class TestSubstitutionLemmas:
    """Substitution and differential substitution evaluated pointwise."""

    CTX = parse_context("f:a -> a, x:a, z:a")

    @pytest.mark.parametrize("s", ["f x", "f (f x)", "x + f x", "(D(f) * z) x"])
    @pytest.mark.parametrize("t", ["z", "f z", "z + z"])
    def test_substitution(self, s, t):
        s_term, t_term = parse(s), parse(t)
        for env in environments(self.CTX, Z3):
            f, _, z = env
            arg = eval_term(self.CTX, env, t_term, A, Z3)
            expected = eval_term(self.CTX, (f, arg, z), s_term, A, Z3)
            assert eval_term(self.CTX, env, subst(s_term, "x", t_term), A, Z3) == expected

    @pytest.mark.parametrize("s", ["f x", "f (f x)", "x + f x", "(D(f) * z) x"])
    @pytest.mark.parametrize("t", ["z", "f z", "z + z"])
    def test_differential_substitution(self, s, t):
        s_term, t_term = parse(s), parse(t)
        derivative = dsubst(s_term, "x", t_term)
        for env in environments(self.CTX, Z3):
            f, x, z = env
            shift = eval_term(self.CTX, env, t_term, A, Z3)
            moved = eval_term(self.CTX, (f, val_add(x, shift), z), s_term, A, Z3)
            here = eval_term(self.CTX, env, s_term, A, Z3)
            assert eval_term(self.CTX, env, derivative, A, Z3) == val_sub(moved, here)


class TestSoundness:
    CTX = parse_context("f:a -> a, z:a")

    @pytest.mark.parametrize(
        "left,right",
        [
            ("(\\x:a. x + x) z", "z + z"),
            ("D(f) * (z + z)", "D(f) * z + D(f) * z + eps D(D(f) * z) * z"),
            ("f (z + eps z)", "f z + eps ((D(f) * z) z)"),
            ("(D(\\x:a. f x) * z) z", "(D(f) * z) z"),
        ],
    )
    def test_related_terms_agree(self, left, right):
        ty = parse_type("a -> a") if left.startswith("D(f)") else A
        for env in environments(self.CTX, Z3):
            assert eval_term(self.CTX, env, parse(left), ty, Z3) == eval_term(
                self.CTX, env, parse(right), ty, Z3
            )

    def test_reducts_agree(self):
        t = parse("(\\g:a -> a. g (g z)) (\\y:a. f y + y)")
        related = [*step(t).terms, fpr(t)]
        for env in environments(self.CTX, Z2):
            value = eval_term(self.CTX, env, t, A, Z2)
            for other in related:
                assert eval_term(self.CTX, env, other, A, Z2) == value


class TestParsing:
    def test_model_spec(self):
        assert parse_model_spec("a=Z3, b=z2") == {"a": 3, "b": 2}
        assert parse_model_spec("") == {}

    @pytest.mark.parametrize("text", ["a=3", "a", "a=Zx"])
    def test_bad_model_spec(self, text):
        with pytest.raises(TermSyntaxError):
            parse_model_spec(text)

    def test_env(self):
        ctx = parse_context("z:a, f:a -> a")
        env = parse_env("z=1, f=[0,2,1]", ctx, Z3)
        assert env[0] == GroupElem(3, 1)
        assert format_value(env[1]) == "{0↦0, 1↦2, 2↦1}"

    @pytest.mark.parametrize("text", ["z=3", "z=1", "z=[1]", "f=[0,1,2]"])
    def test_bad_env(self, text):
        ctx = parse_context("z:a, f:a -> a")
        with pytest.raises(TermSyntaxError):
            parse_env(text, ctx, Z3)

    def test_all_environments_cover_product(self):
        ctx = parse_context("z:a, w:a")
        assert set(environments(ctx, Z2)) == set(
            product(*[list(GroupT(2).carrier())] * 2)
        )
