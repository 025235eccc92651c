from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from toroidal.scalars import (Combination, ParamContext, ScalarError, combination_normalize,
                              rational_arith, to_q)

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)


def test_rational_arith_examples():
    assert rational_arith(Fraction(1, 3), Fraction(1, 6), "add") == Fraction(1, 2)
    assert rational_arith(Fraction(2, 7), Fraction(3, 5), "div") == Fraction(10, 21)
    assert rational_arith("5/4", 1, "sub") == Fraction(1, 4)


@given(rationals)
def test_zero_absorbs(x):
    assert rational_arith(x, 0, "mul") == 0


def test_division_by_zero_is_rejected():
    with pytest.raises(ScalarError):
        rational_arith(1, 0, "div")


def test_unknown_operation_is_rejected():
    with pytest.raises(ScalarError):
        rational_arith(1, 2, "pow")


@pytest.mark.parametrize("bad", [0.5, True, None, "1/0", "abc"])
def test_to_q_refuses_inexact_or_malformed_input(bad):
    with pytest.raises(ScalarError):
        to_q(bad)


def test_combination_normalize_examples():
    assert dict(combination_normalize({"e1": 1, "e2": 0})) == {"e1": Fraction(1)}
    assert dict(combination_normalize({})) == {}
    half = Combination({"e1": Fraction(1, 2)})
    assert (half + Combination({"e1": Fraction(-1, 2)})).is_zero()


@given(st.dictionaries(st.sampled_from("abcde"), rationals, max_size=5),
       st.dictionaries(st.sampled_from("abcde"), rationals, max_size=5))
def test_combination_group_laws(x, y):
    cx, cy = Combination(x), Combination(y)
    assert (cx + cy) - cy == cx
    assert cx + cy == cy + cx
    assert (cx - cx).is_zero()
    assert all(v != 0 for v in (cx + cy).values())


@given(st.dictionaries(st.sampled_from("abc"), rationals, max_size=3), rationals, rationals)
def test_combination_scaling_is_linear(x, a, b):
    c = Combination(x)
    assert c.scale(a + b) == c.scale(a) + c.scale(b)
    assert c.scale(a).scale(b) == c.scale(a * b)


def test_combination_text_is_sorted_and_exact():
    c = Combination({"b": Fraction(-2, 3), "a": 5})
    assert c.to_text() == "(5)*a + (-2/3)*b"
    assert Combination().to_text() == "0"


def test_param_context_rejects_zero_level_and_float_parameters():
    with pytest.raises(ValueError):
        ParamContext(1, ell=0)
    with pytest.raises(ValueError):
        ParamContext(1.0)
    with pytest.raises(ScalarError):
        ParamContext(1, mu=0.5)


def test_param_context_central_charge():
    ctx = ParamContext(2, mu=Fraction(1, 3), ell=2)
    assert ctx.central_charge == 24 * Fraction(1, 3) * 2 - 2
    assert ctx.replace(mu=0).central_charge == -2
