"""Monomial valuations, initial parts, and exact residue arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from valtwist.mpoly import (
    Monomial,
    Polynomial,
    RationalFunction,
    parse_polynomial,
    parse_rational_function,
)
from valtwist.ordgroup import GroupElement
from valtwist.valuation import MonomialValuation


def P(text):
    return parse_polynomial(text)


def RF(text):
    return parse_rational_function(text)


@pytest.fixture
def v():
    # v(x) = 1, v(y) = 1/2 on Q(x, y)
    return MonomialValuation({"x": 1, "y": Fraction(1, 2)})


@pytest.fixture
def vlex():
    return MonomialValuation({"x": (1, 0), "y": (0, 1)})


class TestValues:
    def test_monomial_value(self, v):
        assert v.monomial_value(Monomial((("x", 2), ("y", 1)))) == GroupElement(
            Fraction(5, 2)
        )
        assert v.monomial_value(Monomial()) == GroupElement(0)

    def test_polynomial_value_is_min(self, v):
        assert v.polynomial_value(P("x + y")) == GroupElement(Fraction(1, 2))
        assert v.polynomial_value(P("3")) == GroupElement(0)
        with pytest.raises(ValueError):
            v.polynomial_value(Polynomial.zero())

    def test_fraction_value_is_difference(self, v):
        assert v.value(RF("x^2 + x*y / y")) == GroupElement(1)
        assert v.value(P("x")) == GroupElement(1)
        assert v.value(Fraction(7)) == GroupElement(0)
        with pytest.raises(ValueError):
            v.value(0)

    def test_lex_values(self, vlex):
        assert vlex.value(RF("x / y")) == GroupElement((1, -1))
        assert vlex.polynomial_value(P("x + y")) == GroupElement((0, 1))

    def test_unknown_variable_rejected(self, v):
        with pytest.raises(ValueError):
            v.value(P("z"))

    def test_weights_must_share_dimension(self):
        with pytest.raises(Exception):
            MonomialValuation({"x": (1, 0), "y": 1})


class TestInitialParts:
    def test_initial_part_keeps_minimal_terms(self, v):
        assert v.initial_part(P("x + y")) == P("y")
        assert v.initial_part(P("x^2 + x*y + y^2")) == P("y^2")
        # x and y^2 share the value 1, so both survive
        assert v.initial_part(P("x + y^2 + x^2")) == P("x + y^2")
        assert v.initial_part(P("x")) == P("x")

    def test_is_initial(self, v):
        assert v.is_initial(P("x + y^2"))
        assert not v.is_initial(P("x + y"))

    def test_initial_rf(self, v):
        f = v.initial_rf(RF("x + y / x^2 + x*y"))
        assert f == RF("y / x*y")
        assert v.initial_rf(RF("x / y")) == RF("x / y")

    def test_in_eq_oracles(self, v):
        assert v.in_eq(RF("x + y"), RF("y"))
        assert not v.in_eq(RF("x"), RF("y"))
        assert v.in_eq(RF("x"), RF("x"))
        # equal values but different initial parts
        assert not v.in_eq(RF("y"), RF("2*y"))

    def test_in_eq_is_an_equivalence(self, v):
        a, b, c = RF("y + x"), RF("y + x^2"), RF("y")
        assert v.in_eq(a, b) and v.in_eq(b, c) and v.in_eq(a, c)


class TestResidues:
    def test_residue_requires_value_zero(self, v):
        with pytest.raises(ValueError):
            v.residue(RF("x / y"))

    def test_residue_of_constant_quotient(self, v):
        r = v.residue(RF("2*x + x^2 / x"))
        assert r.as_rational() == 2
        assert r == 2

    def test_residue_equality_is_cross_product(self, v):
        a = v.residue(RF("y^2 / x"))
        assert a == v.residue(RF("2*y^4 / 2*x*y^2"))
        assert a != v.residue(RF("2*y^2 / x"))

    def test_residue_arithmetic(self, v):
        a = v.residue(RF("y^2 / x"))
        assert str((a * a).rep()) == "y^4 / x^2"
        assert a * a.inv() == 1
        assert (a - a).is_zero()
        assert a + a == v.residue(RF("2*y^2 / x"))
        assert a ** 2 == a * a
        assert a ** -1 == a.inv()
        assert (-a) + a == v.residue_zero()

    def test_residue_sum_can_drop_to_zero_class(self, v):
        a = v.residue(RF("y^2 / x"))
        b = v.residue(RF("-y^2 + y^3 / x"))
        # initial parts cancel exactly
        assert (a + b).is_zero()

    def test_zero_class_behavior(self, v):
        z = v.residue_zero()
        assert z.is_zero() and str(z) == "0"
        a = v.residue(RF("y^2 / x"))
        assert a + z == a and a * z == z
        with pytest.raises(ZeroDivisionError):
            z.inv()

    def test_residue_constants(self, v):
        assert v.residue_one() == 1
        assert v.residue_constant(Fraction(-3, 4)).as_rational() == Fraction(-3, 4)
        assert v.residue_constant(0).is_zero()

    def test_as_rational_none_for_non_constant(self, v):
        assert v.residue(RF("y^2 / x")).as_rational() is None

    def test_nth_root(self, v):
        sq = v.residue(RF("y^4 / x^2"))
        assert sq.nth_root(2) == RF("y^2 / x")
        assert v.residue(RF("y^2 / x")).nth_root(2) is None
        assert v.residue_zero().nth_root(2) is None

    def test_valuations_compare_by_weights(self, v):
        assert v == MonomialValuation({"x": 1, "y": Fraction(1, 2)})
        assert v != MonomialValuation({"x": 1, "y": 1})
        assert hash(v) == hash(MonomialValuation({"y": Fraction(1, 2), "x": 1}))


_names = st.sampled_from(["x", "y"])
_monos = st.dictionaries(_names, st.integers(1, 3), max_size=2).map(
    lambda d: Monomial(tuple(d.items()))
)
_coeffs = st.fractions(min_value=-4, max_value=4, max_denominator=3).filter(bool)
_polys = st.dictionaries(_monos, _coeffs, min_size=1, max_size=3).map(Polynomial)


@given(_polys, _polys)
def test_value_is_multiplicative(p, q):
    v = MonomialValuation({"x": 1, "y": Fraction(1, 2)})
    assert v.polynomial_value(p * q) == v.polynomial_value(p) + v.polynomial_value(q)


@given(_polys, _polys)
def test_initial_part_is_multiplicative(p, q):
    v = MonomialValuation({"x": 1, "y": Fraction(1, 2)})
    assert v.initial_part(p * q) == v.initial_part(p) * v.initial_part(q)


@given(_polys, _polys)
def test_value_of_sum_at_least_min(p, q):
    v = MonomialValuation({"x": 1, "y": Fraction(1, 2)})
    s = p + q
    if not s.is_zero():
        assert v.polynomial_value(s) >= min(
            v.polynomial_value(p), v.polynomial_value(q)
        )
