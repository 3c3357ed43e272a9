"""Monomial valuations on rational function fields, and their residues.

A :class:`MonomialValuation` assigns every variable a weight in a
lex-ordered Q^d.  A monomial takes the exponent-weighted sum of its
variables' weights, a nonzero polynomial the minimum over its terms, and a
quotient the difference — well defined on the field because the valuation
is multiplicative.

The initial part of a polynomial keeps exactly the minimal-value terms.
Because a term-by-term product of two initial polynomials concentrates in
a single value, initial parts are multiplicative here, which is what lets
residue classes be compared by polynomial cross-multiplication and never
by division.

A :class:`ResidueElement` is a value-zero class of the residue field,
represented by a quotient of initial polynomials of equal value (or the
zero class, which only arises from additive cancellation).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatchError
from .mpoly import Polynomial, RationalFunction, as_rational_function, rf_nth_root
from .ordgroup import GroupElement

__all__ = ["MonomialValuation", "ResidueElement"]


class MonomialValuation:
    __slots__ = ("weights", "dim", "_zero")

    def __init__(self, weights: dict):
        if not weights:
            raise ValueError("a valuation needs at least one weighted variable")
        coerced = {}
        dim = None
        for var, w in weights.items():
            w = w if isinstance(w, GroupElement) else GroupElement(w)
            if dim is None:
                dim = w.dim
            elif w.dim != dim:
                raise DimensionMismatchError(
                    f"weight of {var} has dimension {w.dim}, expected {dim}"
                )
            coerced[var] = w
        self.weights = coerced
        self.dim = dim
        self._zero = GroupElement.zero(dim)

    @property
    def group_zero(self) -> GroupElement:
        return self._zero

    def variables(self):
        return sorted(self.weights)

    def monomial_value(self, mono) -> GroupElement:
        total = self._zero
        for var, e in mono.exps:
            w = self.weights.get(var)
            if w is None:
                raise ValueError(f"no weight configured for variable {var!r}")
            total = total + e * w
        return total

    def polynomial_value(self, p: Polynomial) -> GroupElement:
        if p.is_zero():
            raise ValueError("the zero polynomial has no value")
        return min(self.monomial_value(m) for m in p.terms)

    def value(self, f) -> GroupElement:
        f = as_rational_function(f)
        if f.is_zero():
            raise ValueError("zero has no value")
        return self.polynomial_value(f.num) - self.polynomial_value(f.den)

    def initial_part(self, p: Polynomial) -> Polynomial:
        if p.is_zero():
            raise ValueError("the zero polynomial has no initial part")
        cut = self.polynomial_value(p)
        return Polynomial(
            {m: c for m, c in p.terms.items() if self.monomial_value(m) == cut}
        )

    def is_initial(self, p: Polynomial) -> bool:
        if p.is_zero():
            return False
        values = {self.monomial_value(m) for m in p.terms}
        return len(values) == 1

    def initial_rf(self, f) -> RationalFunction:
        """The quotient of initial parts; same initial class, canonical shape."""
        f = as_rational_function(f)
        if f.is_zero():
            raise ValueError("zero has no initial part")
        return RationalFunction(self.initial_part(f.num), self.initial_part(f.den))

    def in_eq(self, x, y) -> bool:
        """Initial-form equality: equal values and v(x - y) > v(x)."""
        x = as_rational_function(x)
        y = as_rational_function(y)
        vx = self.value(x)
        if vx != self.value(y):
            return False
        d = x - y
        return d.is_zero() or self.value(d) > vx

    def residue(self, f) -> "ResidueElement":
        f = as_rational_function(f)
        if self.value(f) != self._zero:
            raise ValueError(f"residue needs a value-zero element, got value {self.value(f)}")
        rep = self.initial_rf(f)
        return ResidueElement(self, rep.num, rep.den)

    def residue_zero(self) -> "ResidueElement":
        return ResidueElement(self, Polynomial.zero(), Polynomial.one())

    def residue_one(self) -> "ResidueElement":
        return ResidueElement(self, Polynomial.one(), Polynomial.one())

    def residue_constant(self, c) -> "ResidueElement":
        c = Fraction(c)
        return ResidueElement(self, Polynomial.constant(c), Polynomial.one())

    def __eq__(self, other):
        return isinstance(other, MonomialValuation) and self.weights == other.weights

    def __hash__(self):
        return hash(frozenset(self.weights.items()))

    def __repr__(self):
        inner = ", ".join(f"{v}={w}" for v, w in sorted(self.weights.items()))
        return f"MonomialValuation({inner})"


class ResidueElement:
    """A residue-field element as a quotient of initial polynomials.

    Invariant: ``num`` and ``den`` are initial with equal values (den
    nonzero); the zero class has ``num == 0``.  Equality is
    cross-multiplied polynomial equality, exact because initial parts are
    multiplicative for monomial valuations.
    """

    __slots__ = ("valuation", "num", "den")

    def __init__(self, valuation: MonomialValuation, num: Polynomial, den: Polynomial):
        self.valuation = valuation
        self.num = num
        self.den = den

    @classmethod
    def _make(cls, valuation, num: Polynomial, den: Polynomial) -> "ResidueElement":
        rf = RationalFunction(num, den)
        return cls(valuation, rf.num, rf.den)

    def _check(self, other) -> "ResidueElement":
        if not isinstance(other, ResidueElement):
            raise TypeError(f"expected ResidueElement, got {type(other).__name__}")
        if other.valuation != self.valuation:
            raise ValueError("residues over different valuations cannot be combined")
        return other

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def rep(self) -> RationalFunction:
        if self.is_zero():
            return RationalFunction(0)
        return RationalFunction(self.num, self.den)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.valuation.residue_constant(other)
        other = self._check(other)
        if self.is_zero() or other.is_zero():
            return self.valuation.residue_zero()
        return self._make(self.valuation, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.valuation.residue_constant(other)
        other = self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        num = self.num * other.den + other.num * self.den
        if num.is_zero():
            return self.valuation.residue_zero()
        den = self.den * other.den
        # like-value terms may cancel partially, never drop below the shared value
        assert self.valuation.polynomial_value(num) == self.valuation.polynomial_value(den)
        return self._make(self.valuation, num, den)

    __radd__ = __add__

    def __neg__(self):
        return ResidueElement(self.valuation, -self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.valuation.residue_constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def inv(self) -> "ResidueElement":
        if self.is_zero():
            raise ZeroDivisionError("the zero class has no inverse")
        return self._make(self.valuation, self.den, self.num)

    def __pow__(self, n):
        if not isinstance(n, int):
            raise ValueError("powers must be integers")
        if n < 0:
            return self.inv() ** (-n)
        if self.is_zero():
            return self if n else self.valuation.residue_one()
        return self._make(self.valuation, self.num**n, self.den**n)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.valuation.residue_constant(other)
        elif not isinstance(other, ResidueElement):
            return NotImplemented
        if other.valuation != self.valuation:
            return False
        return self.num * other.den == other.num * self.den

    def nth_root(self, n: int) -> RationalFunction | None:
        """A field element a with residue(a**n) == self, or None (incomplete)."""
        if self.is_zero():
            return None
        return rf_nth_root(self.rep(), n)

    def as_rational(self) -> Fraction | None:
        """The class as a rational number, or None if it is not constant."""
        if self.is_zero():
            return Fraction(0)
        if self.num.is_constant() and self.den.is_constant():
            return self.num.constant_value() / self.den.constant_value()
        nm, nc = self.num.leading()
        dm, dc = self.den.leading()
        if nm != dm:
            return None
        c = nc / dc
        return c if self.num == self.den.scale(c) else None

    def __str__(self):
        return "0" if self.is_zero() else str(self.rep())

    def __repr__(self):
        return f"ResidueElement({self})"
