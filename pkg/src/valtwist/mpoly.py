"""Sparse multivariate polynomials and rational functions over Q.

Representation invariants
-------------------------
* :class:`Monomial` holds a tuple of ``(variable, exponent)`` pairs with
  strictly positive integer exponents, sorted in variable order; the empty
  tuple is the monomial 1.
* :class:`Polynomial` maps monomials to nonzero ``Fraction`` coefficients;
  the zero polynomial is the empty map.
* :class:`RationalFunction` is a pair ``num / den`` with ``den != 0``.  On
  construction the common monomial content and the leading coefficient of
  ``den`` are cancelled, so ``den`` is lex-monic and at most one of ``num``,
  ``den`` mentions any given variable-power in content.  No polynomial gcd
  is ever computed: equality is decided by cross-multiplication.

Variable order
--------------
Variable names are compared by splitting a trailing integer suffix, so
``x < x2 < x10 < y``.  Monomials are compared lexicographically against
that variable order (a higher power of an earlier variable wins), which is
the order ``leading_term`` and the root recursion use.

Text format
-----------
The printers emit sums of terms like ``3/4*x2^2*y - x3`` with an optional
single `` / `` separating numerator from denominator.  The tokenizer treats
a slash *directly between two integers* as a rational coefficient; any
other slash is the fraction bar.  Exponents must be positive integers, so
``x^2/3`` is rejected — write ``x^2 / 3``.  print -> parse is the identity.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, lcm

__all__ = [
    "Monomial",
    "Polynomial",
    "RationalFunction",
    "nth_root",
    "rf_nth_root",
    "parse_polynomial",
    "parse_rational_function",
]


_VAR_KEYS: dict[str, tuple] = {}


def _var_key(name: str):
    key = _VAR_KEYS.get(name)
    if key is None:
        m = re.fullmatch(r"(.*?)(\d*)", name)
        prefix, digits = m.group(1), m.group(2)
        key = (prefix, int(digits) if digits else -1)
        _VAR_KEYS[name] = key
    return key


class Monomial:
    __slots__ = ("exps", "_hash")

    def __init__(self, exps=()):
        if isinstance(exps, dict):
            exps = exps.items()
        acc: dict[str, int] = {}
        for var, e in exps:
            if not isinstance(e, int):
                raise TypeError(f"exponent of {var} must be an int, got {e!r}")
            acc[var] = acc.get(var, 0) + e
        pairs = []
        for var, e in acc.items():
            if e < 0:
                raise ValueError(
                    f"negative exponent {e} for {var}; use a RationalFunction"
                )
            if e:
                pairs.append((var, e))
        pairs.sort(key=lambda p: _var_key(p[0]))
        self.exps = tuple(pairs)
        self._hash = hash(self.exps)

    @classmethod
    def _raw(cls, pairs: tuple) -> "Monomial":
        # internal: pairs must already be sorted with positive exponents
        m = object.__new__(cls)
        m.exps = pairs
        m._hash = hash(pairs)
        return m

    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    def variables(self):
        return {var for var, _ in self.exps}

    def exponent(self, var: str) -> int:
        for v, e in self.exps:
            if v == var:
                return e
        return 0

    def is_one(self) -> bool:
        return not self.exps

    def mul(self, other: "Monomial") -> "Monomial":
        if not self.exps:
            return other
        if not other.exps:
            return self
        a, b = self.exps, other.exps
        out = []
        i = j = 0
        while i < len(a) and j < len(b):
            va, ea = a[i]
            vb, eb = b[j]
            if va == vb:
                out.append((va, ea + eb))
                i += 1
                j += 1
            elif _var_key(va) < _var_key(vb):
                out.append(a[i])
                i += 1
            else:
                out.append(b[j])
                j += 1
        out.extend(a[i:])
        out.extend(b[j:])
        return Monomial._raw(tuple(out))

    def pow(self, n: int) -> "Monomial":
        if n < 0:
            raise ValueError("monomial powers must be non-negative")
        if n == 0 or not self.exps:
            return _ONE_MONOMIAL
        return Monomial._raw(tuple((var, e * n) for var, e in self.exps))

    def div(self, other: "Monomial") -> "Monomial | None":
        """Exact quotient self / other, or None if some exponent would go negative."""
        if not other.exps:
            return self
        # no new variables appear, so insertion order (sorted) is preserved
        acc = dict(self.exps)
        for var, e in other.exps:
            left = acc.get(var, 0) - e
            if left < 0:
                return None
            if left:
                acc[var] = left
            else:
                acc.pop(var, None)
        return Monomial._raw(tuple(acc.items()))

    def gcd(self, other: "Monomial") -> "Monomial":
        return Monomial._raw(
            tuple(
                (var, min(e, other.exponent(var)))
                for var, e in self.exps
                if other.exponent(var)
            )
        )

    def root(self, n: int) -> "Monomial | None":
        if any(e % n for _, e in self.exps):
            return None
        return Monomial._raw(tuple((var, e // n) for var, e in self.exps))

    def _cmp(self, other: "Monomial") -> int:
        i = j = 0
        a, b = self.exps, other.exps
        while i < len(a) or j < len(b):
            if i < len(a) and (j >= len(b) or _var_key(a[i][0]) < _var_key(b[j][0])):
                return 1  # self has a power of an earlier variable
            if j < len(b) and (i >= len(a) or _var_key(b[j][0]) < _var_key(a[i][0])):
                return -1
            if a[i][1] != b[j][1]:
                return 1 if a[i][1] > b[j][1] else -1
            i += 1
            j += 1
        return 0

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self):
        return self._hash

    def __str__(self):
        if not self.exps:
            return "1"
        return "*".join(
            var if e == 1 else f"{var}^{e}" for var, e in self.exps
        )

    def __repr__(self):
        return f"Monomial({self})"


_ONE_MONOMIAL = Monomial()


class Polynomial:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            acc: dict[Monomial, Fraction] = {}
            for mono, coeff in terms:
                c = acc.get(mono, 0) + Fraction(coeff)
                if c:
                    acc[mono] = c
                else:
                    acc.pop(mono, None)
            terms = acc
        self.terms = terms

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls({})

    @classmethod
    def one(cls) -> "Polynomial":
        return cls({_ONE_MONOMIAL: Fraction(1)})

    @classmethod
    def constant(cls, c) -> "Polynomial":
        c = Fraction(c)
        return cls({_ONE_MONOMIAL: c} if c else {})

    @classmethod
    def variable(cls, name: str, exp: int = 1) -> "Polynomial":
        return cls({Monomial(((name, exp),)): Fraction(1)})

    @classmethod
    def term(cls, mono: Monomial, coeff) -> "Polynomial":
        c = Fraction(coeff)
        return cls({mono: c} if c else {})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ONE_MONOMIAL in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms[_ONE_MONOMIAL]

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def variables(self):
        out = set()
        for mono in self.terms:
            out |= mono.variables()
        return out

    def sorted_terms(self):
        """Terms in descending lex order (leading first)."""
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def leading(self):
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        m = max(self.terms)
        return m, self.terms[m]

    def trailing(self):
        if not self.terms:
            raise ValueError("the zero polynomial has no trailing term")
        m = min(self.terms)
        return m, self.terms[m]

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("the zero polynomial has no degree")
        return max(m.degree() for m in self.terms)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        acc = dict(self.terms)
        for mono, coeff in other.terms.items():
            c = acc.get(mono, 0) + coeff
            if c:
                acc[mono] = c
            else:
                del acc[mono]
        return Polynomial(acc)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.terms or not other.terms:
            return Polynomial.zero()
        if len(other.terms) == 1:
            (mono, coeff), = other.terms.items()
            return Polynomial({m.mul(mono): c * coeff for m, c in self.terms.items()})
        if len(self.terms) == 1:
            (mono, coeff), = self.terms.items()
            return Polynomial({m.mul(mono): c * coeff for m, c in other.terms.items()})
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1.mul(m2)
                c = acc.get(m, 0) + c1 * c2
                if c:
                    acc[m] = c
                else:
                    del acc[m]
        return Polynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Polynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero()
        return Polynomial({m: coeff * c for m, coeff in self.terms.items()})

    def monomial_content(self) -> Monomial:
        """Componentwise minimum of the exponent vectors (1 for the zero polynomial)."""
        it = iter(self.terms)
        try:
            content = next(it)
        except StopIteration:
            return _ONE_MONOMIAL
        for mono in it:
            content = content.gcd(mono)
            if content.is_one():
                break
        return content

    def numeric_content(self) -> Fraction:
        """Positive fraction g with self/g integral, primitive; 0 for the zero polynomial."""
        if not self.terms:
            return Fraction(0)
        num = gcd(*(c.numerator for c in self.terms.values()))
        den = lcm(*(c.denominator for c in self.terms.values()))
        return Fraction(num, den)

    def divide_monomial(self, mono: Monomial) -> "Polynomial":
        acc = {}
        for m, c in self.terms.items():
            q = m.div(mono)
            if q is None:
                raise ValueError(f"{mono} does not divide every term of {self}")
            acc[q] = c
        return Polynomial(acc)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, (mono, coeff) in enumerate(self.sorted_terms()):
            mag = abs(coeff)
            if mono.is_one():
                body = str(mag)
            elif mag == 1:
                body = str(mono)
            else:
                body = f"{mag}*{mono}"
            if i == 0:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if coeff > 0 else f" - {body}")
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = Polynomial.zero()
            self.den = Polynomial.one()
            return
        content = num.monomial_content().gcd(den.monomial_content())
        if not content.is_one():
            num = num.divide_monomial(content)
            den = den.divide_monomial(content)
        _, lead = den.leading()
        if lead != 1:
            scale = 1 / lead
            num = num.scale(scale)
            den = den.scale(scale)
        self.num = num
        self.den = den

    @classmethod
    def constant(cls, c) -> "RationalFunction":
        return cls(Polynomial.constant(c))

    @classmethod
    def variable(cls, name: str, exp: int = 1) -> "RationalFunction":
        if exp < 0:
            return cls(Polynomial.one(), Polynomial.variable(name, -exp))
        return cls(Polynomial.variable(name, exp))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    def is_polynomial(self) -> bool:
        return self.den == Polynomial.one()

    def total_degree(self) -> int:
        """max(deg num, deg den) on the content-cancelled representation."""
        if self.is_zero():
            raise ValueError("the zero function has no degree")
        return max(self.num.total_degree(), self.den.total_degree())

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction, Polynomial)):
            return RationalFunction(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(RationalFunction)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inv(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("cannot invert zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, n):
        if not isinstance(n, int):
            raise ValueError("powers must be integers")
        if n < 0:
            return self.inv() ** (-n)
        return RationalFunction(self.num**n, self.den**n)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den.terms == other.den.terms:
            return self.num.terms == other.num.terms
        return self.num * other.den == other.num * self.den

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return f"{self.num} / {self.den}"

    def __repr__(self):
        return f"RationalFunction({self})"


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.constant(x)
    raise TypeError(f"cannot interpret {x!r} as a polynomial")


def as_rational_function(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, str):
        return parse_rational_function(x)
    return RationalFunction(_as_poly(x))


def _int_nth_root(m: int, n: int) -> int | None:
    """Exact n-th root of m >= 0, or None."""
    if m < 0:
        raise ValueError("negative radicand")
    if m in (0, 1):
        return m
    x = 1 << ((m.bit_length() + n - 1) // n)
    while True:
        y = ((n - 1) * x + m // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    return x if x**n == m else None


def _rational_nth_root(c: Fraction, n: int) -> Fraction | None:
    if c == 0:
        return Fraction(0)
    if c < 0 and n % 2 == 0:
        return None
    p = _int_nth_root(abs(c.numerator), n)
    q = _int_nth_root(c.denominator, n)
    if p is None or q is None:
        return None
    return Fraction(-p if c < 0 else p, q)


def nth_root(f: Polynomial, n: int, max_steps: int | None = None) -> Polynomial | None:
    """Polynomial g with ``g**n == f``, or None.

    Sound: a returned root is verified by reconstruction.  The leading-term
    recursion recovers the root of any perfect power whose intermediate
    term count stays under ``max_steps`` (default scales with the input);
    None therefore means "no root found", not a disproof.
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError("the root index must be an integer >= 2")
    if f.is_zero():
        return Polynomial.zero()
    lm, lc = f.leading()
    root_c = _rational_nth_root(lc, n)
    root_m = lm.root(n)
    if root_c is None or root_m is None:
        return None
    tm, tc = f.trailing()
    if tm.root(n) is None or _rational_nth_root(tc, n) is None:
        return None
    if f.total_degree() % n:
        return None
    g = Polynomial.term(root_m, root_c)
    denom_c = n * root_c ** (n - 1)
    denom_m = root_m.pow(n - 1)
    cap = max_steps if max_steps is not None else 4 * len(f) + 4 * f.total_degree() + 16
    last = root_m
    h = f - g**n
    steps = 0
    while not h.is_zero():
        steps += 1
        if steps > cap:
            return None
        hm, hc = h.leading()
        um = hm.div(denom_m)
        if um is None or not um < last:
            return None
        g = g + Polynomial.term(um, hc / denom_c)
        last = um
        h = f - g**n
    return g


def rf_nth_root(f: RationalFunction, n: int) -> RationalFunction | None:
    """Rational function g with ``g**n == f``, or None.

    Works on the stored (content-cancelled) representation, so a power
    hidden behind a non-monomial common factor of num and den is not found:
    sound, incomplete.
    """
    if f.is_zero():
        return RationalFunction(0)
    gn = nth_root(f.num, n)
    if gn is None:
        return None
    gd = nth_root(f.den, n)
    if gd is None:
        return None
    return RationalFunction(gn, gd)


# --- text format ------------------------------------------------------------

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                k = j + 1
                while k < n and text[k].isdigit():
                    k += 1
                tokens.append(("num", Fraction(int(text[i:j]), int(text[j + 1 : k]))))
                i = k
            else:
                tokens.append(("num", Fraction(int(text[i:j]))))
                i = j
            continue
        m = _NAME_RE.match(text, i)
        if m:
            tokens.append(("name", m.group()))
            i = m.end()
            continue
        if ch in "+-*^/":
            tokens.append((ch, ch))
            i += 1
            continue
        raise ValueError(f"unexpected character {ch!r} in {text!r}")
    return tokens


def _parse_poly_tokens(tokens, text: str) -> Polynomial:
    pos = 0

    def fail(msg):
        raise ValueError(f"{msg} in {text!r}")

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_factor():
        kind, value = take() if pos < len(tokens) else fail("unexpected end")
        if kind == "num":
            return Polynomial.constant(value)
        if kind != "name":
            fail(f"unexpected {value!r}")
        exp = 1
        if peek() == "^":
            take()
            if peek() != "num":
                fail("exponents must be positive integers")
            _, e = take()
            if e.denominator != 1 or e <= 0:
                fail(f"exponents must be positive integers, got {e}")
            exp = int(e)
        return Polynomial.variable(value, exp)

    def parse_term():
        poly = parse_factor()
        while peek() == "*":
            take()
            poly = poly * parse_factor()
        return poly

    if not tokens:
        fail("empty polynomial")
    sign = 1
    if peek() in ("+", "-"):
        sign = -1 if take()[0] == "-" else 1
    total = parse_term().scale(sign)
    while pos < len(tokens):
        kind, value = take()
        if kind == "+":
            total = total + parse_term()
        elif kind == "-":
            total = total - parse_term()
        else:
            fail(f"unexpected {value!r}")
    return total


def parse_polynomial(text: str) -> Polynomial:
    tokens = _tokenize(text)
    if any(kind == "/" for kind, _ in tokens):
        raise ValueError(f"unexpected '/' in polynomial {text!r}")
    return _parse_poly_tokens(tokens, text)


def parse_rational_function(text: str) -> RationalFunction:
    tokens = _tokenize(text)
    slashes = [i for i, (kind, _) in enumerate(tokens) if kind == "/"]
    if not slashes:
        return RationalFunction(_parse_poly_tokens(tokens, text))
    if len(slashes) > 1:
        raise ValueError(f"more than one fraction bar in {text!r}")
    cut = slashes[0]
    num = _parse_poly_tokens(tokens[:cut], text)
    den = _parse_poly_tokens(tokens[cut + 1 :], text)
    return RationalFunction(num, den)
