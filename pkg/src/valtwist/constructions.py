"""Constructive trivialization of twistings, and the finite-prime analyzer.

Two constructions produce certified-trivial choice functions:

* :func:`free_choice` — on a free subgroup with independent generators,
  sending sum(n_i * g_i) to prod(z_i ** n_i) is exactly multiplicative, so
  its twisting is identically 1.
* :func:`extend_choice` — one closed-by-radicals step.  Given a certified
  pair (Phi, eps) and a new degree g outside Phi with witness x_g, either
  no positive multiple of g lies in Phi (then eps extends by
  eps(a + n*g) = eps(a) * x_g**n), or the least such multiple n0 >= 2
  does, and an exact n0-th root a of eps(n0*g)/x_g**n0 — produced by the
  radical oracle, else :class:`RootNotFound` — makes
  eps(a + n*g) = eps(a) * (a*x_g)**n with the canonical exponent
  0 <= n < n0 exactly multiplicative again.

The analyzer mechanizes the finite-prime part of the degree obstruction:
with weights v(x_p) = 1/p, any choice function must satisfy the forced
identity eps(1) == eps(1/p)**p in initial form, hence p | deg(eps(1)) for
every listed prime.  Verdicts are per finite prime set; the step to all
primes at once is reported as narrative, not machine-checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import DomainError, RootNotFound, SetupError
from .mpoly import (
    Monomial,
    Polynomial,
    RationalFunction,
    as_rational_function,
    parse_rational_function,
    rf_nth_root,
)
from .ordgroup import FgSubgroup, GroupElement
from .twist import ChoiceFunction, GeneratorChoice, TableChoice, _subgroup_elements
from .valuation import MonomialValuation

__all__ = [
    "SubgroupWithChoice",
    "ExtensionChoice",
    "ExtensionStep",
    "free_choice",
    "free_pair",
    "extend_choice",
    "make_initial",
    "PowerCheck",
    "forced_power_check",
    "AnalyzerReport",
    "analyze_counterexample",
    "counterexample_valuation",
    "monomial_pool",
]


@dataclass(frozen=True)
class SubgroupWithChoice:
    """A value subgroup together with a choice function defined on it."""

    subgroup: FgSubgroup
    choice: ChoiceFunction
    certified_trivial: bool


def free_choice(valuation: MonomialValuation, generators, witnesses) -> GeneratorChoice:
    """Choice function on the free subgroup spanned by independent degrees."""
    return GeneratorChoice(valuation, generators, witnesses)


def free_pair(valuation: MonomialValuation, generators, witnesses) -> SubgroupWithChoice:
    eps = free_choice(valuation, generators, witnesses)
    return SubgroupWithChoice(eps.subgroup, eps, certified_trivial=True)


@dataclass(frozen=True)
class ExtensionStep:
    """What one extension step actually did, for reports."""

    gamma: GroupElement
    x_gamma: RationalFunction
    n0: int | None
    x0: RationalFunction | None
    root_class: str | None
    root_witness: RationalFunction | None


class ExtensionChoice(ChoiceFunction):
    """Choice function on Phi + Z*gamma extending a certified base.

    Every member decomposes canonically as alpha + n*gamma with alpha in
    Phi and 0 <= n < n0 (n unconstrained when no multiple of gamma returns
    to Phi); the value is eps(alpha) * factor**n.  With an exact root
    witness the extension is exactly multiplicative, hence certified
    trivial in turn.
    """

    def __init__(
        self,
        base: SubgroupWithChoice,
        gamma: GroupElement,
        factor: RationalFunction,
        step: ExtensionStep,
    ):
        super().__init__(base.choice.valuation)
        self.base = base
        self.gamma = gamma
        self.factor = factor
        self.step = step
        self.subgroup = FgSubgroup(gamma.dim, list(base.subgroup.generators) + [gamma])

    @property
    def n0(self) -> int | None:
        return self.step.n0

    def decompose(self, psi_el: GroupElement):
        """Canonical (alpha, n) with psi_el == alpha + n*gamma, alpha in the base."""
        witness = self.subgroup.decompose(psi_el)
        if witness is None:
            raise DomainError(f"degree {psi_el} is outside the extended subgroup")
        r = witness[-1]
        n = r if self.n0 is None else r % self.n0
        alpha = psi_el - n * self.gamma
        assert self.base.subgroup.contains(alpha)
        return alpha, n

    def _evaluate(self, psi_el: GroupElement) -> RationalFunction:
        alpha, n = self.decompose(psi_el)
        return self.base.choice(alpha) * self.factor**n

    def contains(self, psi_el: GroupElement) -> bool:
        return self.subgroup.contains(psi_el)

    def domain_elements(self, bound: int):
        return _subgroup_elements(self.subgroup.generators, bound)

    def describe(self) -> list[str]:
        s = self.step
        lines = [
            f"kind = extension by {self.gamma}",
            f"witness x_gamma = {s.x_gamma}",
        ]
        if s.n0 is None:
            lines.append("multiples of the new degree meet the base subgroup only in 0")
            lines.append(f"factor = {self.factor}")
        else:
            lines.append(f"least returning multiple n0 = {s.n0}")
            lines.append(f"epsilon(n0*gamma) = {s.x0}")
            lines.append(f"radical instance: {s.n0}-th root of class {s.root_class}")
            lines.append(f"root witness a = {s.root_witness}")
            lines.append(f"factor = a*x_gamma = {self.factor}")
        return lines


def extend_choice(
    base: SubgroupWithChoice,
    gamma,
    x_gamma,
    scan_bound: int = 10_000,
) -> SubgroupWithChoice:
    """One extension step; see the module docstring for the construction.

    For subgroups of Q the case split is exact; in higher dimension a
    returning multiple is searched up to ``scan_bound`` and a miss is
    treated as the non-returning case.
    """
    if not base.certified_trivial:
        raise ValueError("the base choice function must be certified trivial")
    v = base.choice.valuation
    gamma = gamma if isinstance(gamma, GroupElement) else GroupElement(gamma)
    x_gamma = as_rational_function(x_gamma)
    if base.subgroup.contains(gamma):
        raise ValueError(f"{gamma} already lies in the base subgroup")
    if x_gamma.is_zero() or v.value(x_gamma) != gamma:
        raise ValueError(
            f"witness for {gamma} has value "
            f"{'undefined' if x_gamma.is_zero() else v.value(x_gamma)}, expected {gamma}"
        )
    n0 = base.subgroup.min_multiple(gamma, bound=scan_bound)
    if n0 is None:
        step = ExtensionStep(gamma, x_gamma, None, None, None, None)
        factor = x_gamma
    else:
        x0 = base.choice(n0 * gamma)
        cls = v.residue(x0 / x_gamma**n0)
        a = cls.nth_root(n0)
        if a is None:
            raise RootNotFound(
                f"no {n0}-th root of the class {cls} was found; "
                f"the extension by {gamma} cannot be completed"
            )
        step = ExtensionStep(gamma, x_gamma, n0, x0, str(cls), a)
        factor = a * x_gamma
    eps = ExtensionChoice(base, gamma, factor, step)
    return SubgroupWithChoice(eps.subgroup, eps, certified_trivial=True)


def make_initial(eps: TableChoice) -> TableChoice:
    """Replace every tabulated value by its initial-part quotient."""
    if not isinstance(eps, TableChoice):
        raise TypeError("only tabulated choice functions can be initial-reduced")
    v = eps.valuation
    return TableChoice(v, {g: v.initial_rf(f) for g, f in eps.items()})


@dataclass(frozen=True)
class PowerCheck:
    """Outcome of one forced power identity eps(alpha)^n vs eps(n*alpha)."""

    alpha: GroupElement
    n: int
    lhs: Polynomial
    rhs: Polynomial
    consistent: bool

    def identity(self) -> str:
        op = "==" if self.consistent else "!="
        return f"{self.lhs} {op} {self.rhs}"


def forced_power_check(eps: ChoiceFunction, alpha, n: int) -> PowerCheck:
    """Check the cross-multiplied identity P^n * Q' == Q^n * P'.

    Here eps(alpha) = P/Q and eps(n*alpha) = P'/Q'.  On initial-reduced
    tables the identity holds iff eps(alpha)^n and eps(n*alpha) have equal
    initial form, which any choice function on these degrees is forced to
    satisfy.
    """
    alpha = alpha if isinstance(alpha, GroupElement) else GroupElement(alpha)
    e1 = eps(alpha)
    e2 = eps(n * alpha)
    lhs = e1.num**n * e2.den
    rhs = e1.den**n * e2.num
    return PowerCheck(alpha, n, lhs, rhs, lhs == rhs)


# --- the finite-prime analyzer ----------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def counterexample_valuation(primes) -> MonomialValuation:
    """Weights v(x_p) = 1/p for each listed prime."""
    return MonomialValuation({f"x{p}": Fraction(1, p) for p in primes})


def _split_monomial(primes, exps, positive: bool) -> Monomial:
    pairs = []
    for p, e in zip(primes, exps):
        k = e if positive else -e
        if k > 0:
            pairs.append((f"x{p}", k))
    return Monomial(pairs)


def monomial_pool(primes, target: Fraction, degree_bound: int) -> list[RationalFunction]:
    """All unit-coefficient quotients of the x_p with value ``target`` and
    degree at most ``degree_bound``, in exponent order."""
    primes = list(primes)
    out: list[RationalFunction] = []

    def rec(i: int, exps: list[int], value: Fraction, pos: int, neg: int):
        if pos > degree_bound or neg > degree_bound:
            return
        if i == len(primes):
            if value == target:
                num = Polynomial.term(_split_monomial(primes, exps, True), 1)
                den = Polynomial.term(_split_monomial(primes, exps, False), 1)
                out.append(RationalFunction(num, den))
            return
        p = primes[i]
        for e in range(-degree_bound, degree_bound + 1):
            rec(i + 1, exps + [e], value + Fraction(e, p), pos + max(e, 0), neg + max(-e, 0))

    rec(0, [], Fraction(0), 0, 0)
    return out


def _quote(value: str) -> str:
    if value == "" or any(ch in value for ch in " =|"):
        return '"' + value + '"'
    return value


def _kv_line(tag: str, pairs) -> str:
    return " ".join([tag] + [f"{k}={_quote(str(v))}" for k, v in pairs])


@dataclass(frozen=True)
class ForcedPowerRecord:
    p: int
    consistent: bool
    lhs: str
    rhs: str


@dataclass(frozen=True)
class RootRecord:
    p: int
    root: str | None
    divides: bool


@dataclass(frozen=True)
class ConsistentTable:
    assignments: tuple[tuple[str, str], ...]
    unit_degree: int
    divisible: bool
    recheck_ok: bool


@dataclass(frozen=True)
class AnalyzerReport:
    """Everything the analyzer established about one finite prime set."""

    primes: tuple[int, ...]
    mode: str  # "vacuous" | "table" | "enumerate"
    degree_bound: int | None
    candidates: tuple[tuple[str, str], ...] | None
    initial_table: tuple[tuple[str, str], ...] | None
    forced: tuple[ForcedPowerRecord, ...]
    roots: tuple[RootRecord, ...]
    unit_degree: int | None
    degree_caveat: bool
    lcm_primes: int | None
    divisible: bool | None
    conflict_detail: str | None
    pool_sizes: tuple[tuple[str, int], ...] | None
    consistent_tables: tuple[ConsistentTable, ...] | None
    verdict: str  # "VACUOUS" | "CONFLICT" | "DIVISIBILITY"
    narrative: tuple[str, ...]

    @property
    def exit_code(self) -> int:
        return 1 if self.verdict == "CONFLICT" else 0

    def render_text(self) -> str:
        lines = [f"prime set: {', '.join(str(p) for p in self.primes) or '(empty)'}"]
        lines.append(f"mode: {self.mode}")
        if self.candidates is not None:
            lines.append("candidate table:")
            lines += [f"  epsilon({d}) = {v}" for d, v in self.candidates]
        if self.initial_table is not None:
            lines.append("initial reduction:")
            lines += [f"  epsilon({d}) = {v}" for d, v in self.initial_table]
        for rec in self.forced:
            status = "consistent" if rec.consistent else "INCONSISTENT"
            lines.append(f"forced identity p={rec.p}: {status}: {rec.lhs} vs {rec.rhs}")
        for rec in self.roots:
            found = f"root {rec.root}" if rec.root is not None else "no root found"
            lines.append(
                f"p-th power p={rec.p}: {found}; p | deg(epsilon(1)): "
                f"{'yes' if rec.divides else 'no'}"
            )
        if self.unit_degree is not None:
            lines.append(f"deg(epsilon(1)) = {self.unit_degree}")
            if self.degree_caveat:
                lines.append(
                    "degree caveat: numerator and denominator are both non-monomial;"
                    " an undetected common factor could lower the degree"
                )
        if self.pool_sizes is not None:
            for d, size in self.pool_sizes:
                lines.append(f"candidate pool for degree {d}: {size} values")
        if self.consistent_tables is not None:
            lines.append(f"consistent joint tables: {len(self.consistent_tables)}")
            for i, t in enumerate(self.consistent_tables):
                inner = ", ".join(f"epsilon({d}) = {v}" for d, v in t.assignments)
                lines.append(
                    f"  [{i}] {inner}; deg(epsilon(1)) = {t.unit_degree}; "
                    f"lcm divides: {'yes' if t.divisible else 'no'}; "
                    f"twisting recheck: {'ok' if t.recheck_ok else 'FAILED'}"
                )
        if self.lcm_primes is not None and self.divisible is not None:
            lines.append(
                f"lcm({', '.join(str(p) for p in self.primes)}) = {self.lcm_primes} "
                f"divides deg(epsilon(1)): {'yes' if self.divisible else 'no'}"
            )
        if self.conflict_detail:
            lines.append(f"conflict: {self.conflict_detail}")
        lines.append(f"verdict: {self.verdict}")
        lines += list(self.narrative)
        return "\n".join(lines)

    def render_machine_lines(self) -> list[str]:
        lines = [
            _kv_line(
                "analyzer",
                [
                    ("mode", self.mode),
                    ("primes", ",".join(str(p) for p in self.primes)),
                    ("degree_bound", self.degree_bound if self.degree_bound is not None else "-"),
                ],
            )
        ]
        for d, v in self.candidates or ():
            lines.append(_kv_line("candidate", [("degree", d), ("value", v)]))
        for d, v in self.initial_table or ():
            lines.append(_kv_line("initial", [("degree", d), ("value", v)]))
        for rec in self.forced:
            lines.append(
                _kv_line(
                    "forced_power",
                    [
                        ("p", rec.p),
                        ("consistent", str(rec.consistent).lower()),
                        ("lhs", rec.lhs),
                        ("rhs", rec.rhs),
                    ],
                )
            )
        for rec in self.roots:
            lines.append(
                _kv_line(
                    "pth_root",
                    [
                        ("p", rec.p),
                        ("found", str(rec.root is not None).lower()),
                        ("root", rec.root if rec.root is not None else "-"),
                        ("divides", str(rec.divides).lower()),
                    ],
                )
            )
        if self.unit_degree is not None:
            lines.append(
                _kv_line(
                    "unit_degree",
                    [
                        ("value", self.unit_degree),
                        ("caveat", str(self.degree_caveat).lower()),
                    ],
                )
            )
        for d, size in self.pool_sizes or ():
            lines.append(_kv_line("pool", [("degree", d), ("size", size)]))
        for i, t in enumerate(self.consistent_tables or ()):
            entries = "|".join(f"{d}:{v}" for d, v in t.assignments)
            lines.append(
                _kv_line(
                    "consistent_table",
                    [
                        ("index", i),
                        ("entries", entries),
                        ("unit_degree", t.unit_degree),
                        ("divisible", str(t.divisible).lower()),
                        ("recheck", str(t.recheck_ok).lower()),
                    ],
                )
            )
        if self.lcm_primes is not None:
            lines.append(
                _kv_line(
                    "divisibility",
                    [
                        ("lcm", self.lcm_primes),
                        ("holds", str(bool(self.divisible)).lower()),
                    ],
                )
            )
        lines.append(
            _kv_line(
                "verdict",
                [
                    ("kind", self.verdict),
                    ("detail", self.conflict_detail or "-"),
                ],
            )
        )
        return lines


_NARRATIVE_FINITE = (
    "note: every verdict above concerns the listed primes only.",
    "note: running over all primes at once, deg(epsilon(1)) would need to be"
    " divisible by every prime, which no positive integer is; that final step"
    " is narrative, not machine-checked.",
)


def _degree_caveat(f: RationalFunction) -> bool:
    return len(f.num) > 1 and len(f.den) > 1


def _augmented_recheck(valuation, primes, unit_value, prime_values) -> bool:
    """Re-evaluate the twisting on the pairs implicated by the forced identities.

    The table {k/p: eps(1/p)^k} with eps(1) at degree 1 must twist to 1 on
    every pair (1/p, k/p) when the forced identities hold.
    """
    table = {GroupElement(Fraction(1)): unit_value}
    for p, val in zip(primes, prime_values):
        for k in range(1, p):
            table[GroupElement(Fraction(k, p))] = val**k
    eps = TableChoice(valuation, table)
    one = valuation.residue_one()
    for p in primes:
        base = GroupElement(Fraction(1, p))
        for k in range(1, p):
            if eps.twisting(base, GroupElement(Fraction(k, p))) != one:
                return False
    return True


def _conflict_residue(valuation, p: int, prime_value, unit_value) -> str:
    """The twisting value witnessing a failed forced identity at p."""
    cls = valuation.residue(prime_value**p / unit_value)
    return f"epsilon-bar(1/{p}, {p - 1}/{p}) = {cls} != 1"


def analyze_counterexample(primes, candidates=None, degree_bound: int = 8) -> AnalyzerReport:
    """Check the forced-identity lemmas over a finite prime set.

    ``candidates`` maps the degrees 1/p (one per prime) and 1 to explicit
    field elements; without it, every joint assignment from the
    unit-coefficient monomial pools up to ``degree_bound`` is tried.
    """
    primes = tuple(sorted(set(int(p) for p in primes)))
    for p in primes:
        if not _is_prime(p):
            raise SetupError(f"{p} is not a prime")
    if degree_bound < 1:
        raise SetupError("degree_bound must be positive")

    if not primes:
        return AnalyzerReport(
            primes=(),
            mode="vacuous",
            degree_bound=None,
            candidates=None,
            initial_table=None,
            forced=(),
            roots=(),
            unit_degree=None,
            degree_caveat=False,
            lcm_primes=None,
            divisible=None,
            conflict_detail=None,
            pool_sizes=None,
            consistent_tables=None,
            verdict="VACUOUS",
            narrative=("note: an empty prime set forces nothing.",),
        )

    valuation = counterexample_valuation(primes)
    unit = GroupElement(Fraction(1))
    lcm_p = lcm(*primes)

    if candidates is not None:
        return _analyze_table(primes, valuation, unit, lcm_p, candidates, degree_bound)
    return _analyze_enumeration(primes, valuation, unit, lcm_p, degree_bound)


def _coerce_candidates(primes, valuation, candidates) -> TableChoice:
    table = {}
    for key, value in candidates.items():
        if isinstance(key, str):
            key = GroupElement.parse(key, dim=1)
        elif not isinstance(key, GroupElement):
            key = GroupElement(key)
        if isinstance(value, str):
            value = parse_rational_function(value)
        table[key] = value
    needed = [GroupElement(Fraction(1, p)) for p in primes] + [GroupElement(Fraction(1))]
    for deg in needed:
        if deg not in table:
            raise SetupError(f"candidate table is missing degree {deg}")
    try:
        return TableChoice(valuation, table)
    except ValueError as exc:
        raise SetupError(f"malformed candidate table: {exc}") from None


def _analyze_table(primes, valuation, unit, lcm_p, candidates, degree_bound) -> AnalyzerReport:
    raw = _coerce_candidates(primes, valuation, candidates)
    initial = make_initial(raw)
    unit_value = initial(unit)
    unit_degree = unit_value.total_degree()

    forced = []
    conflict_detail = None
    for p in primes:
        check = forced_power_check(initial, GroupElement(Fraction(1, p)), p)
        forced.append(
            ForcedPowerRecord(p, check.consistent, str(check.lhs), str(check.rhs))
        )
        if not check.consistent and conflict_detail is None:
            conflict_detail = (
                f"p={p}: {check.identity()}; "
                + _conflict_residue(valuation, p, initial(GroupElement(Fraction(1, p))), unit_value)
            )

    roots = []
    for p in primes:
        root = rf_nth_root(unit_value, p)
        roots.append(RootRecord(p, str(root) if root is not None else None, unit_degree % p == 0))

    consistent = all(rec.consistent for rec in forced)
    if consistent:
        divisible = unit_degree % lcm_p == 0
        assert divisible  # forced identities make deg(epsilon(1)) = p * deg(epsilon(1/p))
        verdict = "DIVISIBILITY"
    else:
        divisible = None
        verdict = "CONFLICT"

    return AnalyzerReport(
        primes=primes,
        mode="table",
        degree_bound=None,
        candidates=tuple((str(d), str(v)) for d, v in raw.items()),
        initial_table=tuple((str(d), str(v)) for d, v in initial.items()),
        forced=tuple(forced),
        roots=tuple(roots),
        unit_degree=unit_degree,
        degree_caveat=_degree_caveat(unit_value),
        lcm_primes=lcm_p,
        divisible=divisible,
        conflict_detail=conflict_detail,
        pool_sizes=None,
        consistent_tables=None,
        verdict=verdict,
        narrative=_NARRATIVE_FINITE,
    )


def _analyze_enumeration(primes, valuation, unit, lcm_p, degree_bound) -> AnalyzerReport:
    pools = {p: monomial_pool(primes, Fraction(1, p), degree_bound) for p in primes}
    unit_pool = monomial_pool(primes, Fraction(1), degree_bound)
    pool_sizes = [(f"1/{p}", len(pools[p])) for p in primes] + [("1", len(unit_pool))]

    tables = []
    all_divisible = True

    def rec(i: int, chosen: list[RationalFunction]):
        if i == len(primes):
            for unit_value in unit_pool:
                if all(unit_value == val**p for p, val in zip(primes, chosen)):
                    deg = unit_value.total_degree()
                    divisible = deg % lcm_p == 0
                    recheck = _augmented_recheck(valuation, primes, unit_value, chosen)
                    assignments = tuple(
                        [(f"1/{p}", str(val)) for p, val in zip(primes, chosen)]
                        + [("1", str(unit_value))]
                    )
                    tables.append(ConsistentTable(assignments, deg, divisible, recheck))
            return
        for val in pools[primes[i]]:
            rec(i + 1, chosen + [val])

    rec(0, [])
    all_divisible = all(t.divisible for t in tables)

    return AnalyzerReport(
        primes=primes,
        mode="enumerate",
        degree_bound=degree_bound,
        candidates=None,
        initial_table=None,
        forced=(),
        roots=(),
        unit_degree=None,
        degree_caveat=False,
        lcm_primes=lcm_p,
        divisible=all_divisible,
        conflict_detail=None,
        pool_sizes=tuple(pool_sizes),
        consistent_tables=tuple(tables),
        verdict="DIVISIBILITY",
        narrative=(
            "note: candidate values are unit-coefficient monomial quotients;"
            " constants change neither degrees nor the forced identities' shape.",
        )
        + _NARRATIVE_FINITE,
    )
