"""Buchberger-based Groebner engine over the rationals.

Supports ideal membership (normal forms), vector-space dimension of the
quotient ring (standard monomial counts), Krull dimension of the variety via
the combinatorial independent-set criterion on the leading-term ideal, and
Tjurina numbers of affine hypersurface singularities.

The pair-selection strategy is the normal one (smallest lcm of leading
terms under the active order, ties by generator index), so output is
deterministic for a fixed input sequence.  A step budget guards against
blowup: exceeding it raises :class:`BudgetExceededError`; nothing is ever
silently truncated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BudgetExceededError, ChartMismatchError, PreconditionError
from .polyalg import Chart, Exponent, Poly

DEFAULT_BUDGET = 10**6


class _Infinite:
    """Cardinality marker for unbounded staircases."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITE"


INFINITE = _Infinite()


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order: grevlex (default), lex, or weighted-grevlex.

    All three are total orders compatible with multiplication, with 1
    minimal.  Weighted-grevlex compares weighted degrees first, using the
    chart's weights, then falls back to the grevlex tiebreak.
    """

    kind: str

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "weighted-grevlex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, chart: Chart):
        """Sort key on exponent tuples, ascending (1 is minimal)."""
        if self.kind == "lex":
            return lambda e: e
        if self.kind == "grevlex":
            return lambda e: (sum(e), tuple(-x for x in reversed(e)))
        weights = chart.weights
        return lambda e: (
            sum(w * x for w, x in zip(weights, e)),
            sum(e),
            tuple(-x for x in reversed(e)),
        )


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")
WEIGHTED_GREVLEX = MonomialOrder("weighted-grevlex")


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced, monic Groebner basis under a fixed monomial order.

    ``gens`` is sorted by leading term (ascending), which makes the reduced
    basis a canonical representative of its ideal.
    """

    chart: Chart
    order: MonomialOrder
    gens: tuple[Poly, ...]

    def leading_exponents(self) -> list[Exponent]:
        key = self.order.key(self.chart)
        return [g.leading(key)[0] for g in self.gens]

    def __str__(self) -> str:
        return "{" + ", ".join(str(g) for g in self.gens) + "}"


class _StepCounter:
    __slots__ = ("remaining",)

    def __init__(self, budget: int):
        self.remaining = budget

    def spend(self):
        self.remaining -= 1
        if self.remaining < 0:
            raise BudgetExceededError(
                "Groebner step budget exceeded; raise it with a larger budget"
            )


def _divides(d: Exponent, e: Exponent) -> bool:
    return all(a <= b for a, b in zip(d, e))


def _monomial_quotient(e: Exponent, d: Exponent) -> Exponent:
    return tuple(a - b for a, b in zip(e, d))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def division(p: Poly, divisors: list[Poly], order: MonomialOrder, counter: _StepCounter | None = None):
    """Multivariate division: p = sum quotients[i] * divisors[i] + remainder.

    No remainder term is divisible by any divisor's leading term.  The
    quotient trace certifies ideal membership whenever the remainder is 0.
    """
    chart = p.chart
    key = order.key(chart)
    leads = [d.leading(key) for d in divisors]
    quotients = [Poly.zero(chart) for _ in divisors]
    remainder = Poly.zero(chart)
    work = p
    while not work.is_zero:
        exp, coeff = work.leading(key)
        for i, (lead_exp, lead_coeff) in enumerate(leads):
            if _divides(lead_exp, exp):
                if counter is not None:
                    counter.spend()
                q = Poly.monomial(chart, _monomial_quotient(exp, lead_exp), coeff / lead_coeff)
                quotients[i] = quotients[i] + q
                work = work - q * divisors[i]
                break
        else:
            t = Poly.monomial(chart, exp, coeff)
            remainder = remainder + t
            work = work - t
    return quotients, remainder


def buchberger(
    gens: list[Poly], order: MonomialOrder = GREVLEX, budget: int = DEFAULT_BUDGET
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Deterministic for a fixed input sequence: normal pair selection with
    index tiebreak, plus the coprime-leading-term criterion.
    """
    nonzero = [g for g in gens if not g.is_zero]
    if not nonzero:
        chart = gens[0].chart if gens else None
        if chart is None:
            raise ValueError("buchberger needs at least one polynomial to fix the chart")
        return GroebnerBasis(chart, order, ())
    chart = nonzero[0].chart
    for g in nonzero:
        if g.chart != chart:
            raise ChartMismatchError("generators live on different charts")
    key = order.key(chart)
    counter = _StepCounter(budget)

    basis = [g * (1 / g.leading(key)[1]) for g in nonzero]
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]

    def lead(i: int) -> Exponent:
        return basis[i].leading(key)[0]

    while pairs:
        pairs.sort(key=lambda ij: (key(_lcm(lead(ij[0]), lead(ij[1]))), ij))
        i, j = pairs.pop(0)
        li, lj = lead(i), lead(j)
        lcm = _lcm(li, lj)
        if lcm == tuple(a + b for a, b in zip(li, lj)):
            continue  # coprime leading terms: S-polynomial reduces to zero
        s = Poly.monomial(chart, _monomial_quotient(lcm, li), 1) * basis[i] - Poly.monomial(
            chart, _monomial_quotient(lcm, lj), 1
        ) * basis[j]
        _, remainder = division(s, basis, order, counter)
        if remainder.is_zero:
            continue
        remainder = remainder * (1 / remainder.leading(key)[1])
        basis.append(remainder)
        new = len(basis) - 1
        pairs.extend((i2, new) for i2 in range(new))

    # Minimalize: drop generators whose leading term another one divides.
    basis.sort(key=lambda g: key(g.leading(key)[0]))
    minimal: list[Poly] = []
    for g in basis:
        e = g.leading(key)[0]
        if not any(_divides(h.leading(key)[0], e) for h in minimal):
            minimal.append(g)
    # Reduce every generator modulo the others until stable.
    reduced = list(minimal)
    for idx, g in enumerate(reduced):
        others = reduced[:idx] + reduced[idx + 1 :]
        if not others:
            continue
        _, r = division(g, others, order, counter)
        reduced[idx] = r * (1 / r.leading(key)[1])
    reduced.sort(key=lambda g: key(g.leading(key)[0]))
    return GroebnerBasis(chart, order, tuple(reduced))


def normal_form(p: Poly, G: GroebnerBasis) -> Poly:
    """Unique remainder of p modulo G: no term divisible by a leading term."""
    if p.chart != G.chart:
        raise ChartMismatchError("polynomial lives on a different chart")
    if not G.gens:
        return p
    _, remainder = division(p, list(G.gens), G.order)
    return remainder


def quotient_dimension(G: GroebnerBasis):
    """Number of standard monomials, or INFINITE when the staircase is unbounded.

    The quotient is finite-dimensional iff the leading-term ideal contains a
    pure power of every variable.
    """
    n = G.chart.n
    leads = G.leading_exponents()
    if any(sum(e) == 0 for e in leads):
        return 0  # unit ideal: the quotient ring is zero
    bounds = []
    for i in range(n):
        pure = [e[i] for e in leads if all(e[j] == 0 for j in range(n) if j != i)]
        if not pure:
            return INFINITE
        bounds.append(min(pure))
    count = 0
    for exponent in itertools.product(*(range(b) for b in bounds)):
        if not any(_divides(e, exponent) for e in leads):
            count += 1
    return count


def ideal_dimension(G: GroebnerBasis) -> int:
    """Krull dimension of the variety; -1 for the empty variety (1 in G).

    Computed as the maximum size of a set S of variables such that no
    leading term involves only variables from S.
    """
    n = G.chart.n
    leads = G.leading_exponents()
    if any(sum(e) == 0 for e in leads):
        return -1
    supports = [frozenset(i for i in range(n) if e[i]) for e in leads]
    for size in range(n, 0, -1):
        for subset in itertools.combinations(range(n), size):
            s = frozenset(subset)
            if not any(support <= s for support in supports):
                return size
    return 0


def jacobian_ideal_basis(
    f: Poly,
    include_f: bool = True,
    order: MonomialOrder = GREVLEX,
    budget: int = DEFAULT_BUDGET,
) -> GroebnerBasis:
    """Groebner basis of (f, df/dx_1, ..., df/dx_n), or of the partials only."""
    gens = [f] if include_f else []
    gens.extend(f.diff(i) for i in range(f.chart.n))
    if all(g.is_zero for g in gens):
        return GroebnerBasis(f.chart, order, ())
    return buchberger(gens, order, budget)


def tjurina_global(f: Poly, order: MonomialOrder = GREVLEX, budget: int = DEFAULT_BUDGET):
    """Vector-space dimension of O/(f, df/dx_1, ..., df/dx_n), or INFINITE.

    Equals the sum of the local Tjurina numbers when all singular points of
    the affine hypersurface f = 0 are isolated; non-isolated singular loci
    give INFINITE.
    """
    if f.is_zero or f.is_constant:
        raise PreconditionError("the Tjurina number needs a nonconstant polynomial")
    return quotient_dimension(jacobian_ideal_basis(f, order=order, budget=budget))


def tjurina_at_point(f: Poly, point, order: MonomialOrder = GREVLEX, budget: int = DEFAULT_BUDGET):
    """Tjurina number after translating ``point`` to the origin.

    This is translation plus the global computation on the translated
    polynomial (no localization), so it counts every singular point of the
    translated curve; it is the local number only when the singularity at
    ``point`` is the sole one, and non-isolated singularities give INFINITE.
    """
    return tjurina_global(f.shift(point), order=order, budget=budget)
