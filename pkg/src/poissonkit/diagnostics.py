"""Holonomicity and log-symplectic diagnostics.

The decision procedure is sound but deliberately one-sided where the theory
is: a non-reduced degeneracy divisor rules holonomicity out; on surfaces,
log symplectic is exactly holonomic; in higher even dimension a
positive-dimensional locus of rank-zero modular leaves (points where both
pi and its modular field vanish) rules holonomicity out, while
``NO_OBSTRUCTION_FOUND`` is explicitly *not* a holonomicity certificate.
Only the rank-0 stratum is searched; positive-even-rank modular leaves
would need a rank stratification that is out of scope.

All verdicts are computed in the polynomial category.  For polynomial input
the squarefreeness test agrees with analytic reducedness, but leaf counts
beyond the rank-0 stratum may differ from the analytic picture.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DegenerateEverywhereError, NonReducedCurveError, PreconditionError
from .groebner import (
    DEFAULT_BUDGET,
    GREVLEX,
    GroebnerBasis,
    INFINITE,
    buchberger,
    ideal_dimension,
    jacobian_ideal_basis,
    normal_form,
    quotient_dimension,
)
from .multivec import Polyvector
from .poisson import PoissonStructure, hamiltonian, modular_field, pfaffian
from .polyalg import Poly, gcd_multi, is_squarefree


class Verdict(enum.Enum):
    NOT_LOG_SYMPLECTIC = "NotLogSymplectic"
    OBSTRUCTED_BY_MODULAR_LEAVES = "ObstructedByModularLeaves"
    SURFACE_HOLONOMIC = "SurfaceHolonomic"
    NO_OBSTRUCTION_FOUND = "NoObstructionFound"


@dataclass(frozen=True)
class HolonomyVerdict:
    """Decision plus witness.

    ``NOT_LOG_SYMPLECTIC`` carries the non-squarefree factor
    gcd(f, df/dx_1, ..., df/dx_n) of the Pfaffian f.
    ``OBSTRUCTED_BY_MODULAR_LEAVES`` carries the rank-0 modular-leaf ideal
    and its (positive) dimension.  ``NO_OBSTRUCTION_FOUND`` also records the
    locus it inspected, as context rather than as a certificate.
    """

    verdict: Verdict
    witness_ideal: GroebnerBasis | None = None
    witness_dimension: int | None = None
    nonreduced_factor: Poly | None = None


@dataclass(frozen=True)
class SurfaceLeafReport:
    """Leaf taxonomy data of a Poisson surface with degeneracy curve f = 0.

    The open complement of the curve is the single two-dimensional leaf; the
    smooth locus of the curve carries the one-dimensional leaves; the
    zero-dimensional leaves are the points of the scheme-theoretic singular
    locus, cut out by (f, df/dw, df/dz).  When f is not squarefree the
    singular locus contains every multiple component, and the Tjurina total
    degenerates to INFINITE.
    """

    f: Poly
    open_leaf: str
    singular_ideal: GroebnerBasis
    singular_dimension: int
    tjurina_total: object  # int or INFINITE
    contains_multiple_components: bool


@dataclass(frozen=True)
class SurfaceH2Report:
    """Second graded cohomology of a log-symplectic surface chart.

    dim H^2 = b_2(U) + (total Tjurina number of the curve), valid under the
    quasi-homogeneous-singularities hypothesis.  ``quasi_homogeneous``
    records the global Saito-criterion check (f inside its Jacobian ideal);
    when it fails the formula is still emitted but ``formula_asserted`` is
    False.  Betti numbers of the complement are user input (topology of
    affine curve complements is out of scope).
    """

    tjurina_total: int
    formula: str
    quasi_homogeneous: bool
    formula_asserted: bool
    betti_u: tuple[int, ...] | None = None
    dim_h2: int | None = None


def degeneracy_divisor(P: PoissonStructure, budget: int = DEFAULT_BUDGET) -> tuple[Poly, bool]:
    """The Pfaffian together with its squarefreeness.

    A constant nonzero Pfaffian (symplectic chart, empty divisor) counts as
    vacuously reduced.  An identically zero Pfaffian means there is no open
    dense symplectic leaf and raises DegenerateEverywhereError.
    """
    f = pfaffian(P)
    if f.is_zero:
        raise DegenerateEverywhereError(
            "the Pfaffian vanishes identically: no open dense symplectic leaf"
        )
    if f.is_constant:
        return f, True
    return f, is_squarefree(f)


def is_log_symplectic(P: PoissonStructure, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff the degeneracy divisor exists and is reduced (or empty)."""
    _, reduced = degeneracy_divisor(P, budget)
    return reduced


def zero_leaf_locus(
    P: PoissonStructure, budget: int = DEFAULT_BUDGET
) -> tuple[GroebnerBasis, int]:
    """The rank-0 modular-leaf locus: pi = 0 and zeta = 0 simultaneously.

    Returns the Groebner basis of the ideal generated by every bivector
    coefficient of pi together with every component of the modular field,
    and the Krull dimension of its variety.
    """
    gens = list(P.pi.terms.values())
    zeta = modular_field(P)
    gens.extend(zeta.terms.values())
    if not gens:
        gens = [Poly.zero(P.chart)]
        basis = GroebnerBasis(P.chart, GREVLEX, ())
    else:
        basis = buchberger(gens, GREVLEX, budget)
    return basis, ideal_dimension(basis)


def holonomy_verdict(P: PoissonStructure, budget: int = DEFAULT_BUDGET) -> HolonomyVerdict:
    """Sound decision procedure for (non-)holonomicity on even charts.

    (a) non-reduced degeneracy divisor: NOT_LOG_SYMPLECTIC (holonomic
        manifolds are log symplectic);
    (b) surfaces: log symplectic is equivalent to holonomic, so
        SURFACE_HOLONOMIC;
    (c) n >= 4 with a positive-dimensional rank-0 modular-leaf locus:
        OBSTRUCTED_BY_MODULAR_LEAVES (infinitely many zero-dimensional
        modular leaves force a characteristic variety too large to be
        Lagrangian);
    (d) otherwise NO_OBSTRUCTION_FOUND, which certifies nothing.
    """
    n = P.chart.n
    if n % 2:
        raise PreconditionError("holonomy verdicts need an even-dimensional chart")
    f, reduced = degeneracy_divisor(P, budget)
    if not reduced:
        partials = [f.diff(i) for i in range(n)]
        factor = gcd_multi([f, *partials])
        return HolonomyVerdict(Verdict.NOT_LOG_SYMPLECTIC, nonreduced_factor=factor)
    if n == 2:
        return HolonomyVerdict(Verdict.SURFACE_HOLONOMIC)
    basis, dimension = zero_leaf_locus(P, budget)
    if dimension >= 1:
        return HolonomyVerdict(
            Verdict.OBSTRUCTED_BY_MODULAR_LEAVES,
            witness_ideal=basis,
            witness_dimension=dimension,
        )
    return HolonomyVerdict(
        Verdict.NO_OBSTRUCTION_FOUND, witness_ideal=basis, witness_dimension=dimension
    )


def surface_leaf_report(P: PoissonStructure, budget: int = DEFAULT_BUDGET) -> SurfaceLeafReport:
    """Modular-leaf taxonomy of a Poisson surface; needs a nonzero Pfaffian."""
    if P.chart.n != 2:
        raise PreconditionError("surface reports need a 2-dimensional chart")
    f = pfaffian(P)
    if f.is_zero:
        raise DegenerateEverywhereError("the zero Poisson surface has no leaf taxonomy")
    if f.is_constant:
        basis = buchberger([f], GREVLEX, budget)
        return SurfaceLeafReport(
            f=f,
            open_leaf="the whole chart (empty degeneracy curve)",
            singular_ideal=basis,
            singular_dimension=-1,
            tjurina_total=0,
            contains_multiple_components=False,
        )
    basis = jacobian_ideal_basis(f, include_f=True, order=GREVLEX, budget=budget)
    return SurfaceLeafReport(
        f=f,
        open_leaf=f"complement of the curve ({f}) = 0",
        singular_ideal=basis,
        singular_dimension=ideal_dimension(basis),
        tjurina_total=quotient_dimension(basis),
        contains_multiple_components=not is_squarefree(f),
    )


def surface_h2_report(
    P: PoissonStructure,
    betti_u: tuple[int, ...] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> SurfaceH2Report:
    """dim H^2 = b_2(U) + total Tjurina number, for log-symplectic surfaces.

    Raises NonReducedCurveError when the Pfaffian is not squarefree (the
    log-symplectic hypothesis fails).  ``betti_u``, when supplied, lists
    (b_0, b_1, b_2) of the complement U and turns the formula into a number.
    """
    if P.chart.n != 2:
        raise PreconditionError("surface reports need a 2-dimensional chart")
    f = pfaffian(P)
    if f.is_zero:
        raise DegenerateEverywhereError("the zero Poisson surface is not log symplectic")
    if f.is_constant:
        tau = 0
        quasi_homogeneous = True
    else:
        if not is_squarefree(f):
            raise NonReducedCurveError(
                "the degeneracy curve is non-reduced; the surface is not log symplectic"
            )
        tau = quotient_dimension(jacobian_ideal_basis(f, include_f=True, budget=budget))
        assert tau is not INFINITE  # squarefree curves have isolated singularities
        jac = jacobian_ideal_basis(f, include_f=False, budget=budget)
        quasi_homogeneous = normal_form(f, jac).is_zero
    value = None
    if betti_u is not None:
        betti_u = tuple(int(b) for b in betti_u)
        if len(betti_u) != 3:
            raise ValueError("betti_u must list (b0, b1, b2) of the complement")
        value = betti_u[2] + tau
    return SurfaceH2Report(
        tjurina_total=tau,
        formula=f"b2(U) + {tau}",
        quasi_homogeneous=quasi_homogeneous,
        formula_asserted=quasi_homogeneous,
        betti_u=betti_u,
        dim_h2=value,
    )


def modular_foliation_generators(P: PoissonStructure) -> list[Polyvector]:
    """Generators of the modular foliation: zeta plus every H_{x_i}."""
    out = [modular_field(P)]
    for i in range(P.chart.n):
        out.append(hamiltonian(P, Poly.variable(P.chart, i)))
    return out
