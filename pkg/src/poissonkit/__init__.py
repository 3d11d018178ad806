"""poissonkit: exact invariants of polynomial Poisson structures.

Schouten calculus, the Lichnerowicz differential, modular vector fields,
log-symplectic and holonomicity diagnostics, Tjurina numbers, and
weight-graded Poisson cohomology tables, all over exact rational
arithmetic.  See README.md for the CLI and the file format.
"""

from .polyalg import (
    MINUS_INFINITY,
    Chart,
    Poly,
    diff,
    format_poly,
    gcd_multi,
    is_squarefree,
    parse_poly,
    poly_arith,
)
from .multivec import (
    OneForm,
    Polyvector,
    SIGN_CONVENTIONS,
    apply_vector_field,
    bv,
    contract,
    covolume,
    format_polyvector,
    lie_derivative,
    parse_polyvector,
    schouten,
    wedge,
)
from .poisson import (
    DIdealGenerator,
    PoissonStructure,
    diagonal_quadratic_poisson,
    dmodule_generators,
    hamiltonian,
    jacobian_poisson_3,
    jacobiator,
    lichnerowicz,
    modular_field,
    new_poisson,
    pfaffian,
    pfaffian_bivector,
    poisson_bracket,
)
from .groebner import (
    GREVLEX,
    INFINITE,
    LEX,
    WEIGHTED_GREVLEX,
    GroebnerBasis,
    MonomialOrder,
    buchberger,
    ideal_dimension,
    jacobian_ideal_basis,
    normal_form,
    quotient_dimension,
    tjurina_at_point,
    tjurina_global,
)
from .diagnostics import (
    HolonomyVerdict,
    SurfaceH2Report,
    SurfaceLeafReport,
    Verdict,
    degeneracy_divisor,
    holonomy_verdict,
    is_log_symplectic,
    modular_foliation_generators,
    surface_h2_report,
    surface_leaf_report,
    zero_leaf_locus,
)
from .graded_cohomology import (
    NOT_HOMOGENEOUS,
    CohomologyTable,
    GradedBasis,
    RationalMatrix,
    cohomology_table,
    dpi_matrix,
    graded_basis,
    homogeneity_weight,
    rank_exact,
)
from .errors import (
    BasisSizeExceededError,
    BudgetExceededError,
    ChartMismatchError,
    DegenerateEverywhereError,
    JacobiFailure,
    NonReducedCurveError,
    ParseError,
    PreconditionError,
    UnknownIdentifierError,
)
from .structfile import StructureSpec, parse_structure_file, serialize_structure

__version__ = "0.1.0"
