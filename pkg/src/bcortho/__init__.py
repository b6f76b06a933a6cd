"""Exact-arithmetic construction of multivariate orthogonal polynomials
with hyperoctahedral symmetry, their truncated asymptotic functions, and
desk-scale verification experiments for the associated decay laws."""

__version__ = "0.1.0"

from .cfuncs import (
    CSpec,
    DecayBudget,
    ExplicitPoly,
    HallLittlewood,
    Koornwinder,
    TruncSeries,
    decay_budget,
    parse_cspec,
    pochhammer_inf_series,
    reciprocal_series,
    taylor_c,
)
from .errors import (
    DegeneracyError,
    DimensionError,
    DivisibilityError,
    DomainError,
    InvarianceError,
)
from .hyperoctahedral import (
    DominantRep,
    GroupElement,
    OrderResult,
    act,
    compare_dominance,
    dominant_representative,
    dominant_weights_in_box,
    group_elements,
    lex_compare,
    min_gap,
    orbit,
    rho,
    stabilizer_order,
    weights_below,
)
from .innerproduct import (
    DeltaApprox,
    build_delta,
    cached_delta,
    coords_inner,
    default_truncation_order,
    gram_matrix,
    inner_product,
    monomial_pair_product,
    stability_probe,
)
from .laurent import (
    LaurentPoly,
    antisymmetrize,
    exact_divide,
    monomial_coordinates,
    symmetric_monomial,
    weyl_character,
    weyl_denominator,
)
from .orthosys import (
    AsymptoticPoly,
    ErrorReport,
    MonicOrthoPoly,
    asymptotic_error,
    biorthogonality_check,
    decay_fit,
    monic_orthogonal,
    orthogonality_scan,
    truncated_asymptotic,
    verify_exact,
)
