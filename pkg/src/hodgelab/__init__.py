"""Exact De Rham-Hodge theory: symbolic forms on R^n and combinatorial Hodge theory."""

from .poly import Polynomial, poly_compose_scale, poly_partial
from .exterior import (
    DifferentialForm,
    MetricContext,
    codifferential,
    curl,
    div,
    exterior_derivative,
    grad,
    graded_leibniz_check,
    hodge_laplacian,
    hodge_star,
    homotopy_operator,
    is_harmonic,
    maxwell_action,
    maxwell_field,
    pointwise_inner,
    wedge,
    witten_derivative,
)
from .integrate import (
    EmbeddedChain,
    EmbeddedSimplex,
    adjointness_check,
    chain_boundary,
    integrate_form,
    l2_inner,
    norm_functional,
    stokes_check,
)
from .complex import Chain, SimplicialComplex, boundary, build_complex, homologous, is_boundary, is_cycle
from .cochain import (
    Cochain,
    CohomologyReport,
    HodgeSplit,
    codifferential_discrete,
    coboundary,
    cohomologous,
    cohomology_report,
    harmonic_basis,
    harmonic_representative,
    hodge_decompose,
    laplacian_discrete,
    pairing,
)
from .expr import parse_form, evaluate, parse_and_eval, format_form

__version__ = "0.1.0"
