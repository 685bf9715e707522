"""Exact Fischer decompositions, circle spectral bounds, and Dirichlet solvers.

The package splits polynomials and truncated entire series as f = P*q + h
with Lap^k h = 0, entirely in rational arithmetic, verifies the spectral
inequality machinery that controls the quotient operator norms, and solves
Dirichlet problems on ellipsoids, parabolas, strips, and cylinders by
harmonic series extension.
"""

from .polynomials import (
    HomogeneousPolynomial,
    Polynomial,
    apply_operator,
    fischer_inner_product,
    graded_parts,
    laplacian,
    laplacian_power,
)
from .fischer import (
    DecompositionResult,
    FischerProblem,
    SingularFischerOperator,
    decompose_recursive,
    decompose_series_formula,
    fischer_operator_homogeneous,
)
from .sphere import (
    AlmansiDecomposition,
    circle_harmonic_basis,
    gauss_decompose,
    monomial_sphere_integral,
    sphere_inner_product,
    sup_norm_estimate,
)
from .spectral import (
    SpectralReport,
    chebyshev_identity_check,
    min_quadratic_form_eigenvalue,
    sine_bound_check,
    verify_main_inequality,
)
from .entire import (
    EntireSeries,
    OrderGateWarning,
    decompose_entire,
    order_estimate,
    order_of_decomposition,
)
from .dirichlet import (
    DomainSpec,
    nonuniqueness_witness,
    solve,
    to_fischer_problem,
)

__version__ = "0.1.0"

__all__ = [
    "AlmansiDecomposition",
    "DecompositionResult",
    "DomainSpec",
    "EntireSeries",
    "FischerProblem",
    "HomogeneousPolynomial",
    "OrderGateWarning",
    "Polynomial",
    "SingularFischerOperator",
    "SpectralReport",
    "apply_operator",
    "chebyshev_identity_check",
    "circle_harmonic_basis",
    "decompose_entire",
    "decompose_recursive",
    "decompose_series_formula",
    "fischer_inner_product",
    "fischer_operator_homogeneous",
    "gauss_decompose",
    "graded_parts",
    "laplacian",
    "laplacian_power",
    "min_quadratic_form_eigenvalue",
    "monomial_sphere_integral",
    "nonuniqueness_witness",
    "order_estimate",
    "order_of_decomposition",
    "sine_bound_check",
    "solve",
    "sphere_inner_product",
    "sup_norm_estimate",
    "to_fischer_problem",
    "verify_main_inequality",
]
