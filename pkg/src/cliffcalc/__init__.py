"""Numerical toolkit for Clifford algebras and their functional calculi.

Dense blade arithmetic in the algebras with all generators squaring to -1
and their complexifications; paravector spectral theory; the stem-function
functional calculus in both its direct two-eigenvalue form and its contour
Cauchy-transform form; and the analytic functional calculus for
finite-dimensional Clifford operators, with the constructions cross-checked
against each other.
"""

from .algebra import (
    CMultivector,
    Multivector,
    Paravector,
    basis_mul,
    conjugation_bar,
    format_multivector,
    involution,
    isclose,
    multivector_from_json,
    multivector_to_json,
    mv_mul,
    norm,
    paravector_inverse,
    parse_multivector,
)
from .contour import (
    CauchyTransform,
    Circle,
    Contour,
    build_contour,
    cauchy_derivative,
    cauchy_transform,
    slice_regularity_residual,
)
from .dsl import differentiate, evaluate, parse, pretty, stem_function
from .errors import ToolkitError
from .operators import (
    CliffordOperator,
    MembershipResult,
    SpectrumSet,
    basis_conjugate,
    clifford_spectrum_contains,
    clifford_spectrum_slice,
    complex_spectrum,
    complexify,
    hausdorff_distance,
    operator_from_json,
    operator_from_matrix,
    operator_to_json,
    real_subspace_defect,
    riesz_dunford_eval,
    riesz_dunford_matrix,
    s_resolvent_right,
    slice_calculus_eval,
    spectral_mapping_distance,
    tuple_operator,
)
from .spectral import (
    SpectralData,
    eigenvalues,
    eigenvector,
    idempotents,
    resolvent,
    spectral_decomposition_residual,
    spectral_projection,
)
from .stem import (
    Disk,
    PlanarDomain,
    Rect,
    StemFunction,
    evaluate_stem,
    intrinsic_check,
    product_rule_residual,
    representation_formula,
    saturated_membership,
    slice_lift,
    slice_point,
    spectra_of_set_membership,
    verify_stem,
    zero_set_membership,
)

__version__ = "0.1.0"
