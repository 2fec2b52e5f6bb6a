"""Spin-flip bilinear forms on n-qubit state spaces.

The spin flip psi -> sigma_y^(x)n conj(psi) equips the 2^n-dimensional state
space with a bilinear form: symmetric (a complex orthogonal space) when n is
even, antisymmetric (a symplectic space) when n is odd.  This package
provides the O(2^n) form kernels, bi-orthonormal basis construction and
verification (the generalized magic basis and its odd-n product analogue),
form-preservation tests with SLOCC obstruction verdicts, and the tangle
|<flip(psi)|psi>| with maximal-entanglement criteria.
"""

__version__ = "0.1.0"

from .bases import (
    BasisSet,
    BiorthoReport,
    GramPair,
    basis_from_orthogonal,
    basis_from_unitary_symplectic,
    canonical_j,
    check_biorthonormal,
    decompose_basis,
    magic_basis,
    product_biortho_basis,
    random_real_orthogonal,
    random_unitary_symplectic,
    self_conjugacy_coefficient_check,
    state_coefficients,
)
from .core import (
    DEFAULT_TOL,
    GlobalOperator,
    LocalOperatorList,
    PureState,
    Tolerances,
    apply,
    basis_state,
    expand_local,
    hilbert_inner,
    make_state,
    normalize,
    random_sl2,
    random_state,
    random_su2,
    tensor_states,
)
from .entanglement import (
    AmplitudeBoundReport,
    MaxEntReport,
    TangleResult,
    amplitude_bound_check,
    concurrence_2q,
    is_maximally_entangled,
    maxent_generate,
    maxent_structure_check,
    polygon,
    tangle,
    tangle_from_coefficients,
    tangle_result,
)
from .flip import (
    FormKind,
    FormValue,
    bilinear_form,
    bilinear_form_dense,
    flip_local,
    flip_operator,
    flip_state,
    flip_state_dense,
    form_parity_check,
    spin_flip_matrix,
)
from .groups import (
    HomomorphismReport,
    OperatorClassReport,
    SloccVerdict,
    classify_operator,
    homomorphism_check,
    is_form_preserving,
    local_form_criterion,
    represent_in_basis,
    slocc_obstruction,
)

__all__ = [
    "__version__",
    "AmplitudeBoundReport",
    "BasisSet",
    "BiorthoReport",
    "DEFAULT_TOL",
    "FormKind",
    "FormValue",
    "GlobalOperator",
    "GramPair",
    "HomomorphismReport",
    "LocalOperatorList",
    "MaxEntReport",
    "OperatorClassReport",
    "PureState",
    "SloccVerdict",
    "TangleResult",
    "Tolerances",
    "amplitude_bound_check",
    "apply",
    "basis_from_orthogonal",
    "basis_from_unitary_symplectic",
    "basis_state",
    "bilinear_form",
    "bilinear_form_dense",
    "canonical_j",
    "check_biorthonormal",
    "classify_operator",
    "concurrence_2q",
    "decompose_basis",
    "expand_local",
    "flip_local",
    "flip_operator",
    "flip_state",
    "flip_state_dense",
    "form_parity_check",
    "hilbert_inner",
    "homomorphism_check",
    "is_form_preserving",
    "is_maximally_entangled",
    "local_form_criterion",
    "magic_basis",
    "make_state",
    "maxent_generate",
    "maxent_structure_check",
    "normalize",
    "polygon",
    "product_biortho_basis",
    "random_real_orthogonal",
    "random_sl2",
    "random_state",
    "random_su2",
    "random_unitary_symplectic",
    "represent_in_basis",
    "self_conjugacy_coefficient_check",
    "slocc_obstruction",
    "spin_flip_matrix",
    "state_coefficients",
    "tangle",
    "tangle_from_coefficients",
    "tangle_result",
    "tensor_states",
]
