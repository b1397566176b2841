"""Exact computations with the Witt, one-sided Witt and Virasoro Lie bialgebras and their duals."""
from .algebra import (
    CENTRAL,
    AlgebraKind,
    Domain,
    DomainMismatch,
    KindMismatch,
    LaurentElement,
    LieDualError,
    LieElement,
    bracket,
    derive,
    multiply,
)
from .bialgebra import (
    BialgebraParams,
    RMatrix,
    build_subalgebra_pair,
    check_cojacobi,
    check_compatibility,
    coboundary_cobracket,
    r_from_pair,
    witt_r,
    xy_r,
)
from .dual import (
    Component,
    DualElement,
    DualTensor2,
    IrreducibleFactorReport,
    RationalFunctionRep,
    cobracket_dual,
    coefficient,
    decompose_components,
    from_rational_function,
    is_in_restricted_dual,
    mu_dual,
    pair,
    partial_dual_derivation,
    to_rational_function,
    translate_rank,
)
from .dual_bracket import (
    BracketSource,
    BracketTable,
    antisymmetry_check,
    build_oracle_table,
    build_table,
    closed_form_witt,
    closed_form_xy,
    dual_bracket_oracle,
    jacobi_check,
)
from .recurrence import NoRecurrenceFound, infer_recurrence
from .tensors import Tensor2, Tensor3, act2, act3, cybe, swap

__version__ = "0.1.0"
