"""Finite 2-categorical algebra workbench.

Finite categories with total composition tables, the three
factorisation systems (b.o. full/faithful, b.o./fully faithful,
surjective/injective-on-objects fully faithful), kernels and
coequifiers, presentations of operations with invertible 2-cell
generators, their finite algebras, and reflections of algebras into
equationally defined subclasses together with the closure-property
audits that characterise such subclasses.
"""
from .errors import LabError, UsageError, ValidationError
from .fincat import (
    Congruence,
    FinCategory,
    Functor,
    NatTransformation,
    classify,
    congruence_closure,
    enumerate_functors,
    enumerate_nat_transformations,
    quotient_by_congruence,
    validate_category,
)
from .factor import (
    Factorisation,
    check_orthogonal_morphisms,
    check_orthogonal_object,
    factor_bo_ff,
    factor_bof,
    factor_so_ioff,
)
from .kernel import (
    KernelData,
    bof_kernel,
    coequify,
    immediate_convergence_check,
    make_reflexive,
    verify_coequifier_2d,
    verify_kernel_universal,
)
from .theory import (
    Algebra,
    AlgebraHom,
    Extension,
    Presentation,
    Signature,
    satisfies,
)
from .birkhoff import (
    audit_closure,
    check_algebra_orthogonal,
    enumerate_quotient_algebras,
    reflect,
    verify_orthogonality_characterisation,
    verify_reflection_free,
)

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "AlgebraHom",
    "Congruence",
    "Extension",
    "Factorisation",
    "FinCategory",
    "Functor",
    "KernelData",
    "LabError",
    "NatTransformation",
    "Presentation",
    "Signature",
    "UsageError",
    "ValidationError",
    "audit_closure",
    "bof_kernel",
    "check_algebra_orthogonal",
    "check_orthogonal_morphisms",
    "check_orthogonal_object",
    "classify",
    "coequify",
    "congruence_closure",
    "enumerate_functors",
    "enumerate_nat_transformations",
    "enumerate_quotient_algebras",
    "factor_bo_ff",
    "factor_bof",
    "factor_so_ioff",
    "immediate_convergence_check",
    "make_reflexive",
    "quotient_by_congruence",
    "reflect",
    "satisfies",
    "validate_category",
    "verify_coequifier_2d",
    "verify_kernel_universal",
    "verify_orthogonality_characterisation",
    "verify_reflection_free",
]
