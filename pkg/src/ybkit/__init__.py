"""Exact invariants of finite set-theoretic Yang-Baxter solutions."""

from .core import (
    EnumerationBudgetError,
    QuadraticSet,
    SolutionProfile,
    canonicalize,
    check_ybe,
    enumerate_quadratic_sets,
    permutation_solution,
    profile,
)
from .exactalg import CycNum, ExactMatrix, cyclotomic_polynomial, det, kernel, kron, rref
from .lie import (
    KillingData,
    LieAlgebraRep,
    SemisimplicityReport,
    TheoremCheck,
    check_commutation_formulas,
    check_cybe,
    derived_series,
    is_abelian,
    killing,
    lie_closure,
    lie_generators,
    semisimplicity_report,
    theorem_check,
)
from .linearize import (
    OperatorFamily,
    RMatrix,
    build_operators,
    build_R_direct,
    build_R_from_operators,
    check_linear_ybe,
    check_operator_identities,
    flip_matrix,
)
from .qtwist import (
    IncompleteSplit,
    NotCommuting,
    QTwist,
    QuadraticRelations,
    RetractionNotTrivial,
    joint_eigenbasis,
    q_matrix,
    quadratic_relations,
)
from .retract import (
    ClassMap,
    IllDefinedRetraction,
    RetractionTower,
    class_map,
    is_retraction_trivial,
    mpl,
    retract,
    retraction_permutation_maps,
    tower,
)

__all__ = [
    "CycNum",
    "ClassMap",
    "EnumerationBudgetError",
    "ExactMatrix",
    "IllDefinedRetraction",
    "IncompleteSplit",
    "KillingData",
    "LieAlgebraRep",
    "NotCommuting",
    "OperatorFamily",
    "QTwist",
    "QuadraticRelations",
    "QuadraticSet",
    "RMatrix",
    "RetractionNotTrivial",
    "RetractionTower",
    "SemisimplicityReport",
    "SolutionProfile",
    "TheoremCheck",
    "build_R_direct",
    "build_R_from_operators",
    "build_operators",
    "canonicalize",
    "check_commutation_formulas",
    "check_cybe",
    "check_linear_ybe",
    "check_operator_identities",
    "check_ybe",
    "class_map",
    "cyclotomic_polynomial",
    "derived_series",
    "det",
    "enumerate_quadratic_sets",
    "flip_matrix",
    "is_abelian",
    "is_retraction_trivial",
    "joint_eigenbasis",
    "kernel",
    "killing",
    "kron",
    "lie_closure",
    "lie_generators",
    "mpl",
    "permutation_solution",
    "profile",
    "q_matrix",
    "quadratic_relations",
    "retract",
    "retraction_permutation_maps",
    "rref",
    "semisimplicity_report",
    "theorem_check",
    "tower",
]
