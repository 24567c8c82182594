"""Classification of additive vector-group actions on corank-two projective
hyperquadrics with unfixed singularities."""

from .algebra import AlgebraElement, LocalAlgebra, ValidationReport
from .canonical import CanonicalMatrix, assemble_blocks, canonical_block, canonical_matrix
from .catalog import (
    LOWDIM_CASES,
    MAIN_TYPES,
    TypeParams,
    build_corank1,
    build_lowdim,
    build_type,
)
from .classify import (
    ClassificationOutcome,
    OutputTag,
    StructureSequence,
    classify_pair,
    fix_locus,
    has_unfixed_singularities,
    run_flowchart,
)
from .equivalence import (
    EquivalenceVerdict,
    actions_equivalent,
    corank1_equivalent,
    elementary_equivalent,
    random_conjugate,
)
from .form import BilinearForm, compute_F, decompose_multiplication
from .normalize import NormalizedStructure, normalize, solve_scaling_system
from .scalars import FieldConfig, QI, Scalar, make_field

__all__ = [
    "AlgebraElement", "LocalAlgebra", "ValidationReport",
    "CanonicalMatrix", "assemble_blocks", "canonical_block", "canonical_matrix",
    "LOWDIM_CASES", "MAIN_TYPES", "TypeParams",
    "build_corank1", "build_lowdim", "build_type",
    "ClassificationOutcome", "OutputTag", "StructureSequence",
    "classify_pair", "fix_locus", "has_unfixed_singularities", "run_flowchart",
    "EquivalenceVerdict", "actions_equivalent", "corank1_equivalent",
    "elementary_equivalent", "random_conjugate",
    "BilinearForm", "compute_F", "decompose_multiplication",
    "NormalizedStructure", "normalize", "solve_scaling_system",
    "FieldConfig", "QI", "Scalar", "make_field",
]

__version__ = "0.1.0"
