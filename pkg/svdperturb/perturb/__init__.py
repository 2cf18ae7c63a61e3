"""Rotation pairs, corrected decompositions and perturbation bounds for singular subspaces."""

from svdperturb.perturb.compare import corollary_suite
from svdperturb.perturb.context import (
    constant_c,
    gap_quantities,
    perturbed,
    project_perturbation,
    split_context,
)
from svdperturb.perturb.corrected import (
    build_corrected,
    corrected_unitary,
    footnote_distance,
    footnote_distance_alt,
    improved_sigma_bounds,
    improvement_applies,
)
from svdperturb.perturb.rotations import (
    apply_phi,
    apply_t,
    contraction_factor,
    rotation_bound,
    rotation_residuals,
    solve_rotations,
)
from svdperturb.perturb.types import (
    BlockContext,
    ComparisonReport,
    CorollaryBound,
    CorrectedDecomposition,
    GapReport,
    ImprovedSigmaBounds,
    PerturbationBlocks,
    RotationPair,
    SeparationMode,
)

__all__ = [
    "BlockContext",
    "PerturbationBlocks",
    "GapReport",
    "RotationPair",
    "CorrectedDecomposition",
    "ImprovedSigmaBounds",
    "ComparisonReport",
    "CorollaryBound",
    "SeparationMode",
    "split_context",
    "project_perturbation",
    "gap_quantities",
    "constant_c",
    "perturbed",
    "apply_t",
    "apply_phi",
    "contraction_factor",
    "rotation_bound",
    "rotation_residuals",
    "solve_rotations",
    "build_corrected",
    "corrected_unitary",
    "footnote_distance",
    "footnote_distance_alt",
    "improved_sigma_bounds",
    "improvement_applies",
    "corollary_suite",
]
