"""Self-contained dense complex linear algebra."""

from svdperturb.linalg.jacobi import complete_basis, eigh, singular_values, svd
from svdperturb.linalg.norms import frobenius, pair_norm, ui_norm, unitarity_defect
from svdperturb.linalg.spectra import (
    InterlaceReport,
    gram_power,
    interlace_check,
    inv_sqrt_gram,
    multiset_close,
    sqrt_gram,
    sv_ext,
)
from svdperturb.linalg.types import (
    Matrix,
    NormKind,
    Pairing,
    PairingNorm,
    SingularSpectrum,
    as_matrix,
)

__all__ = [
    "Matrix",
    "NormKind",
    "Pairing",
    "PairingNorm",
    "SingularSpectrum",
    "as_matrix",
    "svd",
    "eigh",
    "singular_values",
    "complete_basis",
    "ui_norm",
    "pair_norm",
    "frobenius",
    "unitarity_defect",
    "sv_ext",
    "gram_power",
    "inv_sqrt_gram",
    "sqrt_gram",
    "multiset_close",
    "interlace_check",
    "InterlaceReport",
]
