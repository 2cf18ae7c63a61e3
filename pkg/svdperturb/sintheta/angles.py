"""Canonical angles between equidimensional subspaces."""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from svdperturb.errors import CertificateError, ShapeError
from svdperturb.linalg import Matrix, as_matrix, complete_basis, singular_values
from svdperturb.linalg.norms import unitarity_defect

UNITARY_TOL = 1e-10
ROUTE_TOL = 1e-10


@dataclass
class SubspacePair:
    """Two m x r matrices with orthonormal columns."""

    basis_a: Matrix
    basis_b: Matrix
    tol_unitary: float | None = None

    def __post_init__(self) -> None:
        self.basis_a = as_matrix(self.basis_a, "basis_a")
        self.basis_b = as_matrix(self.basis_b, "basis_b")
        if self.basis_a.shape != self.basis_b.shape:
            raise ShapeError(
                f"bases differ in shape: {self.basis_a.shape} vs {self.basis_b.shape}",
                a=list(self.basis_a.shape), b=list(self.basis_b.shape),
            )
        m, r = self.basis_a.shape
        if r > m:
            raise ShapeError(f"basis has more columns than rows: {self.basis_a.shape}")
        tol = UNITARY_TOL * r if self.tol_unitary is None else self.tol_unitary
        for name, basis in (("basis_a", self.basis_a), ("basis_b", self.basis_b)):
            defect = unitarity_defect(basis)
            if defect > tol:
                raise CertificateError(
                    f"{name} does not have orthonormal columns: defect {defect:.3e}",
                    name=name,
                    defect=defect,
                )


def cosines(p: SubspacePair) -> npt.NDArray[np.float64]:
    """Singular values of A^H B clamped to [0, 1], nonincreasing."""
    return np.clip(singular_values(p.basis_a.conj().T @ p.basis_b), 0.0, 1.0)


def sines(p: SubspacePair) -> npt.NDArray[np.float64]:
    """Singular values of A_perp^H B, zero padded to r, nonincreasing."""
    m, r = p.basis_a.shape
    comp = complete_basis(p.basis_a, m)[:, r:]
    s = singular_values(comp.conj().T @ p.basis_b) if comp.shape[1] else np.zeros(0)
    s = np.clip(s, 0.0, 1.0)
    return np.concatenate([s, np.zeros(r - s.size)])


def canonical_angles(p: SubspacePair) -> npt.NDArray[np.float64]:
    """
    Canonical angles, nonincreasing in [0, pi/2].

    Large angles (cos^2 < 1/2) come from arccos, small ones from arcsin
    so that tiny angles keep their relative accuracy.

    Raises:
        CertificateError: the cosine and sine routes disagree.
    """
    cos = cosines(p)[::-1]
    sin = sines(p)
    deviation = np.abs(cos**2 + sin**2 - 1.0)
    if deviation.size and float(deviation.max()) > ROUTE_TOL:
        raise CertificateError(
            f"cosine and sine routes disagree by {float(deviation.max()):.3e}",
            deviation=float(deviation.max()),
        )
    return np.where(cos**2 < 0.5, np.arccos(cos), np.arcsin(sin))
