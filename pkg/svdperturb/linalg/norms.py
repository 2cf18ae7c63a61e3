"""Unitarily invariant norms of matrices and matrix pairs."""

import numpy as np

from svdperturb.linalg.jacobi import singular_values
from svdperturb.linalg.types import Matrix, NormKind, Pairing, PairingNorm


def frobenius(a: Matrix) -> float:
    """Entrywise Frobenius norm."""
    a = np.asarray(a)
    return float(np.sqrt(np.vdot(a, a).real)) if a.size else 0.0


def ui_norm(a: Matrix, kind: NormKind) -> float:
    """
    Evaluate a unitarily invariant norm.

    Spectral is the largest singular value, nuclear their sum; Frobenius
    is computed from the entries.
    """
    kind = NormKind(kind)
    if kind is NormKind.FROBENIUS:
        return frobenius(a)
    sigma = singular_values(a)
    if sigma.size == 0:
        return 0.0
    if kind is NormKind.SPECTRAL:
        return float(sigma[0])
    return float(np.sum(sigma))


def pair_norm(g: Matrix, w: Matrix, p: PairingNorm) -> float:
    """
    Norm of the pair (g, w).

    BlockDiag evaluates the norm of blkdiag(g, w), whose singular values
    are the union of both spectra. MaxOf takes the larger of the two norms.
    """
    ng = ui_norm(g, p.kind)
    nw = ui_norm(w, p.kind)
    if p.pairing is Pairing.MAX:
        return max(ng, nw)
    match p.kind:
        case NormKind.SPECTRAL:
            return max(ng, nw)
        case NormKind.FROBENIUS:
            return float(np.hypot(ng, nw))
        case _:
            return ng + nw


def unitarity_defect(u: Matrix) -> float:
    """||u^H u - I||_F; zero for matrices with orthonormal columns."""
    u = np.asarray(u)
    return frobenius(u.conj().T @ u - np.eye(u.shape[1]))
