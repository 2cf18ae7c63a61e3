"""Residuals and generalized sin-theta certificates for approximate singular triplets."""

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from loguru import logger

from svdperturb.errors import SeparationError, ShapeError
from svdperturb.linalg import (
    Matrix,
    NormKind,
    PairingNorm,
    as_matrix,
    complete_basis,
    pair_norm,
    singular_values,
    svd,
    ui_norm,
)
from svdperturb.sintheta.angles import SubspacePair, canonical_angles
from svdperturb.sylvester import coupled_gap, separation_width


@dataclass
class SinThetaInput:
    """
    G with its complementary singular bases U2, V2 and an approximate
    triplet (U1_t, V1_t, G1_t) for another matrix.
    """

    g: Matrix
    u1_t: Matrix
    v1_t: Matrix
    g1_t: Matrix
    u2: Matrix
    v2: Matrix

    def __post_init__(self) -> None:
        self.g = as_matrix(self.g, "g")
        self.u1_t = as_matrix(self.u1_t, "u1_t")
        self.v1_t = as_matrix(self.v1_t, "v1_t")
        self.g1_t = as_matrix(self.g1_t, "g1_t")
        self.u2 = as_matrix(self.u2, "u2")
        self.v2 = as_matrix(self.v2, "v2")
        m, n = self.g.shape
        r = self.u1_t.shape[1]
        expected = {
            "u1_t": (m, r),
            "v1_t": (n, r),
            "g1_t": (r, r),
            "u2": (m, m - r),
            "v2": (n, n - r),
        }
        for name, shape in expected.items():
            got = getattr(self, name).shape
            if got != shape:
                raise ShapeError(f"{name} must be {shape[0]}x{shape[1]}, got {got}", name=name, expected=list(shape), got=list(got))

    @classmethod
    def from_svd(cls, g: Matrix, u1_t: Matrix, v1_t: Matrix, g1_t: Matrix) -> "SinThetaInput":
        """Take U2, V2 from a fresh SVD of G, split after r = columns of u1_t."""
        g = as_matrix(g, "g")
        u1_t = as_matrix(u1_t, "u1_t")
        r = u1_t.shape[1]
        if not 1 <= r < min(g.shape):
            raise ShapeError(f"u1_t must have 1 <= r < {min(g.shape)} columns, got {r}", r=r)
        u, _, v = svd(g)
        return cls(g=g, u1_t=u1_t, v1_t=v1_t, g1_t=g1_t, u2=u[:, r:], v2=v[:, r:])

    @property
    def g2(self) -> Matrix:
        return self.u2.conj().T @ self.g @ self.v2


@dataclass
class SinThetaCertificate:
    """||blkdiag(sin Theta_U, sin Theta_V)|| <= c / delta * ||blkdiag(R, S)||."""

    kind: NormKind
    delta: float
    constant: float
    lhs: float
    bound: float
    satisfied: bool
    angles_u: npt.NDArray[np.float64]
    angles_v: npt.NDArray[np.float64]
    r_norm: float
    s_norm: float
    sine_deviation: float = 0.0


def residuals(inp: SinThetaInput) -> tuple[Matrix, Matrix]:
    """R = G V1_t - U1_t G1_t and S = G^H U1_t - V1_t G1_t^H."""
    r_mat = inp.g @ inp.v1_t - inp.u1_t @ inp.g1_t
    s_mat = inp.g.conj().T @ inp.u1_t - inp.v1_t @ inp.g1_t.conj().T
    return r_mat, s_mat


def sin_theta_certificate(
    inp: SinThetaInput,
    kind: NormKind,
    rel_slack: float = 1e-10,
    abs_slack: float = 1e-12,
) -> SinThetaCertificate:
    """
    Evaluate both sides of the generalized sin-theta bound.

    c = 1 when sigma_min(G1_t) > sigma_max(G2) or the norm is Frobenius,
    otherwise pi/2.

    Raises:
        SeparationError: delta <= 0.
    """
    kind = NormKind(kind)
    g2 = inp.g2
    delta = coupled_gap(inp.g1_t, g2)
    if delta <= 0:
        raise SeparationError(f"sin-theta bound needs delta > 0, got {delta:.3e}", delta=delta)
    separated = separation_width(inp.g1_t, g2) > 0
    c = 1.0 if separated or kind is NormKind.FROBENIUS else math.pi / 2

    m, r = inp.u1_t.shape
    n = inp.v1_t.shape[0]
    u1 = _complement(inp.u2, m)
    v1 = _complement(inp.v2, n)
    angles_u = canonical_angles(SubspacePair(u1, inp.u1_t))
    angles_v = canonical_angles(SubspacePair(v1, inp.v1_t))
    sin_u = np.sin(angles_u)
    sin_v = np.sin(angles_v)

    sv_u = _padded(singular_values(inp.u2.conj().T @ inp.u1_t), r)
    sv_v = _padded(singular_values(inp.v2.conj().T @ inp.v1_t), r)
    sine_dev = float(max(np.max(np.abs(sin_u - sv_u)), np.max(np.abs(sin_v - sv_v))))

    blockdiag = PairingNorm.block_diag(kind)
    lhs = pair_norm(np.diag(sin_u), np.diag(sin_v), blockdiag)
    r_mat, s_mat = residuals(inp)
    bound = c * pair_norm(r_mat, s_mat, blockdiag) / delta
    satisfied = lhs <= bound * (1.0 + rel_slack) + abs_slack
    logger.debug(f"sin-theta {kind.value}: lhs={lhs:.6g} bound={bound:.6g} c={c:.4f} delta={delta:.6g}")
    return SinThetaCertificate(
        kind=kind,
        delta=delta,
        constant=c,
        lhs=lhs,
        bound=bound,
        satisfied=satisfied,
        angles_u=angles_u,
        angles_v=angles_v,
        r_norm=ui_norm(r_mat, kind),
        s_norm=ui_norm(s_mat, kind),
        sine_deviation=sine_dev,
    )


def _complement(q2: Matrix, m: int) -> Matrix:
    """Orthonormal basis of the orthogonal complement of range(q2)."""
    return complete_basis(q2, m)[:, q2.shape[1] :]


def _padded(values: npt.NDArray[np.float64], r: int) -> npt.NDArray[np.float64]:
    return np.concatenate([values, np.zeros(r - values.size)])
