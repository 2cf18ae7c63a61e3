"""Sylvester equation XA - BX = S with Hermitian coefficients."""

import math

import numpy as np
import numpy.typing as npt
from loguru import logger

from svdperturb.errors import SeparationError, SingularSylvesterError
from svdperturb.linalg import Matrix, NormKind, PairingNorm, eigh, ui_norm
from svdperturb.linalg.norms import frobenius
from svdperturb.sylvester.types import BoundCertificate, HermSylvesterProblem, Regime, certify

GAP_TOL_SCALE = 1e-8


def default_gap_tol(norm_a: float, norm_b: float) -> float:
    """Absolute gap below which a Sylvester problem counts as singular."""
    return GAP_TOL_SCALE * (norm_a + norm_b + 1.0)


def nearest_pair(mu: npt.NDArray[np.float64], nu: npt.NDArray[np.float64]) -> tuple[int, int, float]:
    """Indices (j, i) and distance of the closest mu_j, nu_i."""
    dist = np.abs(mu[None, :] - nu[:, None])
    i, j = np.unravel_index(int(np.argmin(dist)), dist.shape)
    return int(j), int(i), float(dist[i, j])


class HermSylvesterSolver:
    """
    Prepared solver for XA - BX = S with fixed Hermitian A and B.

    Both coefficients are diagonalized once; each solve is then two
    unitary transforms and an entrywise division by (mu_j - nu_i).
    """

    def __init__(self, a: Matrix, b: Matrix, gap_tol: float | None = None):
        self.qa, self.mu = eigh(a)
        self.qb, self.nu = eigh(b)
        norm_a = float(np.max(np.abs(self.mu))) if self.mu.size else 0.0
        norm_b = float(np.max(np.abs(self.nu))) if self.nu.size else 0.0
        self.gap_tol = default_gap_tol(norm_a, norm_b) if gap_tol is None else gap_tol

        j, i, gap = nearest_pair(self.mu, self.nu)
        self.gap = gap
        if gap < self.gap_tol:
            raise SingularSylvesterError(
                f"spectra too close: |mu - nu| = {gap:.3e} < gap_tol {self.gap_tol:.3e}",
                mu=float(self.mu[j]),
                nu=float(self.nu[i]),
                gap=gap,
                gap_tol=self.gap_tol,
            )
        self._denom = self.mu[None, :] - self.nu[:, None]

    def solve(self, s_rhs: Matrix) -> Matrix:
        s_hat = self.qb.conj().T @ s_rhs @ self.qa
        return self.qb @ (s_hat / self._denom) @ self.qa.conj().T


def solve_herm_sylvester(p: HermSylvesterProblem, gap_tol: float | None = None) -> Matrix:
    """
    Solve XA - BX = S by diagonalizing A and B.

    Args:
        p: The problem.
        gap_tol: Override the default 1e-8 * (||A||_2 + ||B||_2 + 1).

    Returns:
        X (s x r).
    """
    x = HermSylvesterSolver(p.a, p.b, gap_tol).solve(p.s_rhs)
    residual = frobenius(x @ p.a - p.b @ x - p.s_rhs)
    logger.debug(f"herm sylvester {p.b.shape[0]}x{p.a.shape[0]} residual {residual:.3e}")
    return x


def _interval_configuration(mu: npt.NDArray[np.float64], nu: npt.NDArray[np.float64]) -> bool:
    """One spectrum inside [min, max] of itself with the other entirely outside it."""

    def outside(inner: npt.NDArray[np.float64], outer: npt.NDArray[np.float64]) -> bool:
        lo, hi = inner.min(), inner.max()
        return bool(np.all((outer < lo) | (outer > hi)))

    return outside(mu, nu) or outside(nu, mu)


def herm_sylvester_bounds(
    p: HermSylvesterProblem,
    x: Matrix,
    rel_slack: float = 1e-10,
) -> list[BoundCertificate]:
    """
    Certificates for a solution of XA - BX = S.

    Always emits the Frobenius gap bound and the pi/2 bound in every norm.
    The c=1 bound in every norm is emitted when the problem is flagged
    interval separated; the flag is checked against the spectra.
    """
    _, mu = eigh(p.a)
    _, nu = eigh(p.b)
    _, _, delta = nearest_pair(mu, nu)
    frob = PairingNorm.block_diag(NormKind.FROBENIUS)

    certs = [
        certify("herm.frobenius", Regime.FROBENIUS_GAP, frob, delta, 1.0,
                frobenius(p.s_rhs), frobenius(x), rel_slack),
    ]
    if p.interval_separated:
        if not _interval_configuration(mu, nu):
            raise SeparationError("problem flagged interval separated but spectra interleave")
        for kind in NormKind:
            certs.append(certify(
                f"herm.separated.{kind.value}", Regime.INTERVAL_SEPARATED,
                PairingNorm.block_diag(kind), delta, 1.0,
                ui_norm(p.s_rhs, kind), ui_norm(x, kind), rel_slack,
            ))
    for kind in NormKind:
        certs.append(certify(
            f"herm.general.{kind.value}", Regime.GENERAL_UI,
            PairingNorm.block_diag(kind), delta, math.pi / 2,
            ui_norm(p.s_rhs, kind), ui_norm(x, kind), rel_slack,
        ))
    return certs


def herm_equality_witness(a: Matrix, b: Matrix) -> tuple[Matrix, float]:
    """
    Rank-one X = y x^H from the closest eigenpairs A x = mu x, B y = nu y.

    Then XA - BX = (mu - nu) X, so ||XA - BX|| / ||X|| = |mu - nu| in every
    unitarily invariant norm.

    Returns:
        (X, |mu - nu|).
    """
    qa, mu = eigh(a)
    qb, nu = eigh(b)
    j, i, gap = nearest_pair(mu, nu)
    x = np.outer(qb[:, i], qa[:, j].conj())
    return x, gap
