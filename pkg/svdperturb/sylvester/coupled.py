"""Coupled Sylvester equations XA - BY = S, YA^H - B^H X = T."""

import math

import numpy as np
from loguru import logger

from svdperturb.errors import SeparationError
from svdperturb.linalg import Matrix, NormKind, Pairing, PairingNorm, pair_norm, singular_values, svd, sv_ext
from svdperturb.linalg.norms import frobenius
from svdperturb.sylvester.herm import HermSylvesterSolver, nearest_pair
from svdperturb.sylvester.types import (
    BoundCertificate,
    CoupledSylvesterProblem,
    Regime,
    SolutionPair,
    certify,
)


def coupled_operator(a: Matrix, b: Matrix, x: Matrix, y: Matrix) -> tuple[Matrix, Matrix]:
    """(XA - BY, YA^H - B^H X)."""
    return x @ a - b @ y, y @ a.conj().T - b.conj().T @ x


def _pad_rows(m: Matrix, rows: int) -> Matrix:
    if rows == 0:
        return m
    return np.vstack([m, np.zeros((rows, m.shape[1]), dtype=np.complex128)])


def _pad_cols(m: Matrix, cols: int) -> Matrix:
    if cols == 0:
        return m
    return np.hstack([m, np.zeros((m.shape[0], cols), dtype=np.complex128)])


def pad_to_square(p: CoupledSylvesterProblem) -> CoupledSylvesterProblem:
    """
    Make B square by zero padding.

    s > t: B gains s-t zero columns and T (hence Y) gains zero rows.
    s < t: B gains zero rows and S (hence X) gains zero rows.
    The padded solution is the original one with zero rows appended.
    """
    _, s, t = p.shape
    if s > t:
        return CoupledSylvesterProblem(p.a, _pad_cols(p.b, s - t), p.s_rhs, _pad_rows(p.t_rhs, s - t))
    if s < t:
        return CoupledSylvesterProblem(p.a, _pad_rows(p.b, t - s), _pad_rows(p.s_rhs, t - s), p.t_rhs)
    return p


def jordan_wielandt(a: Matrix) -> Matrix:
    """Hermitian embedding [[0, A^H], [A, 0]]."""
    m, n = a.shape
    return np.block([
        [np.zeros((n, n), dtype=np.complex128), a.conj().T],
        [a, np.zeros((m, m), dtype=np.complex128)],
    ])


class CoupledSylvesterSolver:
    """
    Prepared coupled solver for fixed A and B.

    The system merges into Z M - N Z = blkdiag(S_ext, T_ext) with
    M = [[0, A^H], [A, 0]], N = [[0, B_ext], [B_ext^H, 0]] and
    Z = [[0, X_ext], [Y_ext, 0]]; M and N are diagonalized once.
    """

    def __init__(self, a: Matrix, b: Matrix, gap_tol: float | None = None):
        self.a = np.asarray(a, dtype=np.complex128)
        self.b = np.asarray(b, dtype=np.complex128)
        self.r = self.a.shape[0]
        self.s, self.t = self.b.shape
        self.size = max(self.s, self.t)
        b_ext = _pad_cols(self.b, self.size - self.t) if self.s > self.t else _pad_rows(self.b, self.size - self.s)
        self._herm = HermSylvesterSolver(jordan_wielandt(self.a), jordan_wielandt(b_ext), gap_tol)

    @property
    def gap(self) -> float:
        """Smallest |omega - gamma| over sv(A) and sv_ext(B)."""
        return self._herm.gap

    def solve(self, s_rhs: Matrix, t_rhs: Matrix) -> SolutionPair:
        p, r = self.size, self.r
        s_ext = _pad_rows(s_rhs, p - self.s)
        t_ext = _pad_rows(t_rhs, p - self.t)
        rhs = np.zeros((2 * p, 2 * r), dtype=np.complex128)
        rhs[:p, :r] = s_ext
        rhs[p:, r:] = t_ext
        z = self._herm.solve(rhs)
        x = z[:p, r:][: self.s]
        y = z[p:, :r][: self.t]
        res_1, res_2 = coupled_operator(self.a, self.b, x, y)
        return SolutionPair(
            x=x,
            y=y,
            residual_1=frobenius(res_1 - s_rhs),
            residual_2=frobenius(res_2 - t_rhs),
        )


def solve_coupled(p: CoupledSylvesterProblem, gap_tol: float | None = None) -> SolutionPair:
    """
    Solve the coupled pair through the merged Hermitian equation.

    Raises:
        SingularSylvesterError: sv(A) and sv_ext(B) are within gap_tol.
    """
    sol = CoupledSylvesterSolver(p.a, p.b, gap_tol).solve(p.s_rhs, p.t_rhs)
    r, s, t = p.shape
    logger.debug(
        f"coupled sylvester r={r} s={s} t={t}: residuals {sol.residual_1:.3e}, {sol.residual_2:.3e}"
    )
    return sol


def coupled_gap(a: Matrix, b: Matrix) -> float:
    """min |omega - gamma| over omega in sv(A), gamma in sv_ext(B)."""
    _, _, gap = nearest_pair(singular_values(a), sv_ext(b).extended())
    return gap


def separation_width(a: Matrix, b: Matrix) -> float:
    """sigma_min(A) - sigma_max(B); positive means interval separated."""
    return float(singular_values(a)[-1] - singular_values(b)[0])


def coupled_bounds(
    p: CoupledSylvesterProblem,
    sol: SolutionPair,
    rel_slack: float = 1e-10,
) -> list[BoundCertificate]:
    """
    Every applicable bound on ||(X, Y)|| in terms of ||(S, T)||.

    Frobenius gap bound always; c=1 bounds in every norm and pairing when
    sigma_min(A) > sigma_max(B); pi/2 (blockdiag) and pi (max) bounds always.

    ``coupled.general.spectral_pair`` restates the spectral bound for the
    max pairing with the pi/2 constant, which is valid because both
    pairings give the same spectral norm.
    """
    delta = coupled_gap(p.a, p.b)
    width = separation_width(p.a, p.b)
    frob = PairingNorm.block_diag(NormKind.FROBENIUS)
    spectral = PairingNorm.max_of(NormKind.SPECTRAL)

    def measure(pn: PairingNorm) -> tuple[float, float]:
        return pair_norm(p.s_rhs, p.t_rhs, pn), pair_norm(sol.x, sol.y, pn)

    certs = [certify("coupled.frobenius", Regime.FROBENIUS_GAP, frob, delta, 1.0, *measure(frob), rel_slack)]

    if width > 0:
        for pn in PairingNorm.all():
            certs.append(certify(
                f"coupled.separated.{pn.label}", Regime.INTERVAL_SEPARATED,
                pn, width, 1.0, *measure(pn), rel_slack,
            ))

    for pn in PairingNorm.all():
        constant = math.pi / 2 if pn.pairing is Pairing.BLOCKDIAG else math.pi
        certs.append(certify(
            f"coupled.general.{pn.label}", Regime.GENERAL_UI,
            pn, delta, constant, *measure(pn), rel_slack,
        ))
    certs.append(certify(
        "coupled.general.spectral_pair", Regime.GENERAL_UI,
        spectral, delta, math.pi / 2, *measure(spectral), rel_slack,
    ))

    failed = [c.id for c in certs if not c.satisfied]
    if failed:
        logger.warning(f"coupled bounds violated: {failed}")
    return certs


def equality_witness(
    a: Matrix,
    b: Matrix,
    pairing: PairingNorm = PairingNorm.block_diag(NormKind.SPECTRAL),
) -> tuple[Matrix, Matrix, float]:
    """
    Pair (X, Y) attaining ||T(X, Y)|| = (sigma_min(A) - sigma_max(B)) ||(X, Y)||.

    X = y u^H and Y = x v^H where A v = sigma_min(A) u and B x = sigma_max(B) y.

    Returns:
        (X, Y, achieved ratio under ``pairing``).

    Raises:
        SeparationError: sigma_min(A) <= sigma_max(B).
    """
    ua, sa, va = svd(a)
    ub, sb, vb = svd(b)
    width = sa.smallest - sb.largest
    if width <= 0:
        raise SeparationError(
            f"witness needs sigma_min(A) > sigma_max(B), got width {width:.3e}",
            sigma_min_a=sa.smallest,
            sigma_max_b=sb.largest,
        )
    k = sa.values.size - 1
    x = np.outer(ub[:, 0], ua[:, k].conj())
    y = np.outer(vb[:, 0], va[:, k].conj())
    t1, t2 = coupled_operator(a, b, x, y)
    ratio = pair_norm(t1, t2, pairing) / pair_norm(x, y, pairing)
    return x, y, ratio
