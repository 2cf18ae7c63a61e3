"""
Brute-force reference solvers.

These deliberately use numpy.linalg and dense vectorized systems so that
they share no code with the Jacobi-based solver paths they cross-check.
"""

import numpy as np
from loguru import logger

from svdperturb.errors import OracleAbstained, SingularSylvesterError
from svdperturb.linalg import Matrix
from svdperturb.perturb.types import BlockContext
from svdperturb.sylvester.types import CoupledSylvesterProblem, HermSylvesterProblem, SolutionPair

COND_LIMIT = 1e12
ABSTAIN_COND = 1e8


def _solve_dense(mat: np.ndarray, rhs: np.ndarray, what: str) -> np.ndarray:
    cond = np.linalg.cond(mat)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SingularSylvesterError(f"{what} is numerically singular (cond {cond:.3e})", cond=float(cond))
    try:
        return np.linalg.solve(mat, rhs)
    except np.linalg.LinAlgError as e:
        raise SingularSylvesterError(f"{what} is singular: {e}") from e


def vectorized_coupled_solve(p: CoupledSylvesterProblem) -> SolutionPair:
    """
    Solve XA - BY = S, YA^H - B^H X = T as one real linear system.

    The unknowns are the real and imaginary parts of vec(X) and vec(Y); the
    system matrix is assembled column by column by applying both equations
    to unit vectors and is solved by LU with partial pivoting.
    """
    a, b = p.a, p.b
    r, s, t = p.shape
    nx, ny = s * r, t * r

    def unpack(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        w = z[: nx + ny] + 1j * z[nx + ny :]
        return w[:nx].reshape(s, r), w[nx:].reshape(t, r)

    def apply(z: np.ndarray) -> np.ndarray:
        x, y = unpack(z)
        out = np.concatenate([(x @ a - b @ y).ravel(), (y @ a.conj().T - b.conj().T @ x).ravel()])
        return np.concatenate([out.real, out.imag])

    size = 2 * (nx + ny)
    mat = np.empty((size, size))
    for k in range(size):
        unit = np.zeros(size)
        unit[k] = 1.0
        mat[:, k] = apply(unit)

    rhs = np.concatenate([p.s_rhs.ravel(), p.t_rhs.ravel()])
    z = _solve_dense(mat, np.concatenate([rhs.real, rhs.imag]), "vectorized coupled system")
    x, y = unpack(z)
    res_1 = float(np.linalg.norm(x @ a - b @ y - p.s_rhs))
    res_2 = float(np.linalg.norm(y @ a.conj().T - b.conj().T @ x - p.t_rhs))
    return SolutionPair(x=x, y=y, residual_1=res_1, residual_2=res_2)


def vectorized_herm_solve(p: HermSylvesterProblem) -> Matrix:
    """XA - BX = S through (A^T kron I - I kron B) vec(X) = vec(S), column-major vec."""
    r, s = p.a.shape[0], p.b.shape[0]
    mat = np.kron(p.a.T, np.eye(s)) - np.kron(np.eye(r), p.b)
    x = _solve_dense(mat, p.s_rhs.ravel(order="F"), "Kronecker Sylvester system")
    return x.reshape((s, r), order="F")


def rotation_equation_residuals(
    ctx: BlockContext, e: Matrix, gamma: Matrix, omega: Matrix
) -> tuple[float, float]:
    """
    Frobenius residuals of the quadratic rotation system written in terms of
    B = U^H (G + E) V: B21 + B22 W - Gamma B11 - Gamma B12 W and its partner.
    """
    r = ctx.r
    bt = ctx.u.conj().T @ (ctx.g + e) @ ctx.v
    b11, b12, b21, b22 = bt[:r, :r], bt[:r, r:], bt[r:, :r], bt[r:, r:]
    first = b21 + b22 @ omega - gamma @ b11 - gamma @ b12 @ omega
    gh, wh = gamma.conj().T, omega.conj().T
    second = b12 - b11 @ wh + gh @ b22 - gh @ b21 @ wh
    return float(np.linalg.norm(first)), float(np.linalg.norm(second))


def direct_rotation_oracle(
    ctx: BlockContext, e: Matrix, *, residual_tol: float = 1e-9
) -> tuple[Matrix, Matrix]:
    """
    Read (Gamma, Omega) off a full SVD of G + E.

    The r singular triplets whose vectors lie closest to range(U1) and
    range(V1) are kept; then Gamma = (U2^H Ut1)(U1^H Ut1)^-1 and
    Omega = (V2^H Vt1)(V1^H Vt1)^-1.

    Raises:
        OracleAbstained: U1^H Ut1 or V1^H Vt1 has condition number above
            1e8, or the result misses the rotation equations by more than
            residual_tol * ||G + E||_F.
    """
    r = ctx.r
    gt = ctx.g + e
    ut, _, vth = np.linalg.svd(gt, full_matrices=True)
    vt = vth.conj().T
    k = min(gt.shape)
    score = np.linalg.norm(ctx.u1.conj().T @ ut[:, :k], axis=0) ** 2
    score += np.linalg.norm(ctx.v1.conj().T @ vt[:, :k], axis=0) ** 2
    keep = np.sort(np.argsort(-score, kind="stable")[:r])
    ut1, vt1 = ut[:, keep], vt[:, keep]

    c_u = ctx.u1.conj().T @ ut1
    c_v = ctx.v1.conj().T @ vt1
    for name, block in (("U1^H Ut1", c_u), ("V1^H Vt1", c_v)):
        cond = np.linalg.cond(block)
        if not np.isfinite(cond) or cond > ABSTAIN_COND:
            raise OracleAbstained(f"{name} is ill-conditioned (cond {cond:.3e})", cond=float(cond))

    gamma = ctx.u2.conj().T @ ut1 @ np.linalg.inv(c_u)
    omega = ctx.v2.conj().T @ vt1 @ np.linalg.inv(c_v)
    res_1, res_2 = rotation_equation_residuals(ctx, e, gamma, omega)
    limit = residual_tol * max(float(np.linalg.norm(gt)), 1.0)
    if max(res_1, res_2) > limit:
        raise OracleAbstained(
            f"oracle rotations miss the quadratic system: residuals {res_1:.3e}, {res_2:.3e}",
            residual_1=res_1,
            residual_2=res_2,
        )
    logger.debug(f"direct rotation oracle: |Gamma|_F={np.linalg.norm(gamma):.6g} residuals {res_1:.2e}, {res_2:.2e}")
    return gamma, omega
