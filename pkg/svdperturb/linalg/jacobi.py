"""Jacobi SVD and Hermitian eigensolver on dense complex matrices."""

import numpy as np
import numpy.typing as npt
from loguru import logger

from svdperturb.errors import ConvergenceError, NotHermitianError
from svdperturb.linalg.types import Matrix, SingularSpectrum, as_matrix

MAX_SWEEPS = 60
ROTATION_TOL = 1e-14
HERM_TOL = 1e-12


def _rotation(a: float, b: float, h: complex) -> Matrix:
    """
    2x2 unitary J with J^H [[a, h], [conj(h), b]] J diagonal.

    J = diag(1, e^{-i phi}) times a real rotation, where h = |h| e^{i phi}.
    """
    mag = abs(h)
    phase = h / mag
    zeta = (b - a) / (2.0 * mag)
    sign = 1.0 if zeta >= 0 else -1.0
    t = sign / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = c * t
    conj_phase = np.conj(phase)
    return np.array([[c, s], [-s * conj_phase, c * conj_phase]], dtype=np.complex128)


def _one_sided(a: Matrix, max_sweeps: int, tol: float) -> tuple[Matrix, Matrix, npt.NDArray[np.float64]]:
    """
    One-sided Jacobi on a tall matrix (rows >= cols).

    Returns W = a V with mutually orthogonal columns, the accumulated V
    and the column norms of W, all in the original column order.
    """
    w = a.copy()
    n = w.shape[1]
    v = np.eye(n, dtype=np.complex128)

    for sweep in range(1, max_sweeps + 1):
        rotated = 0
        for i in range(n - 1):
            for j in range(i + 1, n):
                alpha = float(np.vdot(w[:, i], w[:, i]).real)
                beta = float(np.vdot(w[:, j], w[:, j]).real)
                gamma = complex(np.vdot(w[:, i], w[:, j]))
                if gamma == 0 or abs(gamma) <= tol * np.sqrt(alpha * beta):
                    continue
                rot = _rotation(alpha, beta, gamma)
                w[:, [i, j]] = w[:, [i, j]] @ rot
                v[:, [i, j]] = v[:, [i, j]] @ rot
                rotated += 1
        if rotated == 0:
            logger.debug(f"one-sided jacobi converged after {sweep} sweep(s) on {a.shape[0]}x{n}")
            norms = np.sqrt(np.sum(np.abs(w) ** 2, axis=0))
            return w, v, norms

    raise ConvergenceError(
        f"Jacobi SVD did not converge in {max_sweeps} sweeps",
        sweeps=max_sweeps,
    )


def complete_basis(q: Matrix, m: int) -> Matrix:
    """
    Extend orthonormal columns q (m x k) to an m x m unitary.

    New columns come from identity vectors, always taking the one with the
    largest component outside the current span, orthogonalized twice.
    """
    basis = q.copy() if q.size else np.zeros((m, 0), dtype=np.complex128)
    eye = np.eye(m, dtype=np.complex128)
    while basis.shape[1] < m:
        residual = eye - basis @ (basis.conj().T @ eye)
        pick = int(np.argmax(np.sum(np.abs(residual) ** 2, axis=0)))
        col = residual[:, pick]
        for _ in range(2):
            col = col - basis @ (basis.conj().T @ col)
            col = col / np.sqrt(np.vdot(col, col).real)
        basis = np.column_stack([basis, col])
    return basis


def svd(
    a: Matrix,
    *,
    max_sweeps: int = MAX_SWEEPS,
    tol: float = ROTATION_TOL,
) -> tuple[Matrix, SingularSpectrum, Matrix]:
    """
    Full singular value decomposition a = u diag(sigma) v^H.

    Args:
        a: m x n matrix.
        max_sweeps: Cyclic sweep limit before ConvergenceError.
        tol: A column pair is left alone once |w_i^H w_j| <= tol ||w_i|| ||w_j||.

    Returns:
        (u, sigma, v) with u m x m and v n x n unitary, sigma nonincreasing.
    """
    a = as_matrix(a, "a")
    m, n = a.shape
    if m < n:
        vt, spec, ut = svd(a.conj().T, max_sweeps=max_sweeps, tol=tol)
        return ut, spec, vt

    w, v, sigma = _one_sided(a, max_sweeps, tol)
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    w = w[:, order]
    v = v[:, order]

    cutoff = sigma[0] * np.finfo(np.float64).eps * max(m, n) if sigma[0] > 0 else 0.0
    keep = int(np.count_nonzero(sigma > cutoff)) if sigma[0] > 0 else 0
    u = complete_basis(w[:, :keep] / sigma[:keep], m)
    return u, SingularSpectrum(values=sigma, ext_zeros=m - n), v


def singular_values(a: Matrix, *, max_sweeps: int = MAX_SWEEPS, tol: float = ROTATION_TOL) -> npt.NDArray[np.float64]:
    """Nonincreasing singular values only; skips forming u."""
    a = as_matrix(a, "a", allow_empty=True)
    if a.size == 0:
        return np.zeros(0)
    if a.shape[0] < a.shape[1]:
        a = a.conj().T
    _, _, sigma = _one_sided(a, max_sweeps, tol)
    return np.sort(sigma)[::-1]


def hermitian_defect(h: Matrix) -> tuple[float, tuple[int, int]]:
    """Largest |h_ij - conj(h_ji)| and where it occurs."""
    diff = np.abs(h - h.conj().T)
    idx = np.unravel_index(int(np.argmax(diff)), diff.shape)
    return float(diff[idx]), (int(idx[0]), int(idx[1]))


def eigh(
    h: Matrix,
    *,
    max_sweeps: int = MAX_SWEEPS,
    tol: float = ROTATION_TOL,
    herm_tol: float = HERM_TOL,
) -> tuple[Matrix, npt.NDArray[np.float64]]:
    """
    Hermitian eigendecomposition h = q diag(lam) q^H by two-sided Jacobi.

    Args:
        h: Hermitian n x n matrix.
        max_sweeps: Cyclic sweep limit before ConvergenceError.
        tol: Stop once off(h) <= tol * ||h||_F.
        herm_tol: Accept h when max |h - h^H| <= herm_tol * ||h||_F.

    Returns:
        (q, lam) with lam nonincreasing, ties kept in original order.
    """
    h = as_matrix(h, "h")
    n = h.shape[0]
    if h.shape[1] != n:
        raise NotHermitianError(f"h must be square, got {h.shape}", shape=list(h.shape))

    fro = float(np.sqrt(np.vdot(h, h).real))
    defect, where = hermitian_defect(h)
    if defect > herm_tol * fro:
        raise NotHermitianError(
            f"h is not Hermitian: |h[{where[0]},{where[1]}] - conj(h[{where[1]},{where[0]}])| = {defect:.3e}",
            entry=list(where),
            magnitude=defect,
        )

    work = (h + h.conj().T) / 2
    q = np.eye(n, dtype=np.complex128)
    threshold = tol * fro

    def off() -> float:
        d = work - np.diag(np.diag(work))
        return float(np.sqrt(np.vdot(d, d).real))

    sweeps = 0
    while off() > threshold:
        sweeps += 1
        if sweeps > max_sweeps:
            raise ConvergenceError(
                f"Jacobi eigensolver did not converge in {max_sweeps} sweeps",
                sweeps=max_sweeps,
                off_diagonal=off(),
            )
        for p in range(n - 1):
            for k in range(p + 1, n):
                hpk = complex(work[p, k])
                if hpk == 0:
                    continue
                rot = _rotation(work[p, p].real, work[k, k].real, hpk)
                work[:, [p, k]] = work[:, [p, k]] @ rot
                work[[p, k], :] = rot.conj().T @ work[[p, k], :]
                work[p, k] = work[k, p] = 0
                q[:, [p, k]] = q[:, [p, k]] @ rot

    logger.debug(f"jacobi eigh converged after {sweeps} sweep(s) on {n}x{n}")
    lam = np.diag(work).real.copy()
    order = np.argsort(-lam, kind="stable")
    return q[:, order], lam[order]
