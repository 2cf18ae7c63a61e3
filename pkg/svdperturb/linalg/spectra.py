"""Singular-spectrum utilities: extended sets, Gram roots, interlacing."""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from svdperturb.errors import ShapeError
from svdperturb.linalg.jacobi import eigh, singular_values
from svdperturb.linalg.types import Matrix, SingularSpectrum, as_matrix


def sv_ext(a: Matrix) -> SingularSpectrum:
    """Singular values of a together with |rows - cols| extension zeros."""
    a = as_matrix(a, "a", allow_empty=True)
    m, n = a.shape
    return SingularSpectrum(values=singular_values(a), ext_zeros=abs(m - n))


def gram_power(g: Matrix, power: float) -> Matrix:
    """(I + g^H g)^power through an eigendecomposition of I + g^H g."""
    g = as_matrix(g, "g", allow_empty=True)
    k = g.shape[1]
    if k == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    gram = np.eye(k, dtype=np.complex128) + g.conj().T @ g
    q, lam = eigh(gram)
    return (q * lam**power) @ q.conj().T


def inv_sqrt_gram(g: Matrix) -> Matrix:
    """(I + g^H g)^{-1/2}; always defined since I + g^H g is positive definite."""
    return gram_power(g, -0.5)


def sqrt_gram(g: Matrix) -> Matrix:
    """(I + g^H g)^{1/2}."""
    return gram_power(g, 0.5)


def multiset_close(x: npt.ArrayLike, y: npt.ArrayLike, tol: float) -> tuple[bool, float]:
    """
    Compare two real multisets by sorting both.

    Returns:
        (equal within tol, largest elementwise deviation).
    """
    xs = np.sort(np.asarray(x, dtype=np.float64))
    ys = np.sort(np.asarray(y, dtype=np.float64))
    if xs.shape != ys.shape:
        return False, float("inf")
    if xs.size == 0:
        return True, 0.0
    dev = float(np.max(np.abs(xs - ys)))
    return dev <= tol, dev


@dataclass
class InterlaceReport:
    """The four singular value inequalities around a split index r."""

    r: int
    sigma_r: float
    sigma_r1: float
    min_leading_cols: float
    min_leading_rows: float
    min_leading_block: float
    max_trailing_cols: float
    max_trailing_rows: float
    upper_ok: bool
    leading_ok: bool
    lower_ok: bool

    @property
    def ok(self) -> bool:
        return self.upper_ok and self.leading_ok and self.lower_ok


def interlace_check(b: Matrix, r: int, slack: float = 1e-12) -> InterlaceReport:
    """
    Check sigma_r(b) >= max{smin(b[:, :r]), smin(b[:r, :])} >= smin(b[:r, :r])
    and sigma_{r+1}(b) <= min{smax(b[:, r:]), smax(b[r:, :])}.

    Comparisons allow slack * (1 + sigma_1(b)) for rounding.
    """
    b = as_matrix(b, "b")
    m, n = b.shape
    if not 1 <= r < min(m, n):
        raise ShapeError(f"r must satisfy 1 <= r < {min(m, n)}, got {r}", r=r, shape=[m, n])

    sigma = singular_values(b)
    tol = slack * (1.0 + sigma[0])

    def smin(x: Matrix) -> float:
        return float(singular_values(x)[-1])

    def smax(x: Matrix) -> float:
        return float(singular_values(x)[0])

    cols, rows = smin(b[:, :r]), smin(b[:r, :])
    block = smin(b[:r, :r])
    tcols, trows = smax(b[:, r:]), smax(b[r:, :])
    sigma_r, sigma_r1 = float(sigma[r - 1]), float(sigma[r])
    leading = max(cols, rows)
    return InterlaceReport(
        r=r,
        sigma_r=sigma_r,
        sigma_r1=sigma_r1,
        min_leading_cols=cols,
        min_leading_rows=rows,
        min_leading_block=block,
        max_trailing_cols=tcols,
        max_trailing_rows=trows,
        upper_ok=sigma_r + tol >= leading,
        leading_ok=leading + tol >= block,
        lower_ok=sigma_r1 <= min(tcols, trows) + tol,
    )
