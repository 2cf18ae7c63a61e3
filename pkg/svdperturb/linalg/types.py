"""Core types shared by every linear algebra routine."""

from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np
import numpy.typing as npt

from svdperturb.errors import ShapeError

Matrix = npt.NDArray[np.complex128]
"""Dense complex matrix; the universal carrier."""


def as_matrix(a: Any, name: str = "matrix", allow_empty: bool = False) -> Matrix:
    """
    Coerce input to a 2-D complex128 array and validate it.

    Args:
        a: Anything numpy can turn into a 2-D array.
        name: Used in error messages.
        allow_empty: Accept matrices with a zero dimension (internal blocks).

    Returns:
        A fresh complex128 array.
    """
    arr = np.array(a, dtype=np.complex128)
    if arr.ndim != 2:
        raise ShapeError(f"{name} must be 2-D, got {arr.ndim}-D", name=name, shape=list(arr.shape))
    if not allow_empty and (arr.shape[0] == 0 or arr.shape[1] == 0):
        raise ShapeError(f"{name} must be nonempty, got shape {arr.shape}", name=name, shape=list(arr.shape))
    if not np.all(np.isfinite(arr)):
        raise ShapeError(f"{name} has non-finite entries", name=name)
    return arr


class NormKind(str, Enum):
    """Unitarily invariant norms supported throughout."""

    SPECTRAL = "spectral"
    FROBENIUS = "frobenius"
    NUCLEAR = "nuclear"


class Pairing(str, Enum):
    """How the norm of a matrix pair (X, Y) is formed."""

    BLOCKDIAG = "blockdiag"
    MAX = "max"


@dataclass(frozen=True)
class PairingNorm:
    """A norm on pairs: either ||blkdiag(X, Y)|| or max(||X||, ||Y||)."""

    pairing: Pairing
    kind: NormKind

    @classmethod
    def block_diag(cls, kind: NormKind) -> "PairingNorm":
        return cls(Pairing.BLOCKDIAG, kind)

    @classmethod
    def max_of(cls, kind: NormKind) -> "PairingNorm":
        return cls(Pairing.MAX, kind)

    @classmethod
    def all(cls) -> list["PairingNorm"]:
        """Every pairing over every norm kind."""
        return [cls(p, k) for p in Pairing for k in NormKind]

    @property
    def label(self) -> str:
        return f"{self.pairing.value}.{self.kind.value}"


@dataclass
class SingularSpectrum:
    """Singular values of a matrix plus the count of zeros its shape implies."""

    values: npt.NDArray[np.float64]
    ext_zeros: int = 0

    def extended(self) -> npt.NDArray[np.float64]:
        """The extended set: values with ext_zeros zeros appended."""
        return np.concatenate([self.values, np.zeros(self.ext_zeros)])

    @property
    def smallest(self) -> float:
        """sigma_min over the plain (non-extended) values."""
        return float(self.values[-1]) if self.values.size else 0.0

    @property
    def largest(self) -> float:
        return float(self.values[0]) if self.values.size else 0.0
