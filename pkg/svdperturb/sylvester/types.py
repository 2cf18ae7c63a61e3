"""Problem, solution and certificate types for Sylvester equations."""

from dataclasses import dataclass
from enum import Enum

from svdperturb.errors import NotHermitianError, ShapeError
from svdperturb.linalg import Matrix, PairingNorm, as_matrix
from svdperturb.linalg.jacobi import HERM_TOL, hermitian_defect
from svdperturb.linalg.norms import frobenius


def _check_hermitian(h: Matrix, name: str) -> None:
    if h.shape[0] != h.shape[1]:
        raise NotHermitianError(f"{name} must be square, got {h.shape}", name=name)
    defect, where = hermitian_defect(h)
    if defect > HERM_TOL * frobenius(h):
        raise NotHermitianError(
            f"{name} is not Hermitian: defect {defect:.3e} at {where}",
            name=name,
            entry=list(where),
            magnitude=defect,
        )


@dataclass
class HermSylvesterProblem:
    """
    XA - BX = S with A (r x r) and B (s x s) Hermitian.

    ``interval_separated`` is the caller's claim that one spectrum lies in an
    interval the other avoids; it unlocks the c=1 bound in every norm.
    """

    a: Matrix
    b: Matrix
    s_rhs: Matrix
    interval_separated: bool = False

    def __post_init__(self) -> None:
        self.a = as_matrix(self.a, "a")
        self.b = as_matrix(self.b, "b")
        self.s_rhs = as_matrix(self.s_rhs, "s_rhs")
        _check_hermitian(self.a, "a")
        _check_hermitian(self.b, "b")
        if self.s_rhs.shape != (self.b.shape[0], self.a.shape[0]):
            raise ShapeError(
                f"s_rhs must be {self.b.shape[0]}x{self.a.shape[0]}, got {self.s_rhs.shape}",
                expected=[self.b.shape[0], self.a.shape[0]],
                got=list(self.s_rhs.shape),
            )


@dataclass
class CoupledSylvesterProblem:
    """XA - BY = S and YA^H - B^H X = T with A r x r, B s x t."""

    a: Matrix
    b: Matrix
    s_rhs: Matrix
    t_rhs: Matrix

    def __post_init__(self) -> None:
        self.a = as_matrix(self.a, "a")
        self.b = as_matrix(self.b, "b")
        self.s_rhs = as_matrix(self.s_rhs, "s_rhs")
        self.t_rhs = as_matrix(self.t_rhs, "t_rhs")
        r = self.a.shape[0]
        s, t = self.b.shape
        if self.a.shape[1] != r:
            raise ShapeError(f"a must be square, got {self.a.shape}", got=list(self.a.shape))
        if self.s_rhs.shape != (s, r):
            raise ShapeError(f"s_rhs must be {s}x{r}, got {self.s_rhs.shape}", expected=[s, r], got=list(self.s_rhs.shape))
        if self.t_rhs.shape != (t, r):
            raise ShapeError(f"t_rhs must be {t}x{r}, got {self.t_rhs.shape}", expected=[t, r], got=list(self.t_rhs.shape))

    @property
    def shape(self) -> tuple[int, int, int]:
        """(r, s, t)."""
        return self.a.shape[0], self.b.shape[0], self.b.shape[1]


@dataclass
class SolutionPair:
    """Solution (X, Y) of a coupled system and the Frobenius residuals of both equations."""

    x: Matrix
    y: Matrix
    residual_1: float = 0.0
    residual_2: float = 0.0


class Regime(str, Enum):
    """Which bound family a certificate comes from; ROTATION marks checks on the corrected decomposition."""

    FROBENIUS_GAP = "frobenius_gap"
    INTERVAL_SEPARATED = "interval_separated"
    GENERAL_UI = "general_ui"
    ROTATION = "rotation"


@dataclass
class BoundCertificate:
    """measured_value <= constant * rhs / delta, evaluated and recorded."""

    id: str
    regime: Regime
    pairing: PairingNorm
    delta: float
    constant: float
    bound_value: float
    measured_value: float
    satisfied: bool
    condition_met: bool = True


def certify(
    id: str,
    regime: Regime,
    pairing: PairingNorm,
    delta: float,
    constant: float,
    rhs: float,
    measured: float,
    rel_slack: float = 1e-10,
    abs_slack: float = 0.0,
) -> BoundCertificate:
    """Build a certificate for measured <= constant * rhs / delta, up to the given slacks."""
    bound = constant * rhs / delta
    return BoundCertificate(
        id=id,
        regime=regime,
        pairing=pairing,
        delta=delta,
        constant=constant,
        bound_value=bound,
        measured_value=measured,
        satisfied=measured <= bound * (1.0 + rel_slack) + abs_slack,
    )
