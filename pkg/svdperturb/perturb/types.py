"""Data model for the perturbed decomposition and its certificates."""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import numpy.typing as npt

from svdperturb.linalg import Matrix, PairingNorm
from svdperturb.sylvester import BoundCertificate


class SeparationMode(str, Enum):
    """How sv(G1) and sv_ext(G2) relate."""

    INTERVAL_SEPARATED = "interval_separated"
    DISJOINT_ONLY = "disjoint_only"


@dataclass
class BlockContext:
    """G with unitaries U, V such that U^H G V = blkdiag(G1, G2) at split r."""

    g: Matrix
    u: Matrix
    v: Matrix
    r: int
    g1: Matrix
    g2: Matrix

    @property
    def m(self) -> int:
        return self.g.shape[0]

    @property
    def n(self) -> int:
        return self.g.shape[1]

    @property
    def u1(self) -> Matrix:
        return self.u[:, : self.r]

    @property
    def u2(self) -> Matrix:
        return self.u[:, self.r :]

    @property
    def v1(self) -> Matrix:
        return self.v[:, : self.r]

    @property
    def v2(self) -> Matrix:
        return self.v[:, self.r :]


@dataclass
class PerturbationBlocks:
    """U^H E V partitioned at the context split."""

    e11: Matrix
    e12: Matrix
    e21: Matrix
    e22: Matrix

    def assemble(self) -> Matrix:
        """[[E11, E12], [E21, E22]]."""
        return np.block([[self.e11, self.e12], [self.e21, self.e22]])


@dataclass
class GapReport:
    """Gap quantities and the small-perturbation condition for one pairing norm."""

    delta: float
    delta_under: float
    epsilon: float
    g_norm: float
    kappa2: float
    c: float
    separation: SeparationMode
    pairing: PairingNorm
    condition_met: bool
    e11_norm: float = 0.0
    e22_norm: float = 0.0


@dataclass
class RotationPair:
    """Solution (Gamma, Omega) of the quadratic rotation equations."""

    gamma: Matrix
    omega: Matrix
    iterations: int
    final_step_norm: float
    residual_1: float
    residual_2: float
    guaranteed: bool = True


@dataclass
class CorrectedDecomposition:
    """
    Corrected unitaries and blocks: U_check^H G_tilde V_check = blkdiag(G1_check, G2_check).

    ``sigma_min_g1_bounds`` holds the general lower bound and, when the
    interval-separated refinement applies, its upper bound (otherwise +inf).
    """

    u_check: Matrix
    v_check: Matrix
    g1_check: Matrix
    g2_check: Matrix
    offdiag_residual: float
    rotation_norm: float
    bound_pair_norm: float
    sigma_min_g1: float
    sigma_min_g1_bounds: tuple[float, float]
    sigma_max_g2: float
    sigma_max_g2_upper: float
    u1_dist: float
    v1_dist: float
    sigma_tilde: npt.NDArray[np.float64]
    closed_form_deviation: float = 0.0
    spectrum_deviation: float = 0.0
    guaranteed: bool = True
    certificates: list[BoundCertificate] = field(default_factory=list)


@dataclass
class ImprovedSigmaBounds:
    """Sharper enclosure of sigma_min(G1_check) under interval separation."""

    lower: float
    upper: float
    measured: float
    term: float
    top_r_match: bool
    per_index_ok: bool
    separated: bool
    slack: float = 0.0

    @property
    def ok(self) -> bool:
        inside = self.lower - self.slack <= self.measured <= self.upper + self.slack
        return inside and self.top_r_match and self.per_index_ok and self.separated


@dataclass
class CorollaryBound:
    """Condition flag, kappa and bound value of one corollary."""

    condition_met: bool
    kappa: float
    bound: float
    applicable: bool = True

    @classmethod
    def not_applicable(cls) -> "CorollaryBound":
        return cls(condition_met=False, kappa=math.inf, bound=math.inf, applicable=False)


@dataclass
class ComparisonReport:
    """Classical and new perturbation conditions evaluated on one instance."""

    eps_hat: float
    eps_tilde: float
    epsilon: float
    delta_under: float
    stewart: CorollaryBound
    naive: CorollaryBound
    new_bounds: dict[str, CorollaryBound]

    @property
    def stewart_condition_met(self) -> bool:
        return self.stewart.condition_met

    @property
    def stewart_bound(self) -> float:
        return self.stewart.bound

    @property
    def chain_ok(self) -> bool:
        """eps_hat^2 >= epsilon * eps_hat, the Frobenius-over-spectral chain."""
        return self.eps_hat**2 >= self.epsilon * self.eps_hat * (1.0 - 1e-12)

    @property
    def dominance_ok(self) -> bool:
        """Stewart's condition implies the Frobenius (i) condition with a smaller bound."""
        if not self.stewart.condition_met:
            return True
        f1 = self.new_bounds["frobenius.i"]
        return f1.condition_met and f1.bound <= self.stewart.bound * (1.0 + 1e-12)
