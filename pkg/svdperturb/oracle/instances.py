"""Seeded instance generators for the property suites and the demo data."""

import math
from dataclasses import dataclass, replace

import numpy as np
from loguru import logger

from svdperturb.errors import InfeasibleInstanceError, ShapeError
from svdperturb.linalg import Matrix, singular_values, sv_ext
from svdperturb.perturb.types import BlockContext, PerturbationBlocks

MAX_REJECTIONS = 1000
MAX_HALVINGS = 60


@dataclass(frozen=True)
class IntervalSeparated:
    """sigma_min(G1) - sigma_max(G2) = width."""

    width: float


@dataclass(frozen=True)
class Interleaved:
    """Every sv(G1) is at least min_gap from every sv_ext(G2), but the intervals overlap."""

    min_gap: float


GapProfile = IntervalSeparated | Interleaved


@dataclass(frozen=True)
class InstanceSpec:
    m: int
    n: int
    r: int
    gap_profile: GapProfile
    pert_scale: float
    seed: int
    gap_anchor: float = 1.0

    def __post_init__(self) -> None:
        if not 1 <= self.r < min(self.m, self.n):
            raise ShapeError(f"r must satisfy 1 <= r < {min(self.m, self.n)}, got {self.r}", r=self.r)
        if self.pert_scale < 0 or not math.isfinite(self.pert_scale):
            raise InfeasibleInstanceError(f"pert_scale must be finite and >= 0, got {self.pert_scale}")


def random_unitary(rng: np.random.Generator, n: int) -> Matrix:
    """Product of n Householder reflectors I - 2ww^H built from complex Gaussian vectors."""
    q = np.eye(n, dtype=np.complex128)
    for _ in range(n):
        w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        w /= np.linalg.norm(w)
        q -= 2.0 * np.outer(q @ w, w.conj())
    return q


def _rect_diag(values: np.ndarray, rows: int, cols: int) -> Matrix:
    out = np.zeros((rows, cols), dtype=np.complex128)
    out[np.arange(values.size), np.arange(values.size)] = values
    return out


def matrix_with_singular_values(rng: np.random.Generator, rows: int, cols: int, values: np.ndarray) -> Matrix:
    """P diag(values) Q^H with seeded random unitaries P, Q; len(values) = min(rows, cols)."""
    p = random_unitary(rng, rows)
    q = random_unitary(rng, cols)
    return p @ _rect_diag(np.asarray(values, dtype=np.float64), rows, cols) @ q.conj().T


def hermitian_with_eigenvalues(rng: np.random.Generator, values: np.ndarray) -> Matrix:
    """Q diag(values) Q^H, symmetrized so the result is exactly Hermitian."""
    q = random_unitary(rng, len(values))
    h = (q * np.asarray(values, dtype=np.float64)) @ q.conj().T
    return (h + h.conj().T) / 2.0


def complex_gaussian(rng: np.random.Generator, rows: int, cols: int) -> Matrix:
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def _separated_values(rng: np.random.Generator, r: int, k: int, width: float, anchor: float) -> tuple[np.ndarray, np.ndarray]:
    if not (width > 0 and math.isfinite(width)):
        raise InfeasibleInstanceError(f"interval width must be finite and > 0, got {width}", width=width)
    if anchor < 0:
        raise InfeasibleInstanceError(f"gap anchor must be >= 0, got {anchor}", anchor=anchor)
    low = anchor + width
    s1 = np.sort(rng.uniform(low, low + 2.0, size=r))[::-1].copy()
    s1[-1] = low
    s2 = np.sort(rng.uniform(0.0, anchor, size=k))[::-1].copy()
    s2[0] = anchor
    return s1, s2


def _interleaved_values(
    rng: np.random.Generator, r: int, k: int, ext_zeros: int, min_gap: float
) -> tuple[np.ndarray, np.ndarray]:
    if not (min_gap > 0 and math.isfinite(min_gap)):
        raise InfeasibleInstanceError(f"min_gap must be finite and > 0, got {min_gap}", min_gap=min_gap)
    for attempt in range(1, MAX_REJECTIONS + 1):
        s1 = np.sort(rng.uniform(0.0, 3.0, size=r))[::-1]
        s2 = np.sort(rng.uniform(0.0, 3.0, size=k))[::-1]
        ext = np.concatenate([s2, np.zeros(ext_zeros)])
        gap = float(np.min(np.abs(s1[:, None] - ext[None, :])))
        if gap >= min_gap and s1[-1] < ext.max():
            logger.debug(f"interleaved spectrum accepted after {attempt} draw(s), gap={gap:.4g}")
            return s1, s2
    raise InfeasibleInstanceError(
        f"no interleaved spectrum with gap >= {min_gap} after {MAX_REJECTIONS} draws",
        min_gap=min_gap,
    )


def gen_instance(spec: InstanceSpec) -> tuple[BlockContext, PerturbationBlocks, Matrix]:
    """
    Build G = U blkdiag(G1, G2) V^H and E = pert_scale * (unit Frobenius direction).

    Draw order is fixed (U, V, spectrum, E) so one seed always gives the same
    instance.

    Raises:
        InfeasibleInstanceError: the gap profile cannot be met.
    """
    m, n, r = spec.m, spec.n, spec.r
    rng = np.random.default_rng(spec.seed)
    u = random_unitary(rng, m)
    v = random_unitary(rng, n)

    k = min(m - r, n - r)
    profile = spec.gap_profile
    if isinstance(profile, IntervalSeparated):
        s1, s2 = _separated_values(rng, r, k, profile.width, spec.gap_anchor)
    else:
        s1, s2 = _interleaved_values(rng, r, k, abs(m - n), profile.min_gap)

    g1 = np.diag(s1).astype(np.complex128)
    g2 = _rect_diag(s2, m - r, n - r)
    core = np.zeros((m, n), dtype=np.complex128)
    core[:r, :r] = g1
    core[r:, r:] = g2
    g = u @ core @ v.conj().T

    direction = complex_gaussian(rng, m, n)
    direction /= np.linalg.norm(direction)
    e = spec.pert_scale * direction
    b = u.conj().T @ e @ v
    eb = PerturbationBlocks(e11=b[:r, :r], e12=b[:r, r:], e21=b[r:, :r], e22=b[r:, r:])

    logger.debug(f"instance seed={spec.seed} {m}x{n} r={r} profile={profile} scale={spec.pert_scale:.3e}")
    return BlockContext(g=g, u=u, v=v, r=r, g1=g1, g2=g2), eb, e


def worst_kappa(ctx: BlockContext, eb: PerturbationBlocks) -> float:
    """
    kappa2 with the largest constant and pairing norm any certificate uses.

    Below 1/4 here means the small-perturbation condition holds for every
    pairing norm.
    """
    s1 = singular_values(ctx.g1)
    s2 = sv_ext(ctx.g2).extended()
    delta = float(np.min(np.abs(s1[:, None] - s2[None, :])))
    delta_under = delta - _spectral(eb.e11) - _spectral(eb.e22)
    if delta_under <= 0:
        return math.inf
    c = 1.0 if s1[-1] > s2.max() else math.pi
    eps = max(_spectral(eb.e12), _spectral(eb.e21))
    g_norm = float(singular_values(eb.e21).sum() + singular_values(eb.e12).sum())
    return c * c * eps * g_norm / delta_under**2


def _spectral(a: Matrix) -> float:
    return float(singular_values(a)[0]) if a.size else 0.0


def calibrated_instance(
    spec: InstanceSpec, kappa_target: float
) -> tuple[InstanceSpec, BlockContext, PerturbationBlocks, Matrix]:
    """
    Halve pert_scale until worst_kappa < kappa_target.

    Returns the spec actually used alongside the instance.

    Raises:
        InfeasibleInstanceError: no admissible scale within MAX_HALVINGS halvings.
    """
    current = spec
    for _ in range(MAX_HALVINGS + 1):
        ctx, eb, e = gen_instance(current)
        kappa = worst_kappa(ctx, eb)
        if kappa < kappa_target:
            return current, ctx, eb, e
        current = replace(current, pert_scale=current.pert_scale / 2.0)
    raise InfeasibleInstanceError(
        f"could not reach kappa2 < {kappa_target} by halving pert_scale",
        seed=spec.seed,
        kappa_target=kappa_target,
    )


def separation_exhibit() -> tuple[BlockContext, PerturbationBlocks, Matrix]:
    """
    A 12x12, r=4 instance with G diagonal and delta = 2.4.

    E12 and E21 are rank one with spectral norm 0.3 * delta, E11 = E22 = 0.
    The naive spectral test eps_tilde / delta < 1/2 fails (about 0.848)
    while the interval-separated spectral condition holds (kappa = 0.09).
    """
    m = n = 12
    r = 4
    values = np.array([4.0, 3.8, 3.6, 3.4, 1.0, 0.8, 0.6, 0.4, 0.2, 0.0, 0.0, 0.0])
    g = np.diag(values).astype(np.complex128)
    eye = np.eye(m, dtype=np.complex128)
    delta = values[r - 1] - values[r]
    size = 0.3 * delta

    left = np.full(r, 1.0 / math.sqrt(r))
    right = np.full(m - r, 1.0 / math.sqrt(m - r))
    e12 = (size * np.outer(left, right)).astype(np.complex128)
    e21 = (size * np.outer(right, left)).astype(np.complex128)
    e11 = np.zeros((r, r), dtype=np.complex128)
    e22 = np.zeros((m - r, n - r), dtype=np.complex128)
    eb = PerturbationBlocks(e11=e11, e12=e12, e21=e21, e22=e22)
    ctx = BlockContext(g=g, u=eye, v=eye.copy(), r=r, g1=g[:r, :r], g2=g[r:, r:])
    return ctx, eb, eb.assemble()


# Demo data, also shipped under data/demo/. G = U diag(5, 4, 1, 0.5) V^H with
# U = blkdiag(H/2, 1) and V = H/2 for the 4x4 Sylvester-Hadamard matrix H.
_HADAMARD = np.array(
    [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]], dtype=np.float64
)
DEMO_SIGMA = np.array([5.0, 4.0, 1.0, 0.5])
DEMO_R = 2
DEMO_E = np.array(
    [
        [0.01, -0.02, 0.01j, 0.03],
        [0.02, 0.01, -0.01, 0.0],
        [0.0, 0.015, 0.02, -0.01],
        [-0.01, 0.0, 0.01, 0.025],
        [0.02, -0.01, 0.0, 0.01],
    ],
    dtype=np.complex128,
)


def demo_instance() -> tuple[BlockContext, PerturbationBlocks, Matrix]:
    """The 5x4, r=2 demo instance: interval separated with delta = 3."""
    u = np.eye(5, dtype=np.complex128)
    u[:4, :4] = _HADAMARD / 2.0
    v = (_HADAMARD / 2.0).astype(np.complex128)
    core = _rect_diag(DEMO_SIGMA, 5, 4)
    g = u @ core @ v.conj().T
    r = DEMO_R
    b = u.conj().T @ DEMO_E @ v
    eb = PerturbationBlocks(e11=b[:r, :r], e12=b[:r, r:], e21=b[r:, :r], e22=b[r:, r:])
    ctx = BlockContext(g=g, u=u, v=v, r=r, g1=core[:r, :r].copy(), g2=core[r:, r:].copy())
    return ctx, eb, DEMO_E.copy()


def demo_sintheta() -> tuple[Matrix, Matrix, Matrix, Matrix]:
    """
    (G, U1_t, V1_t, G1_t) for the demo sin-theta run.

    U1_t tilts the second left singular vector of G towards e_5 with
    cosine 0.96 and sine 0.28; V1_t and G1_t are exact.
    """
    ctx, _, _ = demo_instance()
    u1_t = ctx.u1.copy()
    u1_t[:, 1] = 0.96 * ctx.u[:, 1] + 0.28 * ctx.u[:, 4]
    return ctx.g, u1_t, ctx.v1.copy(), ctx.g1.copy()
