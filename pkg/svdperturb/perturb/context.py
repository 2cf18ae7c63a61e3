"""Block context, perturbation blocks and gap quantities."""

import math

from loguru import logger

from svdperturb.errors import CertificateError, ContaminationError, ShapeError
from svdperturb.linalg import Matrix, NormKind, Pairing, PairingNorm, as_matrix, pair_norm, singular_values, ui_norm
from svdperturb.linalg.norms import frobenius, unitarity_defect
from svdperturb.perturb.types import BlockContext, GapReport, PerturbationBlocks, SeparationMode
from svdperturb.sylvester import coupled_gap, separation_width

UNITARY_TOL = 1e-10


def check_unitary(u: Matrix, name: str, tol_unitary: float | None = None) -> None:
    """Raise CertificateError unless u^H u = I within tol_unitary (default 1e-10 * n)."""
    tol = UNITARY_TOL * u.shape[1] if tol_unitary is None else tol_unitary
    defect = unitarity_defect(u)
    if defect > tol:
        raise CertificateError(f"{name} is not unitary: defect {defect:.3e} > {tol:.3e}", name=name, defect=defect)


def split_context(
    g: Matrix,
    u: Matrix,
    v: Matrix,
    r: int,
    *,
    contamination_tol: float = 1e-12,
    tol_unitary: float | None = None,
) -> BlockContext:
    """
    Partition U^H G V at r and check it is block diagonal.

    Raises:
        ShapeError: shapes do not conform or r is out of range.
        ContaminationError: off-diagonal blocks exceed contamination_tol * ||G||_F.
    """
    g = as_matrix(g, "g")
    u = as_matrix(u, "u")
    v = as_matrix(v, "v")
    m, n = g.shape
    if u.shape != (m, m) or v.shape != (n, n):
        raise ShapeError(
            f"u must be {m}x{m} and v {n}x{n}, got {u.shape} and {v.shape}",
            g=[m, n], u=list(u.shape), v=list(v.shape),
        )
    if not 1 <= r < min(m, n):
        raise ShapeError(f"r must satisfy 1 <= r < {min(m, n)}, got {r}", r=r)
    check_unitary(u, "u", tol_unitary)
    check_unitary(v, "v", tol_unitary)

    b = u.conj().T @ g @ v
    contamination = max(frobenius(b[:r, r:]), frobenius(b[r:, :r]))
    limit = contamination_tol * frobenius(g)
    if contamination > limit:
        raise ContaminationError(
            f"U^H G V is not block diagonal at r={r}: contamination {contamination:.3e} > {limit:.3e}",
            contamination=contamination,
            limit=limit,
        )
    return BlockContext(g=g, u=u, v=v, r=r, g1=b[:r, :r], g2=b[r:, r:])


def project_perturbation(ctx: BlockContext, e: Matrix) -> PerturbationBlocks:
    """Blocks of U^H E V at the context split."""
    e = as_matrix(e, "e")
    if e.shape != ctx.g.shape:
        raise ShapeError(f"e must have shape {ctx.g.shape}, got {e.shape}", expected=list(ctx.g.shape), got=list(e.shape))
    b = ctx.u.conj().T @ e @ ctx.v
    r = ctx.r
    return PerturbationBlocks(e11=b[:r, :r], e12=b[:r, r:], e21=b[r:, :r], e22=b[r:, r:])


def constant_c(separation: SeparationMode, p: PairingNorm) -> float:
    """
    The constant c in the operator lower bound ||T(x)|| >= (delta_under / c) ||x||.

    Blockdiag pairing: 1 if interval separated or Frobenius, else pi/2.
    Max pairing: 1 if interval separated, else pi.
    """
    if separation is SeparationMode.INTERVAL_SEPARATED:
        return 1.0
    if p.pairing is Pairing.BLOCKDIAG:
        return 1.0 if p.kind is NormKind.FROBENIUS else math.pi / 2
    return math.pi


def gap_quantities(ctx: BlockContext, eb: PerturbationBlocks, p: PairingNorm) -> GapReport:
    """Compute delta, delta_under, epsilon, kappa2 and the small-perturbation condition."""
    delta = coupled_gap(ctx.g1, ctx.g2)
    separated = separation_width(ctx.g1, ctx.g2) > 0
    separation = SeparationMode.INTERVAL_SEPARATED if separated else SeparationMode.DISJOINT_ONLY

    e11_norm = ui_norm(eb.e11, NormKind.SPECTRAL)
    e22_norm = ui_norm(eb.e22, NormKind.SPECTRAL)
    delta_under = delta - e11_norm - e22_norm
    epsilon = max(ui_norm(eb.e12, NormKind.SPECTRAL), ui_norm(eb.e21, NormKind.SPECTRAL))
    g_norm = pair_norm(eb.e21, eb.e12.conj().T, p)
    c = constant_c(separation, p)
    kappa2 = c * c * epsilon * g_norm / delta_under**2 if delta_under > 0 else math.inf
    condition_met = delta_under > 0 and kappa2 < 0.25

    logger.debug(
        f"gap r={ctx.r} {p.label}: delta={delta:.6g} delta_under={delta_under:.6g} "
        f"eps={epsilon:.3e} kappa2={kappa2:.3e} c={c:.4f} met={condition_met}"
    )
    return GapReport(
        delta=delta,
        delta_under=delta_under,
        epsilon=epsilon,
        g_norm=g_norm,
        kappa2=kappa2,
        c=c,
        separation=separation,
        pairing=p,
        condition_met=condition_met,
        e11_norm=e11_norm,
        e22_norm=e22_norm,
    )


def sigma_extremes(ctx: BlockContext) -> tuple[float, float]:
    """(sigma_min(G1), sigma_max(G2))."""
    return float(singular_values(ctx.g1)[-1]), float(singular_values(ctx.g2)[0])


def perturbed(ctx: BlockContext, eb: PerturbationBlocks) -> Matrix:
    """G_tilde = G + U [E_ij] V^H."""
    return ctx.g + ctx.u @ eb.assemble() @ ctx.v.conj().T
