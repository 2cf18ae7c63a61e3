"""The rotation equations T(Gamma, Omega) = (E21, E12^H) - phi(Gamma, Omega) and their fixed-point solve."""

import math

import numpy as np
from loguru import logger

from svdperturb.errors import CertificateError, ConditionNotMetError, ConvergenceError
from svdperturb.linalg import Matrix, pair_norm
from svdperturb.linalg.norms import frobenius
from svdperturb.perturb.types import BlockContext, GapReport, PerturbationBlocks, RotationPair
from svdperturb.sylvester import CoupledSylvesterSolver, coupled_operator


def apply_t(ctx: BlockContext, eb: PerturbationBlocks, gamma: Matrix, omega: Matrix) -> tuple[Matrix, Matrix]:
    """T(Gamma, Omega) = (Gamma A - B Omega, Omega A^H - B^H Gamma), A = G1+E11, B = G2+E22."""
    return coupled_operator(ctx.g1 + eb.e11, ctx.g2 + eb.e22, gamma, omega)


def apply_phi(eb: PerturbationBlocks, gamma: Matrix, omega: Matrix) -> tuple[Matrix, Matrix]:
    """phi(Gamma, Omega) = (Gamma E12 Omega, Omega E21^H Gamma)."""
    return gamma @ eb.e12 @ omega, omega @ eb.e21.conj().T @ gamma


def contraction_factor(kappa: float) -> float:
    """
    (1 + sqrt(1 - 4k)) / (1 - 2k + sqrt(1 - 4k)).

    Increases from 1 at k=0 to 2 at k=1/4; +inf beyond.
    """
    if kappa > 0.25:
        return math.inf
    root = math.sqrt(max(0.0, 1.0 - 4.0 * kappa))
    return (1.0 + root) / (1.0 - 2.0 * kappa + root)


def rotation_bound(rep: GapReport) -> float:
    """
    Upper bound on ||(Gamma, Omega)|| in the report's pairing norm.

    Raises:
        ConditionNotMetError: the small-perturbation condition fails.
    """
    if not rep.condition_met:
        raise ConditionNotMetError(
            f"small-perturbation condition fails: delta_under={rep.delta_under:.6g}, kappa2={rep.kappa2:.6g}",
            delta_under=rep.delta_under,
            kappa2=rep.kappa2,
        )
    base = rep.c * rep.g_norm / rep.delta_under
    value = contraction_factor(rep.kappa2) * base
    if base > 0 and not value < 2 * base:
        raise CertificateError(f"rotation bound {value:.6g} not below 2c||g||/delta_under = {2 * base:.6g}")
    return value


def rotation_residuals(
    ctx: BlockContext, eb: PerturbationBlocks, gamma: Matrix, omega: Matrix
) -> tuple[float, float]:
    """Frobenius residuals of both rotation equations."""
    t1, t2 = apply_t(ctx, eb, gamma, omega)
    p1, p2 = apply_phi(eb, gamma, omega)
    return frobenius(t1 - eb.e21 + p1), frobenius(t2 - eb.e12.conj().T + p2)


def solve_rotations(
    ctx: BlockContext,
    eb: PerturbationBlocks,
    rep: GapReport,
    *,
    tol_fp: float = 1e-13,
    max_iters: int = 200,
    tol_solve: float = 1e-9,
    force: bool = False,
    gap_tol: float | None = None,
) -> RotationPair:
    """
    Successive substitution x_{k+1} = T^{-1}((E21, E12^H) - phi(x_k)) from x_0 = 0.

    T^{-1} is applied by a coupled Sylvester solver prepared once for
    A = G1+E11, B = G2+E22.

    Args:
        ctx: Block context of G.
        eb: Perturbation blocks.
        rep: Gap report; its pairing norm drives the stopping rule.
        tol_fp: Stop when the step norm < tol_fp * (1 + iterate norm).
        max_iters: Iteration limit.
        tol_solve: Residuals must be <= tol_solve * (||E21||_F + ||E12||_F + 1).
        force: Run even when the small-perturbation condition fails; the
            result is then marked not guaranteed.
        gap_tol: Passed to the coupled solver.

    Raises:
        ConditionNotMetError: condition fails and force is off.
        ConvergenceError: no convergence within max_iters.
        SingularSylvesterError: the coupled system is singular.
    """
    if not rep.condition_met:
        if not force:
            raise ConditionNotMetError(
                f"small-perturbation condition fails (kappa2={rep.kappa2:.6g}, delta_under={rep.delta_under:.6g})",
                kappa2=rep.kappa2,
                delta_under=rep.delta_under,
            )
        logger.warning(f"forcing rotation solve with kappa2={rep.kappa2:.6g}; results are not guaranteed")

    solver = CoupledSylvesterSolver(ctx.g1 + eb.e11, ctx.g2 + eb.e22, gap_tol)
    gamma = np.zeros_like(eb.e21)
    omega = np.zeros((ctx.n - ctx.r, ctx.r), dtype=np.complex128)
    e12h = eb.e12.conj().T

    step = math.inf
    for it in range(1, max_iters + 1):
        p1, p2 = apply_phi(eb, gamma, omega)
        sol = solver.solve(eb.e21 - p1, e12h - p2)
        step = pair_norm(sol.x - gamma, sol.y - omega, rep.pairing)
        gamma, omega = sol.x, sol.y
        size = pair_norm(gamma, omega, rep.pairing)
        logger.debug(f"fixed point iter {it}: step={step:.3e} norm={size:.6g}")
        if step < tol_fp * (1.0 + size):
            break
    else:
        raise ConvergenceError(
            f"rotation fixed point did not converge in {max_iters} iterations (last step {step:.3e})",
            iterations=max_iters,
            final_step_norm=step,
        )

    res_1, res_2 = rotation_residuals(ctx, eb, gamma, omega)
    limit = tol_solve * (frobenius(eb.e21) + frobenius(eb.e12) + 1.0)
    if max(res_1, res_2) > limit:
        raise CertificateError(
            f"rotation residuals {res_1:.3e}, {res_2:.3e} exceed {limit:.3e}",
            residual_1=res_1,
            residual_2=res_2,
        )
    logger.info(f"rotations converged in {it} iteration(s), ||(Gamma, Omega)||={size:.6g}")
    return RotationPair(
        gamma=gamma,
        omega=omega,
        iterations=it,
        final_step_norm=step,
        residual_1=res_1,
        residual_2=res_2,
        guaranteed=rep.condition_met,
    )
