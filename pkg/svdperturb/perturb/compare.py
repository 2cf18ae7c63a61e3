"""Classical versus new perturbation conditions on one instance."""

import math

import numpy as np
from loguru import logger

from svdperturb.linalg import NormKind, PairingNorm, ui_norm
from svdperturb.perturb.context import gap_quantities
from svdperturb.perturb.rotations import contraction_factor
from svdperturb.perturb.types import (
    BlockContext,
    ComparisonReport,
    CorollaryBound,
    PerturbationBlocks,
    SeparationMode,
)


def _evaluate(delta_under: float, kappa_of: float, scale: float) -> CorollaryBound:
    """
    Condition delta_under > 0 and kappa < 1/4; bound factor(kappa) * scale / delta_under.

    ``kappa_of`` is kappa * delta_under^2, so delta_under <= 0 maps to kappa = inf.
    """
    if delta_under <= 0:
        return CorollaryBound(condition_met=False, kappa=math.inf, bound=math.inf)
    kappa = kappa_of / delta_under**2
    met = kappa < 0.25
    bound = contraction_factor(kappa) * scale / delta_under if met else math.inf
    return CorollaryBound(condition_met=met, kappa=kappa, bound=bound)


def corollary_suite(ctx: BlockContext, eb: PerturbationBlocks) -> ComparisonReport:
    """
    Evaluate Stewart's Frobenius theorem, its naive spectral-norm version
    and the Frobenius and spectral corollaries (i), (ii) on (ctx, eb).

    Items (ii) only apply when sigma_min(G1) > sigma_max(G2).
    """
    rep = gap_quantities(ctx, eb, PairingNorm.block_diag(NormKind.FROBENIUS))
    d = rep.delta_under
    eps = rep.epsilon
    e12_f = ui_norm(eb.e12, NormKind.FROBENIUS)
    e21_f = ui_norm(eb.e21, NormKind.FROBENIUS)
    e12_2 = ui_norm(eb.e12, NormKind.SPECTRAL)
    e21_2 = ui_norm(eb.e21, NormKind.SPECTRAL)

    eps_hat = float(np.hypot(e12_f, e21_f))
    width = math.sqrt(min(ctx.m - ctx.r, ctx.n - ctx.r, ctx.r))
    eps_tilde = width * float(np.hypot(e12_2, e21_2))
    separated = rep.separation is SeparationMode.INTERVAL_SEPARATED

    stewart = _evaluate(d, eps_hat**2, eps_hat)
    naive = _evaluate(d, eps_tilde**2, eps_tilde)

    half_pi = math.pi / 2
    new_bounds = {
        "frobenius.i": _evaluate(d, eps * eps_hat, eps_hat),
        "spectral.i": _evaluate(d, half_pi**2 * eps**2, half_pi * eps),
    }
    if separated:
        fmax = max(e12_f, e21_f)
        new_bounds["frobenius.ii"] = _evaluate(d, eps * fmax, fmax)
        new_bounds["spectral.ii"] = _evaluate(d, eps**2, eps)
    else:
        new_bounds["frobenius.ii"] = CorollaryBound.not_applicable()
        new_bounds["spectral.ii"] = CorollaryBound.not_applicable()

    report = ComparisonReport(
        eps_hat=eps_hat,
        eps_tilde=eps_tilde,
        epsilon=eps,
        delta_under=d,
        stewart=stewart,
        naive=naive,
        new_bounds=new_bounds,
    )
    logger.debug(
        f"corollary suite: stewart={stewart.condition_met} naive={naive.condition_met} "
        + " ".join(f"{k}={v.condition_met}" for k, v in new_bounds.items())
    )
    return report
