"""Corrected unitaries, their blocks and the singular value enclosures that follow."""

import math

import numpy as np
from loguru import logger

from svdperturb.errors import CertificateError, ConditionNotMetError, SeparationError
from svdperturb.linalg import (
    Matrix,
    NormKind,
    PairingNorm,
    inv_sqrt_gram,
    multiset_close,
    pair_norm,
    singular_values,
    sqrt_gram,
    ui_norm,
)
from svdperturb.linalg.norms import frobenius
from svdperturb.perturb.context import check_unitary, perturbed, sigma_extremes
from svdperturb.perturb.rotations import rotation_bound
from svdperturb.perturb.types import (
    BlockContext,
    CorrectedDecomposition,
    GapReport,
    ImprovedSigmaBounds,
    PerturbationBlocks,
    RotationPair,
    SeparationMode,
)
from svdperturb.sylvester import BoundCertificate, Regime, certify


def footnote_distance(gamma: float) -> float:
    """||U1_check - U1||_2 as a function of gamma = ||Gamma||_2."""
    root = math.sqrt(1.0 + gamma * gamma)
    return math.sqrt(2.0) * gamma / math.sqrt(root * (root + 1.0))


def footnote_distance_alt(gamma: float) -> float:
    """Equivalent form sqrt(2 (1 - 1/sqrt(1 + gamma^2))); loses accuracy for small gamma."""
    return math.sqrt(2.0 * (1.0 - 1.0 / math.sqrt(1.0 + gamma * gamma)))


def corrected_unitary(u: Matrix, rot: Matrix) -> Matrix:
    """U [[I, -R^H], [R, I]] blkdiag((I + R^H R)^{-1/2}, (I + R R^H)^{-1/2})."""
    k, r = rot.shape
    skew = np.block([
        [np.eye(r, dtype=np.complex128), -rot.conj().T],
        [rot, np.eye(k, dtype=np.complex128)],
    ])
    scale = np.zeros((r + k, r + k), dtype=np.complex128)
    scale[:r, :r] = inv_sqrt_gram(rot)
    scale[r:, r:] = inv_sqrt_gram(rot.conj().T)
    return u @ skew @ scale


def _relative(a: Matrix, b: Matrix, scale: float) -> float:
    return frobenius(a - b) / scale


def _improved_interval(ctx: BlockContext, eb: PerturbationBlocks, rep: GapReport) -> tuple[float, float, float]:
    """(lower, upper, refinement term) of the interval-separated enclosure of sigma_min(G1_check)."""
    smin_g1, _ = sigma_extremes(ctx)
    d, eps = rep.delta_under, rep.epsilon
    denom = d + math.sqrt(d * d + 4 * eps * eps)
    term = 2 * eps * eps / denom if denom > 0 else 0.0
    return smin_g1 - rep.e11_norm, smin_g1 + rep.e11_norm + term, term


def improvement_applies(rep: GapReport) -> bool:
    return rep.separation is SeparationMode.INTERVAL_SEPARATED and rep.c == 1.0 and rep.condition_met


def build_corrected(
    ctx: BlockContext,
    eb: PerturbationBlocks,
    rot: RotationPair,
    rep: GapReport,
    *,
    agreement_tol: float = 1e-10,
    spectrum_tol: float = 1e-9,
    tol_solve: float = 1e-9,
    distance_tol: float = 1e-12,
    bound_rel_slack: float = 1e-10,
    tol_unitary: float | None = None,
) -> CorrectedDecomposition:
    """
    Build U_check, V_check and the blocks G1_check, G2_check.

    Each block is computed directly as U_check_i^H G_tilde V_check_i and by
    both closed forms; all must agree. The spectrum of G_tilde must be the
    multiset union of the two block spectra.

    Raises:
        CertificateError: unitarity, annihilation, closed-form or spectrum check fails.
    """
    r = ctx.r
    gamma, omega = rot.gamma, rot.omega
    u_check = corrected_unitary(ctx.u, gamma)
    v_check = corrected_unitary(ctx.v, omega)
    check_unitary(u_check, "u_check", tol_unitary)
    check_unitary(v_check, "v_check", tol_unitary)

    g_tilde = perturbed(ctx, eb)
    scale = frobenius(g_tilde) or 1.0
    full = u_check.conj().T @ g_tilde @ v_check
    g1_check, g2_check = full[:r, :r], full[r:, r:]
    offdiag = max(frobenius(full[r:, :r]), frobenius(full[:r, r:]))
    if offdiag > tol_solve * scale:
        raise CertificateError(
            f"off-diagonal residual {offdiag:.3e} exceeds {tol_solve * scale:.3e}",
            offdiag_residual=offdiag,
        )

    a = ctx.g1 + eb.e11
    b = ctx.g2 + eb.e22
    gh, oh = gamma.conj().T, omega.conj().T
    forms = {
        "g1.1": sqrt_gram(gamma) @ (a + eb.e12 @ omega) @ inv_sqrt_gram(omega),
        "g1.2": inv_sqrt_gram(gamma) @ (a + gh @ eb.e21) @ sqrt_gram(omega),
        "g2.1": sqrt_gram(gh) @ (b - eb.e21 @ oh) @ inv_sqrt_gram(oh),
        "g2.2": inv_sqrt_gram(gh) @ (b - gamma @ eb.e12) @ sqrt_gram(oh),
    }
    deviations = {
        key: _relative(form, g1_check if key.startswith("g1") else g2_check, scale)
        for key, form in forms.items()
    }
    worst = max(deviations.values())
    if worst > agreement_tol:
        raise CertificateError(
            f"closed-form blocks disagree with direct blocks: {deviations}",
            deviations=deviations,
        )

    sigma_tilde = singular_values(g_tilde)
    s1 = singular_values(g1_check)
    s2 = singular_values(g2_check)
    same, spec_dev = multiset_close(sigma_tilde, np.concatenate([s1, s2]), spectrum_tol * (1.0 + sigma_tilde[0]))
    if not same:
        raise CertificateError(
            f"sv(G_tilde) is not sv(G1_check) + sv(G2_check): deviation {spec_dev:.3e}",
            spectrum_deviation=spec_dev,
        )

    smin_g1, smax_g2 = sigma_extremes(ctx)
    if rep.delta_under > 0:
        drift = 2 * rep.c * rep.epsilon * rep.g_norm / rep.delta_under
    else:
        drift = math.inf
    lower = smin_g1 - rep.e11_norm - drift
    upper = math.inf
    if improvement_applies(rep):
        _, upper, _ = _improved_interval(ctx, eb, rep)
    g2_upper = smax_g2 + rep.e22_norm + drift

    certs: list[BoundCertificate] = []
    for kind in NormKind:
        pn = PairingNorm.block_diag(kind)
        for name, diff, rnorm in (
            ("u1", u_check[:, :r] - ctx.u1, ui_norm(gamma, kind)),
            ("v1", v_check[:, :r] - ctx.v1, ui_norm(omega, kind)),
        ):
            certs.append(certify(
                f"distance.{name}.{kind.value}", Regime.ROTATION, pn, 1.0, 1.0,
                rnorm, ui_norm(diff, kind), bound_rel_slack, distance_tol,
            ))

    u1_dist = ui_norm(u_check[:, :r] - ctx.u1, NormKind.SPECTRAL)
    v1_dist = ui_norm(v_check[:, :r] - ctx.v1, NormKind.SPECTRAL)
    spectral = PairingNorm.block_diag(NormKind.SPECTRAL)
    for name, dist, rmat in (("u1", u1_dist, gamma), ("v1", v1_dist, omega)):
        exact = footnote_distance(ui_norm(rmat, NormKind.SPECTRAL))
        certs.append(BoundCertificate(
            id=f"distance.{name}.footnote",
            regime=Regime.ROTATION,
            pairing=spectral,
            delta=1.0,
            constant=1.0,
            bound_value=exact,
            measured_value=dist,
            satisfied=abs(dist - exact) <= distance_tol,
        ))

    rotation_norm = pair_norm(gamma, omega, rep.pairing)
    bound = rotation_bound(rep) if rep.condition_met else math.inf
    certs.append(BoundCertificate(
        id=f"rotation.{rep.pairing.label}",
        regime=Regime.ROTATION,
        pairing=rep.pairing,
        delta=rep.delta_under,
        constant=rep.c,
        bound_value=bound,
        measured_value=rotation_norm,
        satisfied=rotation_norm <= bound * (1.0 + bound_rel_slack),
        condition_met=rep.condition_met,
    ))
    sigma_min_g1 = float(s1[-1])
    sigma_max_g2 = float(s2[0]) if s2.size else 0.0
    certs.append(BoundCertificate(
        id="sigma.g1_check.drop",
        regime=Regime.ROTATION,
        pairing=spectral,
        delta=rep.delta_under,
        constant=rep.c,
        bound_value=rep.e11_norm + drift,
        measured_value=smin_g1 - sigma_min_g1,
        satisfied=sigma_min_g1 >= lower - spectrum_tol,
        condition_met=rep.condition_met,
    ))
    certs.append(BoundCertificate(
        id="sigma.g2_check.rise",
        regime=Regime.ROTATION,
        pairing=spectral,
        delta=rep.delta_under,
        constant=rep.c,
        bound_value=rep.e22_norm + drift,
        measured_value=sigma_max_g2 - smax_g2,
        satisfied=sigma_max_g2 <= g2_upper + spectrum_tol,
        condition_met=rep.condition_met,
    ))

    failed = [c.id for c in certs if c.condition_met and not c.satisfied]
    if failed:
        logger.warning(f"corrected decomposition certificates failed: {failed}")
    logger.info(f"corrected decomposition: offdiag={offdiag:.3e}, closed-form dev={worst:.3e}, spectrum dev={spec_dev:.3e}")

    return CorrectedDecomposition(
        u_check=u_check,
        v_check=v_check,
        g1_check=g1_check,
        g2_check=g2_check,
        offdiag_residual=offdiag,
        rotation_norm=rotation_norm,
        bound_pair_norm=bound,
        sigma_min_g1=sigma_min_g1,
        sigma_min_g1_bounds=(lower, upper),
        sigma_max_g2=sigma_max_g2,
        sigma_max_g2_upper=g2_upper,
        u1_dist=u1_dist,
        v1_dist=v1_dist,
        sigma_tilde=sigma_tilde,
        closed_form_deviation=worst,
        spectrum_deviation=spec_dev,
        guaranteed=rot.guaranteed and rep.condition_met,
        certificates=certs,
    )


def improved_sigma_bounds(
    ctx: BlockContext,
    eb: PerturbationBlocks,
    cd: CorrectedDecomposition,
    rep: GapReport,
    *,
    spectrum_tol: float = 1e-9,
) -> ImprovedSigmaBounds:
    """
    Enclose sigma_min(G1_check) under interval separation with c = 1.

    Also checks that the top r singular values of G_tilde are those of
    G1_check and that |sigma_i(G1_check) - sigma_i(G1 + E11)| stays within
    the refinement term for every i <= r.

    Raises:
        SeparationError: sigma_min(G1) <= sigma_max(G2).
        ConditionNotMetError: the condition with c = 1 fails.
    """
    if rep.separation is not SeparationMode.INTERVAL_SEPARATED:
        raise SeparationError("improved bounds need sigma_min(G1) > sigma_max(G2)")
    if not (rep.condition_met and rep.c == 1.0):
        raise ConditionNotMetError(
            f"improved bounds need the small-perturbation condition with c=1 (kappa2={rep.kappa2:.6g})",
            kappa2=rep.kappa2,
        )

    lower, upper, term = _improved_interval(ctx, eb, rep)
    s1 = singular_values(cd.g1_check)
    s2 = singular_values(cd.g2_check)
    slack = spectrum_tol * (1.0 + float(cd.sigma_tilde[0]))
    measured = float(s1[-1])
    separated = s2.size == 0 or measured > float(s2[0])
    top_r_match, _ = multiset_close(cd.sigma_tilde[: ctx.r], s1, slack)
    base = singular_values(ctx.g1 + eb.e11)
    per_index_ok = bool(np.all(np.abs(s1 - base) <= term + slack))
    result = ImprovedSigmaBounds(
        lower=lower,
        upper=upper,
        measured=measured,
        term=term,
        top_r_match=top_r_match,
        per_index_ok=per_index_ok,
        separated=separated,
        slack=slack,
    )
    if not result.ok:
        logger.warning(f"improved sigma bounds failed: {result}")
    return result
