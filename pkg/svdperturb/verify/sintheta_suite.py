"""Properties of canonical angles and the sin-theta certificates."""

import math

import numpy as np

from svdperturb.errors import SeparationError
from svdperturb.linalg import NormKind, PairingNorm, svd
from svdperturb.oracle import complex_gaussian, random_unitary
from svdperturb.perturb import build_corrected, gap_quantities, solve_rotations
from svdperturb.sintheta import SinThetaInput, SubspacePair, canonical_angles, sin_theta_certificate
from svdperturb.verify.base import Property, PropertyOutcome
from svdperturb.verify.perturb_suite import InstanceProperty

SINE_TOL = 1e-10
ANGLE_TOL = 1e-12


class SinThetaCertificates(InstanceProperty):
    name = "sintheta.certificates"
    suite = "sintheta"
    description = "generalized sin-theta bounds hold in every norm and sines match sv(U2^H U1_t)"

    def check(self, seed: int, max_dim: int) -> PropertyOutcome:
        rng = self.rng(seed)
        separated = bool(rng.integers(2))
        ctx, eb, e = self.calibrated(rng, max_dim, separated=separated)
        r = ctx.r
        if separated:
            u_t, _, v_t = svd(ctx.g + e)
            u1_t, v1_t = u_t[:, :r], v_t[:, :r]
        else:
            # top-r vectors of G + E would not track G1 when the spectra interleave
            rep = gap_quantities(ctx, eb, PairingNorm.block_diag(NormKind.FROBENIUS))
            cd = build_corrected(ctx, eb, solve_rotations(ctx, eb, rep), rep)
            u1_t, v1_t = cd.u_check[:, :r], cd.v_check[:, :r]
        if rng.integers(2):
            g1_t = u1_t.conj().T @ (ctx.g + e) @ v1_t
        else:
            g1_t = u1_t.conj().T @ ctx.g @ v1_t
        inp = SinThetaInput(g=ctx.g, u1_t=u1_t, v1_t=v1_t, g1_t=g1_t, u2=ctx.u2, v2=ctx.v2)

        margins = {}
        for kind in NormKind:
            try:
                cert = sin_theta_certificate(inp, kind)
            except SeparationError as err:
                return PropertyOutcome.skip(err.message)
            gap = cert.bound - cert.lhs
            margins[kind.value] = max(gap, 0.0) if cert.satisfied else min(gap, -math.ulp(0.0))
            margins[f"{kind.value}.sines"] = SINE_TOL - cert.sine_deviation
        return PropertyOutcome.from_margins(margins)


class AnglePermutationInvariance(Property):
    name = "sintheta.angle_invariance"
    suite = "sintheta"
    description = "canonical angles are unchanged by reordering the columns of either basis"
    min_dim = 2

    def check(self, seed: int, max_dim: int) -> PropertyOutcome:
        rng = self.rng(seed)
        m = int(rng.integers(2, max(max_dim, 2) + 1))
        r = int(rng.integers(1, m))
        a = random_unitary(rng, m)[:, :r]
        # tilt size spans 1e-6 to 1 so both angle routes are exercised
        tilt = svd(a + float(rng.uniform(1e-6, 1.0)) * complex_gaussian(rng, m, r))[0][:, :r]
        base = canonical_angles(SubspacePair(a, tilt))
        shuffled = canonical_angles(SubspacePair(a[:, rng.permutation(r)], tilt[:, rng.permutation(r)]))
        return PropertyOutcome.from_margins({"permutation": ANGLE_TOL - float(np.max(np.abs(base - shuffled)))})


SINTHETA_PROPERTIES: list[type[Property]] = [
    SinThetaCertificates,
    AnglePermutationInvariance,
]
