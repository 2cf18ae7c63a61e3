"""Properties of the rotation solve, the corrected decomposition and the corollaries."""

import math

import numpy as np

from svdperturb.errors import OracleAbstained
from svdperturb.linalg import NormKind, PairingNorm, frobenius, interlace_check, pair_norm, singular_values, ui_norm
from svdperturb.oracle import (
    InstanceSpec,
    Interleaved,
    IntervalSeparated,
    calibrated_instance,
    complex_gaussian,
    direct_rotation_oracle,
    gen_instance,
)
from svdperturb.perturb import (
    BlockContext,
    PerturbationBlocks,
    apply_phi,
    apply_t,
    build_corrected,
    corollary_suite,
    gap_quantities,
    improved_sigma_bounds,
    solve_rotations,
)
from svdperturb.verify.base import Property, PropertyOutcome

MAX_R = 5
KAPPA_TARGET = 0.2
MAX_ITERATIONS = 50
ORACLE_TOL = 1e-8
INTERLACE_SHAPES = ((5, 4), (7, 7))


def random_spec(
    rng: np.random.Generator,
    max_dim: int,
    separated: bool | None = None,
    *,
    max_r: int = MAX_R,
    gap_anchor: float = 1.0,
) -> InstanceSpec:
    """Dimensions, gap profile and perturbation scale for one trial."""
    m, n = (int(k) for k in rng.integers(2, max(max_dim, 2) + 1, size=2))
    r = int(rng.integers(1, min(max_r, min(m, n) - 1) + 1))
    if separated is None:
        separated = bool(rng.integers(2))
    if separated:
        profile = IntervalSeparated(float(rng.uniform(0.2, 1.0)))
    else:
        # gap shrinks with the number of extended values
        profile = Interleaved(0.1 / (min(m, n) - r + abs(m - n)))
    return InstanceSpec(
        m=m, n=n, r=r, gap_profile=profile,
        pert_scale=float(rng.uniform(0.01, 0.5)),
        seed=int(rng.integers(2**62)),
        gap_anchor=gap_anchor,
    )


class InstanceProperty(Property):
    """A property drawn on generated instances; carries the generator settings."""

    def __init__(self, *, kappa_target: float = KAPPA_TARGET, gap_anchor: float = 1.0, max_r: int = MAX_R):
        self.kappa_target = kappa_target
        self.gap_anchor = gap_anchor
        self.max_r = max_r

    def spec(self, rng: np.random.Generator, max_dim: int, separated: bool | None = None) -> InstanceSpec:
        return random_spec(rng, max_dim, separated, max_r=self.max_r, gap_anchor=self.gap_anchor)

    def calibrated(
        self, rng: np.random.Generator, max_dim: int, separated: bool | None = None
    ) -> tuple[BlockContext, PerturbationBlocks, np.ndarray]:
        """An instance scaled so the small-perturbation condition holds in every pairing norm."""
        _, ctx, eb, e = calibrated_instance(self.spec(rng, max_dim, separated), self.kappa_target)
        return ctx, eb, e


class RotationPipeline(InstanceProperty):
    name = "perturb.rotation_pipeline"
    suite = "perturb"
    description = "rotations converge, obey their bound and re-block-diagonalize G + E"

    def check(self, seed: int, max_dim: int) -> PropertyOutcome:
        rng = self.rng(seed)
        ctx, eb, _ = self.calibrated(rng, max_dim)
        pairing = PairingNorm.all()[int(rng.integers(6))]
        rep = gap_quantities(ctx, eb, pairing)
        if not rep.condition_met:
            return PropertyOutcome(passed=False, slack=-math.inf, detail=f"calibrated instance misses condition ({pairing.label})")
        rot = solve_rotations(ctx, eb, rep)
        cd = build_corrected(ctx, eb, rot, rep)
        outcome = PropertyOutcome.from_certificates(cd.certificates)
        if rot.iterations > MAX_ITERATIONS:
            return PropertyOutcome(passed=False, slack=outcome.slack, detail=f"{rot.iterations} iterations")
        return outcome


class RotationOracle(InstanceProperty):
    name = "perturb.rotation_oracle"
    suite = "perturb"
    description = "fixed-point rotations match a full SVD of G + E on small separated perturbations"

    def check(self, seed: int, max_dim: int) -> PropertyOutcome:
        rng = self.rng(seed)
        spec = self.spec(rng, max_dim, separated=True)
        spec = InstanceSpec(
            m=spec.m, n=spec.n, r=spec.r, gap_profile=IntervalSeparated(1.0),
            pert_scale=1e-3, seed=spec.seed,
        )
        ctx, eb, e = gen_instance(spec)
        rep = gap_quantities(ctx, eb, PairingNorm.block_diag(NormKind.FROBENIUS))
        if rep.epsilon > 1e-2 * rep.delta_under:
            return PropertyOutcome.skip("perturbation above 1e-2 * delta_under")
        rot = solve_rotations(ctx, eb, rep)
        try:
            gamma, omega = direct_rotation_oracle(ctx, e)
        except OracleAbstained as err:
            return PropertyOutcome.skip(err.message)
        diff = math.hypot(frobenius(rot.gamma - gamma), frobenius(rot.omega - omega))
        return PropertyOutcome.from_margins({"oracle": ORACLE_TOL - diff})


class CorollaryDominance(InstanceProperty):
    name = "perturb.corollary_dominance"
    suite = "perturb"
    description = "Stewart's condition implies the Frobenius (i) condition with a smaller bound"

    def check(self, seed: int, max_dim: int) -> PropertyOutcome:
        rng = self.rng(seed)
        ctx, eb, _ = self.calibrated(rng, max_dim)
        report = corollary_suite(ctx, eb)
        margins = {"chain": report.eps_hat**2 - report.epsilon * report.eps_hat * (1.0 - 1e-12)}
        if report.stewart_condition_met:
            f1 = report.new_bounds["frobenius.i"]
            margins["frobenius.i.condition"] = 0.0 if f1.condition_met else -1.0
            margins["frobenius.i.bound"] = report.stewart_bound * (1.0 + 1e-12) - f1.bound
        return PropertyOutcome.from_margins(margins)


class ImprovedSigma(InstanceProperty):
    name = "perturb.improved_sigma"
    suite = "perturb"
    description = "sigma_min(G1_check) lies in the interval-separated enclosure"

    def check(self, seed: int, max_dim: int) -> PropertyOutcome:
        rng = self.rng(seed)
        ctx, eb, _ = self.calibrated(rng, max_dim, separated=True)
        rep = gap_quantities(ctx, eb, PairingNorm.block_diag(NormKind.SPECTRAL))
        rot = solve_rotations(ctx, eb, rep)
        cd = build_corrected(ctx, eb, rot, rep)
        res = improved_sigma_bounds(ctx, eb, cd, rep)
        return PropertyOutcome.from_margins({
            "lower": res.measured - (res.lower - res.slack),
            "upper": res.upper + res.slack - res.measured,
            "top_r": 0.0 if res.top_r_match else -1.0,
            "per_index": 0.0 if res.per_index_ok else -1.0,
            "separated": 0.0 if res.separated else -1.0,
        })


def _margin(diff: float, ok: bool) -> float:
    """ok decides pass or fail; diff only sizes the margin."""
    return max(diff, 0.0) if ok else min(diff, -math.ulp(0.0))


class Interlacing(Property):
    name = "perturb.interlacing"
    suite = "perturb"
    description = "singular values of leading and trailing submatrices interlace at every split"
    min_dim = 1

    def check(self, seed: int, max_dim: int) -> PropertyOutcome:
        rng = self.rng(seed)
        m, n = INTERLACE_SHAPES[int(rng.integers(len(INTERLACE_SHAPES)))]
        b = complex_gaussian(rng, m, n)
        margins = {}
        for r in range(1, min(m, n)):
            rep = interlace_check(b, r)
            leading = max(rep.min_leading_cols, rep.min_leading_rows)
            trailing = min(rep.max_trailing_cols, rep.max_trailing_rows)
            margins[f"r{r}.upper"] = _margin(rep.sigma_r - leading, rep.upper_ok)
            margins[f"r{r}.leading"] = _margin(leading - rep.min_leading_block, rep.leading_ok)
            margins[f"r{r}.lower"] = _margin(trailing - rep.sigma_r1, rep.lower_ok)
        return PropertyOutcome.from_margins(margins)


class Mirsky(InstanceProperty):
    name = "perturb.mirsky"
    suite = "perturb"
    description = "max |sigma_i(G + E) - sigma_i(G)| <= ||E||_2"

    def check(self, seed: int, max_dim: int) -> PropertyOutcome:
        rng = self.rng(seed)
        ctx, _, e = gen_instance(self.spec(rng, max_dim))
        shift = float(np.max(np.abs(singular_values(ctx.g + e) - singular_values(ctx.g))))
        bound = ui_norm(e, NormKind.SPECTRAL)
        return PropertyOutcome.from_margins({"mirsky": bound * (1.0 + 1e-10) + 1e-12 - shift})


def _random_pair(rng: np.random.Generator, ctx: BlockContext) -> tuple[np.ndarray, np.ndarray]:
    scale = float(rng.uniform(0.01, 1.0))
    gamma = scale * complex_gaussian(rng, ctx.m - ctx.r, ctx.r)
    omega = scale * complex_gaussian(rng, ctx.n - ctx.r, ctx.r)
    return gamma, omega


class OperatorLowerBound(InstanceProperty):
    name = "perturb.operator_lower_bound"
    suite = "perturb"
    description = "||T(Gamma, Omega)|| >= (delta_under / c) ||(Gamma, Omega)|| in every pairing norm"

    def check(self, seed: int, max_dim: int) -> PropertyOutcome:
        rng = self.rng(seed)
        ctx, eb, _ = self.calibrated(rng, max_dim)
        gamma, omega = _random_pair(rng, ctx)
        margins = {}
        for pn in PairingNorm.all():
            rep = gap_quantities(ctx, eb, pn)
            if rep.delta_under <= 0:
                continue
            lhs = pair_norm(*apply_t(ctx, eb, gamma, omega), pn)
            rhs = rep.delta_under / rep.c * pair_norm(gamma, omega, pn)
            margins[pn.label] = lhs - rhs + 1e-9 * max(1.0, lhs)
        return PropertyOutcome.from_margins(margins)


def _phi_margins(eb: PerturbationBlocks, x: tuple, y: tuple, pn: PairingNorm, eps: float) -> dict[str, float]:
    nx, ny = pair_norm(*x, pn), pair_norm(*y, pn)
    phi_x = apply_phi(eb, *x)
    phi_y = apply_phi(eb, *y)
    size = pair_norm(*phi_x, pn)
    lip = pair_norm(phi_x[0] - phi_y[0], phi_x[1] - phi_y[1], pn)
    dist = pair_norm(x[0] - y[0], x[1] - y[1], pn)
    tol = 1e-12 * (1.0 + eps * max(nx, ny) ** 2)
    return {
        f"{pn.label}.size": eps * nx * nx - size + tol,
        f"{pn.label}.lipschitz": 2 * eps * max(nx, ny) * dist - lip + tol,
    }


class PhiContract(InstanceProperty):
    name = "perturb.phi_contract"
    suite = "perturb"
    description = "||phi(x)|| <= eps ||x||^2 and phi is 2 eps max(||x||, ||y||)-Lipschitz"

    def check(self, seed: int, max_dim: int) -> PropertyOutcome:
        rng = self.rng(seed)
        ctx, _, _ = gen_instance(self.spec(rng, max_dim))
        r = ctx.r
        eb = PerturbationBlocks(
            e11=complex_gaussian(rng, r, r),
            e12=complex_gaussian(rng, r, ctx.n - r),
            e21=complex_gaussian(rng, ctx.m - r, r),
            e22=complex_gaussian(rng, ctx.m - r, ctx.n - r),
        )
        eps = max(ui_norm(eb.e12, NormKind.SPECTRAL), ui_norm(eb.e21, NormKind.SPECTRAL))
        x = _random_pair(rng, ctx)
        y = _random_pair(rng, ctx)
        margins = {}
        for pn in PairingNorm.all():
            margins.update(_phi_margins(eb, x, y, pn, eps))
        return PropertyOutcome.from_margins(margins)


PERTURB_PROPERTIES: list[type[Property]] = [
    RotationPipeline,
    RotationOracle,
    CorollaryDominance,
    ImprovedSigma,
    Interlacing,
    Mirsky,
    OperatorLowerBound,
    PhiContract,
]
