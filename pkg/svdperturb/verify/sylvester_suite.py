"""Properties of the Hermitian and coupled Sylvester solvers."""

import numpy as np

from svdperturb.errors import SingularSylvesterError
from svdperturb.linalg import NormKind, PairingNorm, frobenius, ui_norm
from svdperturb.oracle import (
    complex_gaussian,
    hermitian_with_eigenvalues,
    matrix_with_singular_values,
    vectorized_coupled_solve,
    vectorized_herm_solve,
)
from svdperturb.sylvester import (
    CoupledSylvesterProblem,
    HermSylvesterProblem,
    coupled_bounds,
    equality_witness,
    herm_sylvester_bounds,
    separation_width,
    solve_coupled,
    solve_herm_sylvester,
)
from svdperturb.verify.base import Property, PropertyOutcome

MAX_COUPLED_DIM = 6
MIN_GAP = 0.1
AGREEMENT_TOL = 1e-9
WITNESS_TOL = 1e-10


def random_coupled_pair(
    rng: np.random.Generator, max_dim: int, separated: bool, attempts: int = 100
) -> tuple[np.ndarray, np.ndarray] | None:
    """
    A (r x r) and B (s x t) with coupled gap >= MIN_GAP, dims <= min(6, max_dim).

    Separated pairs draw sv(A) from [1.1, 3] and sv(B) from [0, 1].
    Returns None when rejection sampling runs out of attempts.
    """
    top = min(MAX_COUPLED_DIM, max_dim)
    r, s, t = (int(k) for k in rng.integers(1, top + 1, size=3))
    k = min(s, t)
    for _ in range(attempts):
        if separated:
            sa = rng.uniform(1.0 + MIN_GAP, 3.0, size=r)
            sb = rng.uniform(0.0, 1.0, size=k)
        else:
            sa = rng.uniform(0.0, 3.0, size=r)
            sb = rng.uniform(0.0, 3.0, size=k)
        ext = np.concatenate([sb, np.zeros(abs(s - t))])
        if np.min(np.abs(sa[:, None] - ext[None, :])) >= MIN_GAP:
            return matrix_with_singular_values(rng, r, r, sa), matrix_with_singular_values(rng, s, t, sb)
    return None


def random_coupled_problem(rng: np.random.Generator, max_dim: int, separated: bool) -> CoupledSylvesterProblem | None:
    pair = random_coupled_pair(rng, max_dim, separated)
    if pair is None:
        return None
    a, b = pair
    r = a.shape[0]
    s, t = b.shape
    return CoupledSylvesterProblem(a=a, b=b, s_rhs=complex_gaussian(rng, s, r), t_rhs=complex_gaussian(rng, t, r))


class CoupledOracleAgreement(Property):
    name = "coupled.oracle_agreement"
    suite = "sylvester"
    description = "solve_coupled matches the vectorized real system to 1e-9 relative"
    min_dim = 1

    def check(self, seed: int, max_dim: int) -> PropertyOutcome:
        rng = self.rng(seed)
        p = random_coupled_problem(rng, max_dim, separated=bool(rng.integers(2)))
        if p is None:
            return PropertyOutcome.skip("no coupled pair with the requested gap")
        sol = solve_coupled(p)
        ref = vectorized_coupled_solve(p)
        scale = frobenius(ref.x) + frobenius(ref.y)
        err = (frobenius(sol.x - ref.x) + frobenius(sol.y - ref.y)) / max(scale, 1e-300)
        return PropertyOutcome.from_margins({"relative_error": AGREEMENT_TOL - float(err)})


class CoupledBounds(Property):
    name = "coupled.bounds"
    suite = "sylvester"
    description = "every emitted coupled Sylvester certificate is satisfied"
    min_dim = 1

    def check(self, seed: int, max_dim: int) -> PropertyOutcome:
        rng = self.rng(seed)
        p = random_coupled_problem(rng, max_dim, separated=bool(rng.integers(2)))
        if p is None:
            return PropertyOutcome.skip("no coupled pair with the requested gap")
        return PropertyOutcome.from_certificates(coupled_bounds(p, solve_coupled(p)))


class CoupledWitness(Property):
    name = "coupled.witness"
    suite = "sylvester"
    description = "the equality witness attains sigma_min(A) - sigma_max(B) in every pairing norm"
    min_dim = 1

    def check(self, seed: int, max_dim: int) -> PropertyOutcome:
        rng = self.rng(seed)
        pair = random_coupled_pair(rng, max_dim, separated=True)
        if pair is None:
            return PropertyOutcome.skip("no separated pair")
        a, b = pair
        width = separation_width(a, b)
        tol = WITNESS_TOL * max(1.0, ui_norm(a, NormKind.SPECTRAL))
        margins = {}
        for pn in PairingNorm.all():
            _, _, ratio = equality_witness(a, b, pn)
            margins[pn.label] = tol - abs(ratio - width)
        return PropertyOutcome.from_margins(margins)


class HermSylvesterBounds(Property):
    name = "herm.bounds"
    suite = "sylvester"
    description = "Hermitian Sylvester solve matches the Kronecker oracle and satisfies its certificates"
    min_dim = 1

    def check(self, seed: int, max_dim: int) -> PropertyOutcome:
        rng = self.rng(seed)
        top = min(MAX_COUPLED_DIM, max_dim)
        r, s = (int(k) for k in rng.integers(1, top + 1, size=2))
        separated = bool(rng.integers(2))
        if separated:
            mu = rng.uniform(-1.0, 1.0, size=r)
            nu = rng.uniform(1.0 + MIN_GAP, 3.0, size=s) * rng.choice([-1.0, 1.0])
        else:
            mu = rng.uniform(-3.0, 3.0, size=r)
            nu = rng.uniform(-3.0, 3.0, size=s)
            if np.min(np.abs(mu[:, None] - nu[None, :])) < MIN_GAP:
                return PropertyOutcome.skip("spectra too close")
        p = HermSylvesterProblem(
            a=hermitian_with_eigenvalues(rng, mu),
            b=hermitian_with_eigenvalues(rng, nu),
            s_rhs=complex_gaussian(rng, s, r),
            interval_separated=separated,
        )
        try:
            x = solve_herm_sylvester(p)
        except SingularSylvesterError as e:
            return PropertyOutcome(passed=False, slack=-np.inf, detail=e.message)
        ref = vectorized_herm_solve(p)
        err = frobenius(x - ref) / max(frobenius(ref), 1e-300)
        outcome = PropertyOutcome.from_certificates(herm_sylvester_bounds(p, x))
        agreement = PropertyOutcome.from_margins({"oracle": AGREEMENT_TOL - float(err)})
        return PropertyOutcome(
            passed=outcome.passed and agreement.passed,
            slack=min(outcome.slack, agreement.slack),
            detail=", ".join(d for d in (outcome.detail, agreement.detail) if d),
        )


SYLVESTER_PROPERTIES: list[type[Property]] = [
    CoupledOracleAgreement,
    CoupledBounds,
    CoupledWitness,
    HermSylvesterBounds,
]
