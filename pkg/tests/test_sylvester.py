import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from svdperturb.errors import NotHermitianError, SeparationError, ShapeError, SingularSylvesterError
from svdperturb.linalg import NormKind, PairingNorm, eigh
from svdperturb.oracle import (
    complex_gaussian,
    hermitian_with_eigenvalues,
    matrix_with_singular_values,
    vectorized_coupled_solve,
    vectorized_herm_solve,
)
from svdperturb.sylvester import (
    CoupledSylvesterProblem,
    CoupledSylvesterSolver,
    HermSylvesterProblem,
    Regime,
    coupled_bounds,
    coupled_gap,
    equality_witness,
    herm_equality_witness,
    herm_sylvester_bounds,
    jordan_wielandt,
    pad_to_square,
    separation_width,
    solve_coupled,
    solve_herm_sylvester,
)


def test_herm_scalar():
    x = solve_herm_sylvester(HermSylvesterProblem(a=[[2.0]], b=[[0.0]], s_rhs=[[1.0]]))
    assert_allclose(x, [[0.5]])


def test_herm_decoupled():
    p = HermSylvesterProblem(a=np.diag([3.0, 1.0]), b=[[0.0]], s_rhs=[[1.0, 1.0]])
    assert_allclose(solve_herm_sylvester(p), [[1 / 3, 1.0]], atol=1e-15)


def test_herm_matches_kronecker_oracle(rng):
    for _ in range(10):
        p = HermSylvesterProblem(
            a=hermitian_with_eigenvalues(rng, np.array([2.0, 1.0, -1.5, -3.0])),
            b=hermitian_with_eigenvalues(rng, np.array([0.5, -0.5, 3.5])),
            s_rhs=complex_gaussian(rng, 3, 4),
        )
        x = solve_herm_sylvester(p)
        ref = vectorized_herm_solve(p)
        assert np.linalg.norm(x - ref) <= 1e-10 * np.linalg.norm(ref)


def test_herm_singular_reports_nearest_pair():
    with pytest.raises(SingularSylvesterError) as info:
        solve_herm_sylvester(HermSylvesterProblem(a=np.diag([1.0, 2.0]), b=[[2.0]], s_rhs=[[1.0, 1.0]]))
    assert info.value.details["mu"] == pytest.approx(2.0)
    assert info.value.details["nu"] == pytest.approx(2.0)


def test_herm_problem_validation():
    with pytest.raises(NotHermitianError):
        HermSylvesterProblem(a=[[1.0, 1.0], [0.0, 1.0]], b=[[0.0]], s_rhs=[[1.0, 1.0]])
    with pytest.raises(ShapeError):
        HermSylvesterProblem(a=[[1.0]], b=[[0.0]], s_rhs=[[1.0, 1.0]])


def test_herm_bounds_hold(rng):
    for _ in range(10):
        p = HermSylvesterProblem(
            a=hermitian_with_eigenvalues(rng, rng.uniform(-1.0, 1.0, size=3)),
            b=hermitian_with_eigenvalues(rng, rng.uniform(1.5, 3.0, size=2)),
            s_rhs=complex_gaussian(rng, 2, 3),
            interval_separated=True,
        )
        certs = herm_sylvester_bounds(p, solve_herm_sylvester(p))
        ids = {c.id for c in certs}
        assert "herm.frobenius" in ids
        assert {f"herm.separated.{k.value}" for k in NormKind} <= ids
        assert all(c.satisfied for c in certs)


def test_herm_bounds_reject_false_separation_claim():
    p = HermSylvesterProblem(a=np.diag([3.0, -3.0]), b=np.diag([1.0, 4.0]), s_rhs=np.ones((2, 2)), interval_separated=True)
    with pytest.raises(SeparationError):
        herm_sylvester_bounds(p, solve_herm_sylvester(p))


def test_herm_witness_is_extremal(rng):
    a = hermitian_with_eigenvalues(rng, np.array([1.0, 2.0, 5.0]))
    b = hermitian_with_eigenvalues(rng, np.array([2.75, -1.0]))
    x, gap = herm_equality_witness(a, b)
    assert gap == pytest.approx(0.75)
    lhs = x @ a - b @ x
    for kind in ("fro", "nuc", 2):
        assert np.linalg.norm(lhs, kind) == pytest.approx(gap * np.linalg.norm(x, kind), rel=1e-10)


def test_coupled_scalar():
    sol = solve_coupled(CoupledSylvesterProblem(a=[[2.0]], b=[[0.5]], s_rhs=[[1.0]], t_rhs=[[0.0]]))
    assert_allclose(sol.x, [[8 / 15]], atol=1e-14)
    assert_allclose(sol.y, [[2 / 15]], atol=1e-14)
    assert sol.residual_1 < 1e-14
    assert sol.residual_2 < 1e-14


def test_coupled_zero_rhs(rng):
    a = matrix_with_singular_values(rng, 2, 2, np.array([3.0, 2.0]))
    b = matrix_with_singular_values(rng, 3, 2, np.array([1.0, 0.5]))
    sol = solve_coupled(CoupledSylvesterProblem(a=a, b=b, s_rhs=np.zeros((3, 2)), t_rhs=np.zeros((2, 2))))
    assert np.abs(sol.x).max() == 0.0
    assert np.abs(sol.y).max() == 0.0


@pytest.mark.parametrize("s, t", [(2, 2), (3, 2), (2, 3), (1, 4)])
def test_coupled_matches_vectorized_oracle(rng, s, t):
    for _ in range(10):
        r = int(rng.integers(1, 4))
        a = matrix_with_singular_values(rng, r, r, rng.uniform(1.2, 3.0, size=r))
        b = matrix_with_singular_values(rng, s, t, rng.uniform(0.0, 1.0, size=min(s, t)))
        p = CoupledSylvesterProblem(a=a, b=b, s_rhs=complex_gaussian(rng, s, r), t_rhs=complex_gaussian(rng, t, r))
        sol = solve_coupled(p)
        ref = vectorized_coupled_solve(p)
        scale = np.linalg.norm(ref.x) + np.linalg.norm(ref.y)
        assert np.linalg.norm(sol.x - ref.x) + np.linalg.norm(sol.y - ref.y) <= 1e-9 * scale
        assert sol.x.shape == (s, r)
        assert sol.y.shape == (t, r)


def test_coupled_solver_reuses_factorization(rng):
    a = matrix_with_singular_values(rng, 2, 2, np.array([4.0, 3.0]))
    b = matrix_with_singular_values(rng, 3, 3, np.array([1.0, 0.5, 0.1]))
    solver = CoupledSylvesterSolver(a, b)
    assert solver.gap == pytest.approx(2.0)
    for _ in range(3):
        sol = solver.solve(complex_gaussian(rng, 3, 2), complex_gaussian(rng, 3, 2))
        assert max(sol.residual_1, sol.residual_2) < 1e-12


def test_pad_to_square_shapes():
    a = np.eye(2)
    wide = CoupledSylvesterProblem(a=a, b=np.ones((3, 2)), s_rhs=np.ones((3, 2)), t_rhs=np.ones((2, 2)))
    padded = pad_to_square(wide)
    assert padded.b.shape == (3, 3)
    assert_allclose(padded.b[:, 2], 0)
    assert padded.t_rhs.shape == (3, 2)
    assert_allclose(padded.t_rhs[2], 0)

    tall = CoupledSylvesterProblem(a=a, b=np.ones((2, 3)), s_rhs=np.ones((2, 2)), t_rhs=np.ones((3, 2)))
    padded = pad_to_square(tall)
    assert padded.b.shape == (3, 3)
    assert_allclose(padded.b[2], 0)
    assert padded.s_rhs.shape == (3, 2)

    square = CoupledSylvesterProblem(a=a, b=np.ones((2, 2)), s_rhs=np.ones((2, 2)), t_rhs=np.ones((2, 2)))
    assert pad_to_square(square) is square


@pytest.mark.parametrize("s, t", [(3, 2), (2, 3), (4, 1), (1, 4)])
def test_padded_square_solution_truncates_to_the_rectangular_one(rng, s, t):
    q = max(s, t)
    for _ in range(5):
        r = int(rng.integers(1, 4))
        p = CoupledSylvesterProblem(
            a=matrix_with_singular_values(rng, r, r, rng.uniform(1.2, 3.0, size=r)),
            b=matrix_with_singular_values(rng, s, t, rng.uniform(0.0, 1.0, size=min(s, t))),
            s_rhs=complex_gaussian(rng, s, r),
            t_rhs=complex_gaussian(rng, t, r),
        )
        padded = pad_to_square(p)
        assert padded.b.shape == (q, q)
        ref = vectorized_coupled_solve(padded)
        sol = CoupledSylvesterSolver(p.a, p.b).solve(p.s_rhs, p.t_rhs)
        scale = np.linalg.norm(ref.x) + np.linalg.norm(ref.y)
        assert_allclose(sol.x, ref.x[:s], atol=1e-10 * scale)
        assert_allclose(sol.y, ref.y[:t], atol=1e-10 * scale)
        # appended rows of the padded solution vanish
        assert np.linalg.norm(ref.x[s:]) + np.linalg.norm(ref.y[t:]) <= 1e-10 * scale


def test_jordan_wielandt_eigenvalues_are_signed_singular_values(rng):
    a = matrix_with_singular_values(rng, 3, 2, np.array([2.0, 0.5]))
    _, lam = eigh(jordan_wielandt(a))
    assert_allclose(lam, [2.0, 0.5, 0.0, -0.5, -2.0], atol=1e-12)


def test_coupled_gap_uses_extended_zeros():
    # sv_ext(B) = {1, 0}: the zero comes from the 2x1 shape
    assert coupled_gap(np.diag([0.25]), np.array([[1.0], [0.0]])) == pytest.approx(0.25)
    assert separation_width(np.diag([3.0, 2.0]), np.array([[1.0], [0.0]])) == pytest.approx(1.0)


@pytest.mark.parametrize("a, b, ratio", [(np.diag([3.0]), np.diag([1.0]), 2.0), (np.diag([5.0, 4.0]), np.diag([2.0, 1.0]), 3.0)])
def test_equality_witness(a, b, ratio):
    for pn in PairingNorm.all():
        _, _, achieved = equality_witness(a, b, pn)
        assert achieved == pytest.approx(ratio, abs=1e-12)


def test_equality_witness_needs_separation():
    with pytest.raises(SeparationError):
        equality_witness(np.diag([1.0]), np.diag([2.0]))


def test_coupled_bounds(rng):
    for separated in (True, False):
        for _ in range(5):
            if separated:
                sa, sb = rng.uniform(1.5, 3.0, size=2), rng.uniform(0.0, 1.0, size=2)
            else:
                sa, sb = np.array([3.0, 0.4]), np.array([1.5, 0.1])
            p = CoupledSylvesterProblem(
                a=matrix_with_singular_values(rng, 2, 2, sa),
                b=matrix_with_singular_values(rng, 2, 3, sb),
                s_rhs=complex_gaussian(rng, 2, 2),
                t_rhs=complex_gaussian(rng, 3, 2),
            )
            certs = coupled_bounds(p, solve_coupled(p))
            regimes = {c.regime for c in certs}
            assert (Regime.INTERVAL_SEPARATED in regimes) == separated
            assert Regime.GENERAL_UI in regimes
            assert all(c.satisfied for c in certs)
            general = [c for c in certs if c.id.startswith("coupled.general.max")]
            assert all(c.constant == pytest.approx(math.pi) for c in general)


def test_coupled_certificate_ids(rng):
    p = CoupledSylvesterProblem(
        a=matrix_with_singular_values(rng, 2, 2, np.array([3.0, 2.0])),
        b=matrix_with_singular_values(rng, 2, 2, np.array([1.0, 0.5])),
        s_rhs=complex_gaussian(rng, 2, 2),
        t_rhs=complex_gaussian(rng, 2, 2),
    )
    certs = {c.id: c for c in coupled_bounds(p, solve_coupled(p))}
    # frobenius, six separated, six general and the spectral pair
    assert len(certs) == 14
    pair = certs["coupled.general.spectral_pair"]
    loose = certs["coupled.general.max.spectral"]
    assert pair.constant == pytest.approx(math.pi / 2)
    assert pair.measured_value == loose.measured_value
    assert pair.bound_value == pytest.approx(loose.bound_value / 2)
    assert pair.measured_value == pytest.approx(certs["coupled.general.blockdiag.spectral"].measured_value, rel=1e-14)
