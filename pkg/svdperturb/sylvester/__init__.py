"""Hermitian and coupled Sylvester solvers with bound certificates."""

from svdperturb.sylvester.coupled import (
    CoupledSylvesterSolver,
    coupled_bounds,
    coupled_gap,
    coupled_operator,
    equality_witness,
    jordan_wielandt,
    pad_to_square,
    separation_width,
    solve_coupled,
)
from svdperturb.sylvester.herm import (
    HermSylvesterSolver,
    herm_equality_witness,
    herm_sylvester_bounds,
    solve_herm_sylvester,
)
from svdperturb.sylvester.types import (
    BoundCertificate,
    CoupledSylvesterProblem,
    HermSylvesterProblem,
    Regime,
    SolutionPair,
    certify,
)

__all__ = [
    "HermSylvesterProblem",
    "CoupledSylvesterProblem",
    "SolutionPair",
    "BoundCertificate",
    "Regime",
    "certify",
    "HermSylvesterSolver",
    "solve_herm_sylvester",
    "herm_sylvester_bounds",
    "herm_equality_witness",
    "CoupledSylvesterSolver",
    "solve_coupled",
    "pad_to_square",
    "coupled_bounds",
    "coupled_gap",
    "coupled_operator",
    "separation_width",
    "equality_witness",
    "jordan_wielandt",
]
