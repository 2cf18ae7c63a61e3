"""Seeded instance generators and independent reference solvers."""

from svdperturb.oracle.instances import (
    GapProfile,
    InstanceSpec,
    Interleaved,
    IntervalSeparated,
    calibrated_instance,
    complex_gaussian,
    demo_instance,
    demo_sintheta,
    gen_instance,
    hermitian_with_eigenvalues,
    matrix_with_singular_values,
    random_unitary,
    separation_exhibit,
    worst_kappa,
)
from svdperturb.oracle.solvers import (
    direct_rotation_oracle,
    rotation_equation_residuals,
    vectorized_coupled_solve,
    vectorized_herm_solve,
)

__all__ = [
    "InstanceSpec",
    "IntervalSeparated",
    "Interleaved",
    "GapProfile",
    "gen_instance",
    "calibrated_instance",
    "random_unitary",
    "matrix_with_singular_values",
    "hermitian_with_eigenvalues",
    "complex_gaussian",
    "separation_exhibit",
    "demo_instance",
    "demo_sintheta",
    "worst_kappa",
    "vectorized_coupled_solve",
    "vectorized_herm_solve",
    "direct_rotation_oracle",
    "rotation_equation_residuals",
]
