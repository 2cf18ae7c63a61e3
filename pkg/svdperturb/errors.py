"""Exception hierarchy for svdperturb."""

from typing import Any


class SvdPerturbError(Exception):
    """
    Base class for every failure raised by svdperturb.

    Carries a ``details`` dict so the CLI can emit a machine-readable
    error object without parsing messages.
    """

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict[str, Any]:
        """Convert to the CLI error object."""
        return {
            "type": type(self).__name__,
            "message": self.message,
            "details": self.details,
        }


class ShapeError(SvdPerturbError, ValueError):
    """Matrix dimensions do not conform."""


class NotHermitianError(SvdPerturbError, ValueError):
    """A matrix that must be Hermitian is not."""


class ConvergenceError(SvdPerturbError):
    """An iterative method ran out of sweeps or iterations."""


class SingularSylvesterError(SvdPerturbError):
    """The spectra of a Sylvester problem are not separated by the gap tolerance."""


class SeparationError(SvdPerturbError, ValueError):
    """An interval-separation precondition sigma_min(A) > sigma_max(B) does not hold."""


class ContaminationError(SvdPerturbError, ValueError):
    """U^H G V is not block diagonal at the requested split."""


class ConditionNotMetError(SvdPerturbError):
    """The small-perturbation condition required for a guaranteed result fails."""


class CertificateError(SvdPerturbError):
    """A computed quantity disagrees with its closed form or is not unitary."""


class InfeasibleInstanceError(SvdPerturbError, ValueError):
    """An instance specification cannot be realized."""


class OracleAbstained(SvdPerturbError):
    """A brute-force oracle cannot produce a trustworthy answer."""


class MatrixFileError(SvdPerturbError, ValueError):
    """A matrix text file is malformed."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None, **details: Any):
        super().__init__(message, line=line, column=column, **details)
        self.line = line
        self.column = column
