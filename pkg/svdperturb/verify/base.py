"""Base class for seeded properties."""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any

import numpy as np

from svdperturb.sylvester import BoundCertificate


@dataclass
class PropertyOutcome:
    """
    Result of one trial.

    ``slack`` is the smallest bound-minus-measured margin seen in the trial;
    negative means a violation, +inf means nothing was measured.
    """

    passed: bool
    slack: float = math.inf
    skipped: bool = False
    detail: str = ""

    @classmethod
    def skip(cls, detail: str) -> "PropertyOutcome":
        return cls(passed=True, skipped=True, detail=detail)

    @classmethod
    def from_margins(cls, margins: dict[str, float]) -> "PropertyOutcome":
        """Pass iff every margin is >= 0; detail names the failing keys."""
        failing = sorted(k for k, v in margins.items() if not v >= 0)
        slack = min(margins.values(), default=math.inf)
        return cls(passed=not failing, slack=slack, detail=", ".join(failing))

    @classmethod
    def from_certificates(cls, certs: list[BoundCertificate]) -> "PropertyOutcome":
        """
        Margins of the certificates whose condition holds.

        A satisfied certificate contributes max(bound - measured, 0) since
        equality-type certificates pass within a tolerance either side.
        """
        margins = {}
        for c in certs:
            if not c.condition_met:
                continue
            gap = c.bound_value - c.measured_value
            margins[c.id] = max(gap, 0.0) if c.satisfied else min(-abs(gap), -math.ulp(0.0))
        return cls.from_margins(margins)


class Property(ABC):
    """
    A checkable statement, evaluated on one seeded random instance per trial.

    Subclasses draw everything they need from ``rng(seed)`` so that a trial
    is reproducible from its seed alone.
    """

    min_dim: int = 2

    @property
    @abstractmethod
    def name(self) -> str:
        """Dotted property name, e.g. ``coupled.bounds``."""

    @property
    @abstractmethod
    def suite(self) -> str:
        """Suite the property belongs to."""

    @property
    @abstractmethod
    def description(self) -> str:
        """One-line statement of what is checked."""

    @abstractmethod
    def check(self, seed: int, max_dim: int) -> PropertyOutcome:
        """Run one trial."""

    def rng(self, seed: int) -> np.random.Generator:
        """Per-property stream: the same seed gives different draws in different properties."""
        return np.random.default_rng([seed, sum(map(ord, self.name))])

    def validate_dim(self, max_dim: int) -> list[str]:
        """Errors for a max_dim this property cannot work with (empty if fine)."""
        if max_dim < self.min_dim:
            return [f"{self.name} needs max_dim >= {self.min_dim}, got {max_dim}"]
        return []

    def to_schema(self) -> dict[str, Any]:
        return {"name": self.name, "suite": self.suite, "description": self.description, "min_dim": self.min_dim}
