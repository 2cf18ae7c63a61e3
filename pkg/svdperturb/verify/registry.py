"""Property registry and the sequential trial runner."""

import math
from dataclasses import dataclass
from typing import Any

from loguru import logger

from svdperturb.errors import SvdPerturbError
from svdperturb.verify.base import Property, PropertyOutcome

SUITES = ("sylvester", "perturb", "sintheta")


@dataclass
class PropertyTally:
    """Per-property counts over a run."""

    name: str
    suite: str
    trials: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    worst_slack: float = math.inf
    first_failure: str = ""

    def add(self, seed: int, outcome: PropertyOutcome) -> None:
        self.trials += 1
        if outcome.skipped:
            self.skipped += 1
            return
        if outcome.passed:
            self.passed += 1
        else:
            self.failed += 1
            if not self.first_failure:
                self.first_failure = f"seed {seed}: {outcome.detail}"
        self.worst_slack = min(self.worst_slack, outcome.slack)


class PropertyRegistry:
    """
    Registry of properties, grouped by suite.

    Allows dynamic registration and seeded execution.
    """

    def __init__(self):
        self._props: dict[str, Property] = {}

    def register(self, prop: Property) -> None:
        self._props[prop.name] = prop

    def unregister(self, name: str) -> None:
        self._props.pop(name, None)

    def get(self, name: str) -> Property | None:
        return self._props.get(name)

    def has(self, name: str) -> bool:
        return name in self._props

    def names(self, suite: str = "all") -> list[str]:
        """
        Property names in registration order.

        Raises:
            KeyError: unknown suite.
        """
        if suite == "all":
            return list(self._props)
        if suite not in SUITES:
            raise KeyError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)} or all")
        return [name for name, prop in self._props.items() if prop.suite == suite]

    def get_definitions(self) -> list[dict[str, Any]]:
        return [prop.to_schema() for prop in self._props.values()]

    def run(self, name: str, seed: int, max_dim: int) -> PropertyOutcome:
        """
        Run one trial of a property.

        Library errors become failed outcomes; anything else propagates.
        """
        prop = self._props.get(name)
        if prop is None:
            return PropertyOutcome(passed=False, slack=-math.inf, detail=f"property {name!r} not found")
        errors = prop.validate_dim(max_dim)
        if errors:
            return PropertyOutcome.skip("; ".join(errors))
        try:
            return prop.check(seed, max_dim)
        except SvdPerturbError as e:
            logger.debug(f"{name} seed={seed} raised {type(e).__name__}: {e.message}")
            return PropertyOutcome(passed=False, slack=-math.inf, detail=f"{type(e).__name__}: {e.message}")

    def run_suite(self, suite: str, trials: int, seed: int, max_dim: int) -> list[PropertyTally]:
        """
        Run every property of a suite for seeds seed, seed+1, ..., in order.

        Raises:
            KeyError: unknown suite.
        """
        names = self.names(suite)
        tallies = {name: PropertyTally(name=name, suite=self._props[name].suite) for name in names}
        for k in range(trials):
            trial_seed = seed + k
            for name in names:
                tallies[name].add(trial_seed, self.run(name, trial_seed, max_dim))
        for t in tallies.values():
            if t.failed:
                logger.warning(f"{t.name}: {t.failed}/{t.trials} failed ({t.first_failure})")
        return list(tallies.values())

    @property
    def property_names(self) -> list[str]:
        return list(self._props.keys())

    def __len__(self) -> int:
        return len(self._props)

    def __contains__(self, name: str) -> bool:
        return name in self._props
