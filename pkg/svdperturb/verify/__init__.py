"""Seeded property suites behind ``svdperturb verify``."""

from svdperturb.verify.base import Property, PropertyOutcome
from svdperturb.verify.perturb_suite import KAPPA_TARGET, MAX_R, PERTURB_PROPERTIES, InstanceProperty
from svdperturb.verify.registry import SUITES, PropertyRegistry, PropertyTally
from svdperturb.verify.sintheta_suite import SINTHETA_PROPERTIES
from svdperturb.verify.sylvester_suite import SYLVESTER_PROPERTIES


def default_registry(
    *, kappa_target: float = KAPPA_TARGET, gap_anchor: float = 1.0, max_r: int = MAX_R
) -> PropertyRegistry:
    """A registry holding every built-in property; instance settings go to generated-instance properties."""
    registry = PropertyRegistry()
    for cls in (*SYLVESTER_PROPERTIES, *PERTURB_PROPERTIES, *SINTHETA_PROPERTIES):
        if issubclass(cls, InstanceProperty):
            registry.register(cls(kappa_target=kappa_target, gap_anchor=gap_anchor, max_r=max_r))
        else:
            registry.register(cls())
    return registry


__all__ = [
    "Property",
    "PropertyOutcome",
    "PropertyRegistry",
    "PropertyTally",
    "InstanceProperty",
    "SUITES",
    "default_registry",
]
