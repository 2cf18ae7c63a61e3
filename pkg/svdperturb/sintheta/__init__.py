"""Canonical angles and generalized sin-theta bounds."""

from svdperturb.sintheta.angles import SubspacePair, canonical_angles, cosines, sines
from svdperturb.sintheta.certificate import (
    SinThetaCertificate,
    SinThetaInput,
    residuals,
    sin_theta_certificate,
)

__all__ = [
    "SubspacePair",
    "SinThetaInput",
    "SinThetaCertificate",
    "canonical_angles",
    "cosines",
    "sines",
    "residuals",
    "sin_theta_certificate",
]
