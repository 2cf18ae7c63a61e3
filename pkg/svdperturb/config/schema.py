"""Configuration schema using Pydantic."""

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class FixedPointConfig(BaseModel):
    """Rotation fixed-point iteration."""
    tol_fp: float = Field(default=1e-13, gt=0)  # relative step size that ends the iteration
    max_iters: int = Field(default=200, ge=1)


class CertificateConfig(BaseModel):
    """Tolerances of the runtime checks on a corrected decomposition."""
    contamination_tol: float = 1e-12  # off-diagonal mass allowed in U^H G V, relative to ||G||_F
    agreement_tol: float = 1e-10  # closed-form vs direct blocks
    spectrum_tol: float = 1e-9
    bound_rel_slack: float = 1e-10
    tol_solve: float = 1e-9
    distance_tol: float = 1e-12
    tol_unitary: float | None = None  # None: 1e-10 times the dimension


class VerifyConfig(BaseModel):
    """Defaults for ``svdperturb verify``."""
    trials: int = Field(default=10, ge=0)
    seed: int = Field(default=1, ge=0)
    max_dim: int = Field(default=8, ge=1)
    kappa_target: float = Field(default=0.2, gt=0, lt=0.25)
    gap_anchor: float = Field(default=1.0, ge=0)
    max_r: int = Field(default=5, ge=1)


class ReportConfig(BaseModel):
    """JSON report output."""
    indent: int | None = 2


class Config(BaseSettings):
    """Root configuration for svdperturb."""
    fixed_point: FixedPointConfig = Field(default_factory=FixedPointConfig)
    certificates: CertificateConfig = Field(default_factory=CertificateConfig)
    verify: VerifyConfig = Field(default_factory=VerifyConfig)
    report: ReportConfig = Field(default_factory=ReportConfig)

    model_config = SettingsConfigDict(env_prefix="SVDPERTURB_", env_nested_delimiter="__")
