"""Configuration for svdperturb."""

from svdperturb.config.loader import get_config_path, load_config, save_config
from svdperturb.config.schema import (
    CertificateConfig,
    Config,
    FixedPointConfig,
    ReportConfig,
    VerifyConfig,
)

__all__ = [
    "Config",
    "FixedPointConfig",
    "CertificateConfig",
    "VerifyConfig",
    "ReportConfig",
    "load_config",
    "save_config",
    "get_config_path",
]
