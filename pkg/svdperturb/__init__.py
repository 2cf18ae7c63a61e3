"""
svdperturb - perturbation bounds for singular subspaces
"""

from loguru import logger

__version__ = "0.1.0"
__logo__ = "σ"

# Library code stays silent unless the caller opts in (the CLI does).
logger.disable("svdperturb")
