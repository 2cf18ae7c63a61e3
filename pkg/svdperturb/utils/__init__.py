"""Utility functions for svdperturb."""

from svdperturb.utils.helpers import ensure_dir, file_digest, finite_or_none, ms_since

__all__ = ["ensure_dir", "file_digest", "finite_or_none", "ms_since"]
