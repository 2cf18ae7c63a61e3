"""Utility functions for svdperturb."""

import hashlib
import math
from pathlib import Path


def ensure_dir(path: Path) -> Path:
    """Ensure a directory exists, creating it if necessary."""
    path.mkdir(parents=True, exist_ok=True)
    return path


def file_digest(path: Path) -> str:
    """sha256 of the file contents, prefixed with the algorithm name."""
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            h.update(chunk)
    return f"sha256:{h.hexdigest()}"


def finite_or_none(x: float) -> float | None:
    """JSON has no inf or nan; those become null."""
    x = float(x)
    return x if math.isfinite(x) else None


def ms_since(start: float, now: float) -> float:
    """Elapsed milliseconds between two perf_counter readings, rounded to microseconds."""
    return round((now - start) * 1000.0, 3)
