"""CLI module for svdperturb."""
from svdperturb.cli.commands import app

__all__ = ["app"]
