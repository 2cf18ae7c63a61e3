"""
Entry point for running svdperturb as a module: python -m svdperturb
"""

from svdperturb.cli.commands import app

if __name__ == "__main__":
    app()
