"""Exact algebra and numerics for solitary waves of Kawahara-type equations.

The package covers symbolic verification of sech-polynomial ansatz
solutions, explicit solution branches, Petviashvili profile solvers,
spectral stability tests, PF(2) kernel checks and ETDRK4 time evolution.
"""

from importlib import metadata

try:
    __version__ = metadata.version("artifact")
except metadata.PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"

from .grid import Grid, GridProfile, auto_grid
from .models import WaveModel

__all__ = ["Grid", "GridProfile", "WaveModel", "auto_grid", "__version__"]
