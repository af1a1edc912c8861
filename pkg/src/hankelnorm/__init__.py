"""Hankel operator norms on weighted Bergman spaces of simply connected domains."""

from ._kernels import BACKEND
from .errors import ConvergenceError
from .series import PowerSeries

__version__ = "0.1.0"

__all__ = ["BACKEND", "ConvergenceError", "PowerSeries", "__version__"]
