"""Inverse scattering solver for the mKdV equation on the half-line."""

from .core import (BoundaryTriplet, FunctionSpec, ProblemConfig, RegionId,
                   ScatteringData, SolutionGrid, classify_region, soliton_config)
from .errors import HalflineError

__version__ = "0.1.0"

__all__ = ["BoundaryTriplet", "FunctionSpec", "ProblemConfig", "RegionId",
           "ScatteringData", "SolutionGrid", "classify_region", "soliton_config",
           "HalflineError", "__version__"]
