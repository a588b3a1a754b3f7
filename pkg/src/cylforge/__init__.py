"""Exact certificates for cylinders in affine cones over graded domains."""

__version__ = "0.1.0"

from .errors import (ConstructionError, CylforgeError, DerivationError, InconsistencyError,
                     InputError, ResourceCapError)
from .graded import GradedDomain

__all__ = ["GradedDomain", "CylforgeError", "InputError", "DerivationError", "ConstructionError",
           "InconsistencyError", "ResourceCapError", "__version__"]
