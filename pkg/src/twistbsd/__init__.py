"""Exact L-functions and BSD invariants of y^2 = x^3 + t^q - t over F_r(t)."""

from .errors import (CapExceeded, IdentityFailure, NotRational, TwistError,
                     ValidationError)
from .orbit_space import TwistParams

__all__ = ["CapExceeded", "IdentityFailure", "NotRational", "TwistError",
           "TwistParams", "ValidationError"]
__version__ = "0.1.0"
