"""tautcheck - tautological relations and degree ranges on strata of differentials."""

__version__ = "0.1.0"
