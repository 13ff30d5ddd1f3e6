"""Shared exception types."""


class ResilError(Exception):
    """Base class for all errors raised by this package."""


class ModelError(ResilError):
    """Invalid system definition: bad shapes, degenerate bounds, bad indices."""


class LpError(ResilError):
    """Malformed linear program (dimension mismatch, crossed bounds)."""


class CapacityError(ResilError):
    """A computation would exceed a configured size cap (2^p vertices, grid size)."""


class UnsupportedLossError(ResilError):
    """Operation requires a single lost column (p = 1) but got p != 1."""


class NonReachError(ResilError):
    """A simulated trajectory never crossed its target within the allowed horizon."""
