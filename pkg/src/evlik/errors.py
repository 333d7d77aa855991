"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "EvlikError",
    "DomainError",
    "DegenerateSampleError",
    "InputError",
    "ConvergenceError",
    "SingularLikelihoodError",
    "HessianError",
    "OneSidedIntervalError",
]


class EvlikError(Exception):
    """Base class for everything raised on purpose by this package."""


class DomainError(EvlikError, ValueError):
    """Invalid parameter or argument value (wrong sign, non-finite, out of range)."""


class DegenerateSampleError(DomainError):
    """All sample values are equal, so no scale is identifiable."""


class InputError(EvlikError, ValueError):
    """Malformed input file. Carries a line number when one makes sense."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConvergenceError(EvlikError, RuntimeError):
    """An iterative search failed to reach its target tolerance."""


class SingularLikelihoodError(ConvergenceError):
    """The continuous likelihood is unbounded (Weibull-type density ridge).

    The offending parameter point and the last likelihood value seen are
    attached so callers can report or switch to the exact likelihood.
    """

    def __init__(self, theta, loglik):
        self.theta = tuple(float(t) for t in theta)
        self.loglik = float(loglik)
        super().__init__(
            "continuous likelihood diverges toward the density singularity "
            f"near theta={self.theta}; use the exact likelihood"
        )


class HessianError(ConvergenceError):
    """Observed information is not usable (non-finite or not positive definite)."""

    def __init__(self, message: str, eigenvalues=None):
        self.eigenvalues = None if eigenvalues is None else list(eigenvalues)
        if self.eigenvalues is not None:
            message = f"{message} (eigenvalues: {self.eigenvalues})"
        super().__init__(message)


class OneSidedIntervalError(ConvergenceError):
    """The relative profile likelihood never fell below the cut on one side.

    The interval is effectively unbounded at this level within the searched
    bracket. `side` is "lower" or "upper", `bound` is the last abscissa
    probed, and `r_at_bound` the relative profile likelihood there.
    """

    def __init__(self, side: str, bound: float, r_at_bound: float):
        self.side = side
        self.bound = float(bound)
        self.r_at_bound = float(r_at_bound)
        super().__init__(
            f"profile likelihood stays above the cut on the {side} side "
            f"(R={self.r_at_bound:.4g} at t={self.bound:.6g})"
        )
