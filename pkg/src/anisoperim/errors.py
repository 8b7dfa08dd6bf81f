"""Exception types shared across the library.

The CLI maps these onto exit codes: spec/input problems exit 2, numeric
failures exit 3, verification violations exit 4.
"""


class AnisoError(Exception):
    """Base class for all library errors."""


class InputError(AnisoError, ValueError):
    """Malformed or out-of-contract input (non-finite data, bad parameters)."""


class SpecError(InputError):
    """Invalid norm/domain JSON specification."""


class SingularityError(AnisoError):
    """Operation evaluated at the origin where the norm is not differentiable."""


class UnsupportedNormError(AnisoError):
    """Operation requires smoothness the norm family does not provide."""


class ValidationFailure(AnisoError):
    """A structural hypothesis check failed; carries the offending sample."""

    def __init__(self, message, sample=None):
        super().__init__(message)
        self.sample = sample


class NumericError(AnisoError, RuntimeError):
    """Quadrature non-convergence, root-finding failure, or search breakdown."""


class InfeasibleError(AnisoError):
    """Requested geometric object does not exist (e.g. arc radius too small)."""


class GeometryError(AnisoError):
    """Geometric contract violated (cut exits the domain, degenerate split)."""


class PreconditionError(AnisoError):
    """Operation precondition not met (e.g. domain not centrosymmetric)."""


class CornerError(AnisoError):
    """Boundary frame or contact condition requested at a non-regular point."""
