"""Exception types shared across the package."""


class DimensionMismatch(ValueError):
    """Operands live in different coordinate dimensions."""


class SingularOperator(ValueError):
    """A matrix that must be invertible is numerically singular."""


class DegeneratePair(ValueError):
    """The vector/functional pairing is too close to zero to normalize."""


class NotIdempotent(ValueError):
    """A matrix fails the idempotent invariant ``P @ P == P``."""


class ExtensionInconsistent(RuntimeError):
    """Summing mapped rank-one pieces did not produce an idempotent.

    Raised by :func:`idemap.transform.extend`; it signals that the map
    being extended does not preserve zero products.
    """


class UnrecognizedAutomorphism(RuntimeError):
    """The trace probe matched neither the identity nor conjugation."""


class NotInduced(RuntimeError):
    """No operator conjugation reproduces the probed map within tolerance."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DegenerateProbe(RuntimeError):
    """A probe image was invalid or unusable during reconstruction."""


class DegenerateImage(ValueError):
    """A ray-pair image collapses a pairing that must stay nonzero."""
