"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operands live in different ambient spaces or have an invalid rank."""


class ArityError(ValueError):
    """A point family has the wrong number of members."""


class FeasibilityError(ValueError):
    """A full enumeration was requested outside the supported size grid."""


class DegenerateParameterError(ValueError):
    """A perturbation parameter collapses the construction (e.g. c = 0)."""


class RecognitionError(ValueError):
    """A point family is not a symplectic base.

    The ``reason`` attribute carries a short machine-readable tag:
    ``dependent``, ``no partner`` or ``partner not unique``.
    """

    def __init__(self, reason, detail=""):
        self.reason = reason
        super().__init__(f"not a symplectic base: {reason}" + (f" ({detail})" if detail else ""))


class SpaceMismatchError(ValueError):
    """Source and target spaces disagree where equal (n, p) is required."""


class MapCheckError(ValueError):
    """A point map or Grassmannian map fails a structural requirement.

    Carries the offending object in ``witness`` when one exists.
    """

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class DescentError(RuntimeError):
    """One descent level of the reconstruction failed.

    ``level`` is the rank being descended from, ``witness`` the element
    whose image family is not a star.
    """

    def __init__(self, message, level=None, witness=None):
        self.level = level
        self.witness = witness
        super().__init__(message)


class ReconstructionError(RuntimeError):
    """Reconstruction failed; ``certificate`` records the failing check."""

    def __init__(self, message, certificate=None):
        self.certificate = certificate
        super().__init__(message)


class SchemaError(ValueError):
    """A JSON document does not match the expected schema."""
