"""_summary_
Exception hierarchy for the physarum simulator. Every error raised on purpose by
the library derives from PhysarumError so the command-line runner can map it to
an exit status with a one-line message.
"""

from typing import Optional


class PhysarumError(Exception):
    """Base class of all simulator errors."""


class SceneValidationError(PhysarumError):
    """
    A scene document was rejected.
    Attributes:
        path (str): Dotted/indexed path of the offending field, e.g. 'sources[2].x'.
    """

    def __init__(self, message: str, path: Optional[str] = None):
        self.path = path or '<root>'
        super().__init__(f'{self.path}: {message}')


class SchemaViolation(SceneValidationError):
    """A field is missing, unknown or has the wrong type."""


class SemanticViolation(SceneValidationError):
    """The document is well-formed but describes an impossible scene."""


class StabilityViolation(SemanticViolation):
    """A diffusion coefficient breaks the explicit-scheme stability bound D*dt <= 0.25."""


class DimensionMismatch(PhysarumError):
    """Two rasters that must share a grid do not."""


class OutOfBounds(PhysarumError):
    """A cell lies outside its grid."""


class InvariantViolation(PhysarumError):
    """Internal consistency check failed; signals an engine bug."""


class GeometryError(PhysarumError):
    """An oracle received input outside its domain."""


class NoPathError(PhysarumError):
    """The goal of a maze is unreachable from its start."""


class NonSpanningGraph(PhysarumError):
    """A simulated graph does not reach every site it is compared against."""


class UndefinedMetric(PhysarumError):
    """A metric has no qualifying observations."""
