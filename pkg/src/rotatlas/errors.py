"""Exception hierarchy for rotatlas.

Validation failures raise subclasses of RotatlasError so callers (and the
CLI) can separate bad input (exit 1) from numerical-check failures (exit 2)
and I/O problems (exit 3).
"""


class RotatlasError(Exception):
    """Base class for all library errors."""


class DegreeError(RotatlasError):
    """Operation requires a degree-one lifting."""


class NotALiftError(RotatlasError):
    """Sampled values are not consistent with any integer degree."""


class LevelOutOfRange(RotatlasError):
    """Water-function level outside [0, span]."""


class NotMonotone(RotatlasError):
    """Lifting expected to be non-decreasing has a decreasing node pair."""


class TargetOutsideRotationSet(RotatlasError):
    """Requested rotation number lies outside the rotation interval."""


class NoConvergence(RotatlasError):
    """Bisection exhausted its iteration budget.

    Carries the best level found and the residual it achieved.
    """

    def __init__(self, message, best_alpha=None, residual=None):
        super().__init__(message)
        self.best_alpha = best_alpha
        self.residual = residual


class PeriodicOrbitDetected(RotatlasError):
    """Orbit closed up on itself; the rotation number is rational."""


class EmptyResult(RotatlasError):
    """A filtering step removed every point (resolution too coarse)."""


class OrderViolation(RotatlasError):
    """Orbit order and rotation order disagree beyond tolerance."""


class FiberEscape(RotatlasError):
    """Fiber iteration left the declared domain K."""


class UndefinedDerivative(RotatlasError):
    """Fiber map has no derivative registered."""


class SemiconjugacyDefectTooLarge(RotatlasError):
    """Measured semiconjugacy defect exceeds the configured bound."""


class EmptyBin(RotatlasError):
    """Attractor lookup hit a theta bin with no samples."""


class DuplicateTarget(RotatlasError):
    """Atlas target list contains a repeated rotation number."""


class UnknownId(RotatlasError):
    """No built-in system with the requested identifier."""


class ConfigError(RotatlasError):
    """Configuration file failed schema validation.

    ``paths`` lists the JSON paths of the offending entries.
    """

    def __init__(self, message, paths=()):
        super().__init__(message)
        self.paths = list(paths)
