"""Exception types shared across the toolkit.

Everything raised on purpose derives from CamsteerError so callers (and the
CLI) can distinguish pipeline failures from bugs.
"""


class CamsteerError(Exception):
    """Base class for all toolkit errors."""


class ZeroOrNegativeDisparity(CamsteerError):
    """Left/right pixel pair has disparity <= 0; depth is undefined."""


class GimbalDegenerate(CamsteerError):
    """Camera pitch at or beyond +/-90 deg; the horizontal frame is undefined."""


class NegativeDistance(CamsteerError):
    """A distance that must be >= 0 came in negative."""


class EmptyObjectList(CamsteerError):
    """An operation that needs at least one object estimate got none."""


class ZeroTotalWeight(CamsteerError):
    """Centroid weights sum to zero; the weighted mean is undefined."""


class DegeneratePlane(CamsteerError):
    """View plane distance <= 0; projection onto it is meaningless."""


class MixedFrame(CamsteerError):
    """Detections from different frames were passed to a single-frame op."""


class FrameMismatch(CamsteerError):
    """Ground truth and prediction belong to different frames or eyes."""


class FrameSetMismatch(CamsteerError):
    """Two per-frame command maps do not cover the same frame ids."""


class EmptyMatchSet(CamsteerError):
    """RMS error requested over zero matched pairs."""


class LimitViolation(CamsteerError):
    """Arm state outside the configured joint limits."""


class Unreachable(CamsteerError):
    """No joint solution exists for the requested camera position."""


class MalformedLine(CamsteerError):
    """A protocol line failed to parse.

    Attributes:
        offset: byte offset of the offending token within the line.
    """

    def __init__(self, message: str, offset: int = 0):
        super().__init__(message)
        self.offset = offset


class BehindCamera(CamsteerError):
    """Point lies at or behind the camera plane; it cannot be projected."""


class NoObjectsVisible(CamsteerError):
    """A simulation step produced zero paired observations.

    Attributes:
        step: 1-based index of the failing loop step.
    """

    def __init__(self, message: str, step: int = 0):
        super().__init__(message)
        self.step = step


class RecordError(CamsteerError):
    """A record file line failed to parse.

    Attributes:
        line_no: 1-based line number within the file.
    """

    def __init__(self, message: str, line_no: int = 0):
        super().__init__(message)
        self.line_no = line_no


class ConfigError(CamsteerError):
    """Configuration file is malformed or contains unknown keys."""
