"""Rule-based view control: object estimates in, discrete camera command out.

The controller keeps the centroid of the tracked objects near the center of
the view and the object spread near a desired fraction of the visible
half-height:

  zoom  -- compare mean in-plane radius / h_visible against a desired ring
           (center fraction +/- a half-width dead band);
  tilt  -- centroid v beyond +/- recenter_frac * h_visible tips the camera
           up or down;
  pan   -- same rule on centroid u, left or right.

All comparisons are strict, so an exactly-on-threshold centroid commands no
movement; the all-none command is the controller's fixed point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DegeneratePlane, EmptyObjectList, ZeroTotalWeight
from .geometry import CameraPose, ObjectEstimate, PlaneReport, StereoRig, project_to_plane
from .matching import ObjectLabel


class Zoom(str, Enum):
    IN = "in"
    OUT = "out"
    NONE = "none"


class Tilt(str, Enum):
    UP = "up"
    DOWN = "down"
    NONE = "none"


class Pan(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    NONE = "none"


@dataclass(frozen=True)
class CameraCommand:
    """Discrete zoom/tilt/pan triple; direction only, no magnitude."""

    zoom: Zoom = Zoom.NONE
    tilt: Tilt = Tilt.NONE
    pan: Pan = Pan.NONE

    @property
    def is_none(self) -> bool:
        return self.zoom is Zoom.NONE and self.tilt is Tilt.NONE and self.pan is Pan.NONE


HOLD = CameraCommand()


@dataclass(frozen=True)
class ControlParams:
    """Thresholds of the view-keeping rules, as fractions of h_visible.

    weights optionally biases the centroid toward chosen labels; None means
    uniform weighting.
    """

    ring_center_frac: float = 0.5
    ring_halfwidth_frac: float = 0.1
    recenter_frac: float = 0.3
    weights: dict[ObjectLabel, float] | None = field(default=None)

    def __post_init__(self):
        if not 0 < self.ring_center_frac < 1:
            raise ValueError("ring_center_frac must be in (0, 1)")
        if not 0 <= self.ring_halfwidth_frac < self.ring_center_frac:
            raise ValueError("ring_halfwidth_frac must be in [0, ring_center_frac)")
        if not 0 < self.recenter_frac < 1:
            raise ValueError("recenter_frac must be in (0, 1)")
        if self.weights is not None:
            if any(w < 0 for w in self.weights.values()):
                raise ValueError("weights must be non-negative")
            if not any(w > 0 for w in self.weights.values()):
                raise ValueError("at least one weight must be positive")


def centroid(estimates: list[ObjectEstimate], weights: dict[ObjectLabel, float] | None = None):
    """(Weighted) mean position of the estimates; uniform weights by default."""
    if not estimates:
        raise EmptyObjectList("centroid of zero objects")
    positions = np.array([est.position for est in estimates])
    if weights is None:
        return positions.mean(axis=0)
    w = np.array([weights.get(est.label, 1.0) for est in estimates], dtype=float)
    total = w.sum()
    if total <= 0:
        raise ZeroTotalWeight(f"total weight {total} over {len(estimates)} objects")
    if np.all(w == w[0]):  # uniform weights reduce to the plain mean, bit for bit
        return positions.mean(axis=0)
    return (positions * w[:, None]).sum(axis=0) / total


def decide_zoom(mean_radius: float, h_visible: float, params: ControlParams = ControlParams()) -> Zoom:
    """Zoom direction from the spread-to-view ratio against the desired ring."""
    if h_visible <= 0:
        raise DegeneratePlane(f"h_visible {h_visible} must be positive")
    ratio = mean_radius / h_visible
    if ratio > params.ring_center_frac + params.ring_halfwidth_frac:
        return Zoom.OUT
    if ratio < params.ring_center_frac - params.ring_halfwidth_frac:
        return Zoom.IN
    return Zoom.NONE


def decide_pan_tilt(
    centroid_uv: tuple[float, float],
    h_visible: float,
    params: ControlParams = ControlParams(),
) -> tuple[Tilt, Pan]:
    """Tilt and pan from the centroid's offset on the view plane.

    The axes are independent: u only ever drives pan, v only ever drives tilt.
    """
    if h_visible <= 0:
        raise DegeneratePlane(f"h_visible {h_visible} must be positive")
    u, v = centroid_uv
    t = params.recenter_frac * h_visible
    tilt = Tilt.UP if v > t else Tilt.DOWN if v < -t else Tilt.NONE
    pan = Pan.RIGHT if u > t else Pan.LEFT if u < -t else Pan.NONE
    return tilt, pan


def plan_command(
    estimates: list[ObjectEstimate],
    pose: CameraPose,
    rig: StereoRig,
    params: ControlParams = ControlParams(),
) -> tuple[CameraCommand, PlaneReport]:
    """Full rule evaluation: centroid, plane projection, then all three axes.

    Returns the plane report alongside the command for logging/plotting.
    """
    c = centroid(estimates, params.weights)
    report = project_to_plane(estimates, pose, rig, centroid=c)
    zoom = decide_zoom(report.mean_radius_mm, report.h_visible_mm, params)
    tilt, pan = decide_pan_tilt(report.centroid_uv, report.h_visible_mm, params)
    return CameraCommand(zoom=zoom, tilt=tilt, pan=pan), report
