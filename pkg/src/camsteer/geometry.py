"""Stereo triangulation, camera frames, and view-plane projection.

Coordinate conventions (arm frame, right-handed):
  +x points into the operating space, +y up, +z right.

A camera pose carries an orthonormal frame:
  n  optical axis (unit vector the camera looks along)
  h  image-right (unit, horizontal: the camera is assumed level, so h has
     no y component)
  v  = h x n, which is world-up at a level pose

Depth is recovered from the horizontal pixel disparity of a rectified
two-eye rig, then offset along h and v from the right eye's pixel position.
All lengths are millimeters, all interface angles degrees, and pixel
coordinates are real-valued (sub-pixel allowed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegeneratePlane,
    EmptyObjectList,
    GimbalDegenerate,
    NegativeDistance,
    ZeroOrNegativeDisparity,
)
from .matching import ObjectLabel, PairedObservation

_UNIT_TOL = 1e-9


@dataclass(frozen=True)
class StereoRig:
    """Intrinsics of the rectified stereo camera."""

    focal_px: float = 700.0
    baseline_mm: float = 63.0
    image_width: int = 1280
    image_height: int = 720
    half_fov_v_deg: float = 30.0

    def __post_init__(self):
        for name in ("focal_px", "baseline_mm", "image_width", "image_height", "half_fov_v_deg"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.image_width % 2 or self.image_height % 2:
            raise ValueError("image_width and image_height must be even")

    @property
    def center_x(self) -> float:
        return self.image_width / 2.0

    @property
    def center_y(self) -> float:
        return self.image_height / 2.0


@dataclass(frozen=True, eq=False)
class CameraPose:
    """Camera position plus orthonormal (normal, horizontal, vertical) frame."""

    position: np.ndarray
    normal: np.ndarray
    horizontal: np.ndarray
    vertical: np.ndarray

    def __post_init__(self):
        for name in ("position", "normal", "horizontal", "vertical"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        n, h, v = self.normal, self.horizontal, self.vertical
        for name, vec in (("normal", n), ("horizontal", h), ("vertical", v)):
            if abs(np.linalg.norm(vec) - 1.0) > _UNIT_TOL:
                raise ValueError(f"{name} is not a unit vector: {vec}")
        for a, b in ((n, h), (n, v), (h, v)):
            if abs(float(np.dot(a, b))) > _UNIT_TOL:
                raise ValueError("pose frame is not orthogonal")
        if np.max(np.abs(v - np.cross(h, n))) > _UNIT_TOL:
            raise ValueError("vertical must equal horizontal x normal")


@dataclass(frozen=True, eq=False)
class ObjectEstimate:
    """One object's triangulated 3D position and camera-relative offsets."""

    label: ObjectLabel
    position: np.ndarray
    depth_mm: float
    horiz_mm: float
    vert_mm: float

    def __post_init__(self):
        object.__setattr__(self, "position", np.asarray(self.position, dtype=float))
        if self.depth_mm <= 0:
            raise ValueError(f"depth must be positive, got {self.depth_mm}")


@dataclass(frozen=True)
class PlaneReport:
    """Objects projected onto the plane through their centroid, normal to n.

    The origin of the (u, v) plane coordinates is the camera's own position
    projected onto the plane, i.e. the center of the camera's view.
    h_visible_mm is the visible half-height of the view at that plane.
    """

    d_cam_mm: float
    h_visible_mm: float
    centroid_uv: tuple[float, float]
    object_uv: tuple[tuple[ObjectLabel, tuple[float, float]], ...]
    mean_radius_mm: float


def _disparity(left_x: float, right_x: float) -> float:
    d = left_x - right_x
    if d <= 0:
        raise ZeroOrNegativeDisparity(
            f"disparity {d} (left x {left_x}, right x {right_x}) must be positive"
        )
    return d


def object_distance(left_x: float, right_x: float, rig: StereoRig) -> float:
    """Depth along the optical axis from horizontal pixel disparity."""
    return rig.focal_px * rig.baseline_mm / _disparity(left_x, right_x)


def horizontal_offset(left_x: float, right_x: float, rig: StereoRig) -> float:
    """Offset along h from the view center.

    The half-baseline term accounts for the right eye sitting half the rig
    baseline away from the rig's midline.
    """
    disp = _disparity(left_x, right_x)
    return rig.baseline_mm * (0.5 + (right_x - rig.center_x) / disp)


def vertical_offset(right_y: float, left_x: float, right_x: float, rig: StereoRig) -> float:
    """Offset along v from the view center; image rows grow downward."""
    disp = _disparity(left_x, right_x)
    return rig.baseline_mm * (rig.center_y - right_y) / disp


def triangulate(obs: PairedObservation, pose: CameraPose, rig: StereoRig) -> ObjectEstimate:
    """Recover an object's 3D position from one paired observation."""
    lx = obs.left_center[0]
    rx, ry = obs.right_center
    d = object_distance(lx, rx, rig)
    dh = horizontal_offset(lx, rx, rig)
    dv = vertical_offset(ry, lx, rx, rig)
    position = pose.position + d * pose.normal + dh * pose.horizontal + dv * pose.vertical
    return ObjectEstimate(obs.label, position, d, dh, dv)


def build_pose(position, yaw_deg: float, pitch_deg: float) -> CameraPose:
    """Pose from position plus yaw (about +y, 0 = +x, 90 = +z) and pitch (up positive)."""
    if abs(pitch_deg) >= 90.0:
        raise GimbalDegenerate(f"pitch {pitch_deg} deg outside (-90, 90)")
    yaw = math.radians(yaw_deg)
    pitch = math.radians(pitch_deg)
    n = np.array(
        [math.cos(pitch) * math.cos(yaw), math.sin(pitch), math.cos(pitch) * math.sin(yaw)]
    )
    h = np.array([-math.sin(yaw), 0.0, math.cos(yaw)])
    v = np.cross(h, n)
    return CameraPose(np.asarray(position, dtype=float), n, h, v)


def plane_distance(pose: CameraPose, centroid) -> float:
    """Signed distance from the camera to the plane through centroid, along n."""
    c = np.asarray(centroid, dtype=float)
    return float(np.dot(pose.normal, c) - np.dot(pose.normal, pose.position))


def visible_half_height(d_cam: float, rig: StereoRig) -> float:
    """Half the vertical extent of the view at distance d_cam."""
    if d_cam < 0:
        raise NegativeDistance(f"d_cam {d_cam} must be >= 0")
    return d_cam * math.tan(math.radians(rig.half_fov_v_deg))


def project_to_plane(
    estimates: list[ObjectEstimate],
    pose: CameraPose,
    rig: StereoRig,
    centroid=None,
) -> PlaneReport:
    """Project object estimates onto the view plane through their centroid.

    The plane passes through the centroid (plain mean of positions unless an
    explicit, e.g. weighted, centroid is supplied) with normal n. Objects are
    projected orthogonally along n; (u, v) are their coordinates along
    (h, v) measured from the view center.
    """
    if not estimates:
        raise EmptyObjectList("cannot project zero objects")
    positions = np.array([est.position for est in estimates])
    c = positions.mean(axis=0) if centroid is None else np.asarray(centroid, dtype=float)

    d_cam = plane_distance(pose, c)
    if d_cam <= 0:
        raise DegeneratePlane(f"plane distance {d_cam} must be positive")

    # Projection along n leaves the (h, v) components untouched, so the
    # in-plane coordinates are plain dot products with the frame vectors.
    rel = positions - pose.position
    us = rel @ pose.horizontal
    vs = rel @ pose.vertical
    cu = float(np.dot(c - pose.position, pose.horizontal))
    cv = float(np.dot(c - pose.position, pose.vertical))

    radii = np.hypot(us - cu, vs - cv)
    object_uv = tuple(
        (est.label, (float(u), float(v))) for est, u, v in zip(estimates, us, vs)
    )
    return PlaneReport(
        d_cam_mm=d_cam,
        h_visible_mm=visible_half_height(d_cam, rig),
        centroid_uv=(cu, cv),
        object_uv=object_uv,
        mean_radius_mm=float(radii.mean()),
    )
