"""Closed-loop harness: synthetic scenes, pinhole rendering, and the step loop.

pinhole_project is the forward camera model, written directly from first
principles (per-eye optical centers offset half a baseline along h, pixel
offsets proportional to focal length over depth). It deliberately shares no
code with the triangulation module so the two can check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .arm import ArmParams, ArmState, apply_command, forward_kinematics
from .control import CameraCommand, ControlParams, PlaneReport, plan_command
from .errors import BehindCamera, NoObjectsVisible
from .geometry import CameraPose, StereoRig, triangulate
from .matching import Detection, Eye, ObjectLabel, pair_detections

DEFAULT_WORKSPACE = ((100.0, 600.0), (-100.0, 300.0), (-300.0, 300.0))

# Where random scenes are sampled by default: a tabletop-task volume framed
# by the default arm state's initial view, small enough that the arm can
# reach the viewing distances the zoom rule asks for. A reactive controller
# can only center what it can see, so scenes start inside the view frustum.
TASK_VOLUME = ((420.0, 580.0), (-60.0, 100.0), (-140.0, 140.0))


@dataclass(frozen=True)
class Workspace:
    """Axis-aligned bounds (mm) that scene objects must respect."""

    x: tuple[float, float] = DEFAULT_WORKSPACE[0]
    y: tuple[float, float] = DEFAULT_WORKSPACE[1]
    z: tuple[float, float] = DEFAULT_WORKSPACE[2]

    def contains(self, position) -> bool:
        px, py, pz = position
        return (self.x[0] <= px <= self.x[1]
                and self.y[0] <= py <= self.y[1]
                and self.z[0] <= pz <= self.z[1])


@dataclass(frozen=True)
class SceneObject:
    label: ObjectLabel
    position: tuple[float, float, float]
    bbox_halfsize_px: float = 15.0


class LoopStep(NamedTuple):
    """One closed-loop iteration: the state acted from, its command and report."""

    state: ArmState
    command: CameraCommand
    report: PlaneReport


@dataclass(frozen=True)
class LoopResult:
    steps: int
    converged: bool
    trajectory: tuple[LoopStep, ...]


def pinhole_project(point, pose: CameraPose, rig: StereoRig):
    """Forward-project a 3D point into both eyes; ((lx, ly), (rx, ry)) pixels.

    The eyes sit half a baseline to either side of the rig midline along h;
    both share the optical axis direction n and row coordinate.
    """
    rel = np.asarray(point, dtype=float) - pose.position
    d = float(np.dot(pose.normal, rel))
    if d <= 0:
        raise BehindCamera(f"point depth {d} along the optical axis")
    h = float(np.dot(pose.horizontal, rel))
    v = float(np.dot(pose.vertical, rel))
    half_s = rig.baseline_mm / 2.0
    lx = rig.center_x + rig.focal_px * (h + half_s) / d
    rx = rig.center_x + rig.focal_px * (h - half_s) / d
    y = rig.center_y - rig.focal_px * v / d
    return (lx, y), (rx, y)


def in_view(center: tuple[float, float], rig: StereoRig, margin_px: float = 0.0) -> bool:
    """True if a pixel center (plus margin on every side) fits in the image."""
    x, y = center
    return (margin_px <= x <= rig.image_width - margin_px
            and margin_px <= y <= rig.image_height - margin_px)


def render_scene(
    scene: list[SceneObject],
    pose: CameraPose,
    rig: StereoRig,
    frame_id: str = "sim",
    jitter_px: float = 0.0,
    rng: np.random.Generator | None = None,
) -> tuple[list[Detection], list[Detection]]:
    """Turn scene objects into per-eye detections with score 1.0.

    Each visible object becomes an axis-aligned square bbox centered on its
    projection. An eye omits the object when the full box does not fit in the
    image (so surviving centers match the projection exactly) or when the
    object is behind the camera. Optional uniform pixel jitter (+/- jitter_px
    per coordinate, from the supplied generator) models detector noise.
    """
    left: list[Detection] = []
    right: list[Detection] = []
    for obj in scene:
        try:
            centers = pinhole_project(obj.position, pose, rig)
        except BehindCamera:
            continue
        if jitter_px > 0.0:
            if rng is None:
                raise ValueError("jitter requires a random generator")
            noise = rng.uniform(-jitter_px, jitter_px, size=4)
            centers = (
                (centers[0][0] + noise[0], centers[0][1] + noise[1]),
                (centers[1][0] + noise[2], centers[1][1] + noise[3]),
            )
        half = obj.bbox_halfsize_px
        for eye, out, (cx, cy) in ((Eye.LEFT, left, centers[0]), (Eye.RIGHT, right, centers[1])):
            if in_view((cx, cy), rig, margin_px=half):
                out.append(Detection(
                    frame_id, eye, obj.label,
                    (cx - half, cy - half, cx + half, cy + half), 1.0,
                ))
    return left, right


def run_closed_loop(
    scene: list[SceneObject],
    initial: ArmState,
    max_steps: int = 200,
    rig: StereoRig = StereoRig(),
    control_params: ControlParams = ControlParams(),
    arm_params: ArmParams = ArmParams(),
    pairing_tol_px: float = 20.0,
    jitter_px: float = 0.0,
    seed: int = 0,
) -> LoopResult:
    """Run perceive-plan-act until the command is all-none or steps run out.

    Each step: forward kinematics -> render -> pair -> triangulate -> plan;
    the planned command is recorded, then applied unless it is all-none.
    Fully deterministic for fixed inputs (jitter uses a seeded generator).
    """
    if not scene:
        raise NoObjectsVisible("scene is empty: nothing to view", step=0)
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    rng = np.random.default_rng(seed) if jitter_px > 0.0 else None
    state = initial
    trajectory: list[LoopStep] = []
    converged = False
    for step in range(1, max_steps + 1):
        pose = forward_kinematics(state, arm_params)
        left, right = render_scene(scene, pose, rig, f"step{step:04d}", jitter_px, rng)
        pairs, _ = pair_detections(left, right, pairing_tol_px)
        if not pairs:
            raise NoObjectsVisible(f"no paired observations at step {step}", step=step)
        estimates = [triangulate(p, pose, rig) for p in pairs]
        command, report = plan_command(estimates, pose, rig, control_params)
        trajectory.append(LoopStep(state, command, report))
        if command.is_none:
            converged = True
            break
        state, _ = apply_command(state, command, arm_params)
    return LoopResult(steps=len(trajectory), converged=converged, trajectory=tuple(trajectory))


_SCENE_LABELS = (ObjectLabel.LEFT_GRASPER, ObjectLabel.RIGHT_GRASPER,
                 ObjectLabel.RED_BLOCK, ObjectLabel.GREEN_BLOCK)


def sample_scene(
    rng: np.random.Generator,
    n_objects: int,
    volume: tuple[tuple[float, float], ...] = TASK_VOLUME,
    bbox_halfsize_px: float = 15.0,
) -> list[SceneObject]:
    """Draw a random static scene inside the given volume."""
    objects = []
    for i in range(n_objects):
        position = tuple(float(rng.uniform(lo, hi)) for lo, hi in volume)
        objects.append(SceneObject(_SCENE_LABELS[i % len(_SCENE_LABELS)], position,
                                   bbox_halfsize_px))
    return objects
