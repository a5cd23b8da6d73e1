"""Kinematic emulation of the two-link camera arm and its line protocol.

Mechanics: a base servo rotates the whole arm about +y (pan); a bottom servo
sets the lower-arm angle theta_bottom in the rotated vertical plane; a top
servo sets the elbow angle theta_top between lower arm and upper arm; a
linear actuator extends the upper arm. A fixed bracket pitches the camera
relative to the upper arm, and a virtual pitch offset models tilt (how the
physical bracket tilts is not part of this model, so tilt stays decoupled
from the position joints).

Angles in degrees, lengths in millimeters. theta_bottom is measured from the
horizontal radial axis (90 = straight up); theta_top is relative to the
lower arm. Camera pitch = theta_bottom + theta_top + bracket + offset and
must stay inside (-90, 90) for the camera frame to exist.

Wire protocol (ASCII lines):
  report:  POS,<tb>,<t1>,<t2>,<ext>,<cx>,<cy>,<cz>\\n   (two decimals each)
  command: MOV <z> <t> <p>\\n  with tokens + - 0
           zoom: +=in -=out | tilt: +=up -=down | pan: +=right -=left | 0=none
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple

import numpy as np

from .control import CameraCommand, Pan, Tilt, Zoom
from .errors import LimitViolation, MalformedLine, Unreachable
from .geometry import CameraPose, build_pose

# Keep commanded pitches a degree inside the gimbal singularity.
_PITCH_SAFETY_DEG = 89.0


@dataclass(frozen=True)
class ArmParams:
    """Arm dimensions, joint limits, and per-command step sizes."""

    l1_mm: float = 200.0
    l2_mm: float = 150.0
    ext_range_mm: tuple[float, float] = (0.0, 100.0)
    base_height_mm: float = 0.0
    bracket_pitch_deg: float = -30.0
    base_limits_deg: tuple[float, float] = (-90.0, 90.0)
    bottom_limits_deg: tuple[float, float] = (0.0, 180.0)
    top_limits_deg: tuple[float, float] = (-165.0, 165.0)
    pitch_offset_limits_deg: tuple[float, float] = (-60.0, 60.0)
    pan_step_deg: float = 2.0
    tilt_step_deg: float = 2.0
    zoom_step_mm: float = 10.0
    sweep_step_deg: float = 0.25

    def __post_init__(self):
        if self.l1_mm <= 0 or self.l2_mm <= 0:
            raise ValueError("link lengths must be positive")
        if self.ext_range_mm[0] >= self.ext_range_mm[1]:
            raise ValueError("ext_range must be non-degenerate (lo < hi)")
        for name in ("pan_step_deg", "tilt_step_deg", "zoom_step_mm", "sweep_step_deg"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class ArmState:
    """Joint angles plus actuator extension and the virtual tilt accumulator."""

    theta_base_deg: float
    theta_bottom_deg: float
    theta_top_deg: float
    extension_mm: float
    pitch_offset_deg: float = 0.0


DEFAULT_STATE = ArmState(0.0, 90.0, -90.0, 50.0, 0.0)


def check_limits(state: ArmState, params: ArmParams) -> None:
    """Raise LimitViolation if any joint is outside its configured range."""
    checks = (
        ("theta_base_deg", state.theta_base_deg, params.base_limits_deg),
        ("theta_bottom_deg", state.theta_bottom_deg, params.bottom_limits_deg),
        ("theta_top_deg", state.theta_top_deg, params.top_limits_deg),
        ("extension_mm", state.extension_mm, params.ext_range_mm),
        ("pitch_offset_deg", state.pitch_offset_deg, params.pitch_offset_limits_deg),
    )
    bad = [f"{name}={value} not in [{lo}, {hi}]" for name, value, (lo, hi) in checks
           if not lo <= value <= hi]
    if bad:
        raise LimitViolation("; ".join(bad))


def camera_pitch_deg(state: ArmState, params: ArmParams) -> float:
    return (state.theta_bottom_deg + state.theta_top_deg
            + params.bracket_pitch_deg + state.pitch_offset_deg)


def forward_kinematics(state: ArmState, params: ArmParams = ArmParams()) -> CameraPose:
    """Camera pose of a joint state.

    The two links live in the vertical plane rotated theta_base about +y;
    the world position rotates the planar radial coordinate into (x, z).
    """
    check_limits(state, params)
    th1 = math.radians(state.theta_bottom_deg)
    th12 = math.radians(state.theta_bottom_deg + state.theta_top_deg)
    link2 = params.l2_mm + state.extension_mm
    radial = params.l1_mm * math.cos(th1) + link2 * math.cos(th12)
    height = params.l1_mm * math.sin(th1) + link2 * math.sin(th12) + params.base_height_mm
    tb = math.radians(state.theta_base_deg)
    position = np.array([radial * math.cos(tb), height, radial * math.sin(tb)])
    return build_pose(position, state.theta_base_deg, camera_pitch_deg(state, params))


def inverse_kinematics(target, current: ArmState, params: ArmParams = ArmParams()) -> ArmState:
    """Deterministic joint solution for a target camera position.

    The base angle follows directly from the target's (x, z). theta_bottom is
    swept outward from its current value in sweep_step increments (the +
    direction is probed first at each radius), and the first angle whose
    elbow leaves the remaining distance inside the actuator's range wins;
    theta_top and the extension then follow with no further choice. The
    pitch offset is carried over unchanged.
    """
    t = np.asarray(target, dtype=float)
    theta_base = math.degrees(math.atan2(t[2], t[0]))
    lo_b, hi_b = params.base_limits_deg
    if not lo_b <= theta_base <= hi_b:
        raise Unreachable(f"base angle {theta_base:.2f} outside [{lo_b}, {hi_b}]")
    rho = math.hypot(t[0], t[2])
    height = t[1] - params.base_height_mm

    lo, hi = params.bottom_limits_deg
    start = current.theta_bottom_deg
    ext_lo, ext_hi = params.ext_range_mm
    top_lo, top_hi = params.top_limits_deg
    k = 0
    while True:
        if k == 0:
            candidates = [start]
        else:
            candidates = [start + k * params.sweep_step_deg, start - k * params.sweep_step_deg]
        in_range = [c for c in candidates if lo <= c <= hi]
        if k > 0 and not in_range and candidates[0] > hi and candidates[1] < lo:
            raise Unreachable(f"sweep exhausted joint range for target {t.tolist()}")
        for theta1 in in_range:
            th1 = math.radians(theta1)
            ex = params.l1_mm * math.cos(th1)
            ey = params.l1_mm * math.sin(th1)
            vx, vy = rho - ex, height - ey
            r = math.hypot(vx, vy)
            ext = r - params.l2_mm
            if not ext_lo <= ext <= ext_hi:
                continue
            alpha = math.degrees(math.atan2(vy, vx))
            theta2 = (alpha - theta1 + 180.0) % 360.0 - 180.0
            if not top_lo <= theta2 <= top_hi:
                continue
            return ArmState(theta_base, theta1, theta2, ext, current.pitch_offset_deg)
        k += 1


class ApplyResult(NamedTuple):
    state: ArmState
    blocked: bool  # True when a zoom target had no joint solution


def _clip(value: float, lo: float, hi: float) -> float:
    return min(max(value, lo), hi)


def apply_command(state: ArmState, cmd: CameraCommand,
                  params: ArmParams = ArmParams()) -> ApplyResult:
    """Advance the arm one discrete step per commanded axis.

    Zoom first moves the camera zoom_step_mm along (in) or against (out) the
    current optical axis via inverse kinematics, re-aiming the pitch offset so
    the camera keeps its orientation; then pan steps the base angle (right is
    toward +z) and tilt steps the pitch offset, both clamped to limits. An
    unreachable zoom target leaves the state untouched and sets blocked.
    """
    new = state
    blocked = False
    if cmd.zoom is not Zoom.NONE:
        pose = forward_kinematics(new, params)
        sign = 1.0 if cmd.zoom is Zoom.IN else -1.0
        target = pose.position + sign * params.zoom_step_mm * pose.normal
        try:
            solved = inverse_kinematics(target, new, params)
            new = _preserve_pitch(solved, camera_pitch_deg(new, params), params)
        except Unreachable:
            blocked = True
    if cmd.pan is not Pan.NONE:
        step = params.pan_step_deg if cmd.pan is Pan.RIGHT else -params.pan_step_deg
        new = ArmState(
            _clip(new.theta_base_deg + step, *params.base_limits_deg),
            new.theta_bottom_deg, new.theta_top_deg, new.extension_mm, new.pitch_offset_deg,
        )
    if cmd.tilt is not Tilt.NONE:
        step = params.tilt_step_deg if cmd.tilt is Tilt.UP else -params.tilt_step_deg
        new = _with_offset(new, new.pitch_offset_deg + step, params)
    return ApplyResult(new, blocked)


def _offset_bounds(state: ArmState, params: ArmParams) -> tuple[float, float]:
    """Offset range that keeps the total pitch clear of the gimbal singularity."""
    base_pitch = (state.theta_bottom_deg + state.theta_top_deg + params.bracket_pitch_deg)
    lo = max(params.pitch_offset_limits_deg[0], -_PITCH_SAFETY_DEG - base_pitch)
    hi = min(params.pitch_offset_limits_deg[1], _PITCH_SAFETY_DEG - base_pitch)
    return lo, hi


def _with_offset(state: ArmState, offset: float, params: ArmParams) -> ArmState:
    lo, hi = _offset_bounds(state, params)
    if lo > hi:  # joints already pitch the camera past safety; leave offset alone
        offset = state.pitch_offset_deg
    else:
        offset = _clip(offset, lo, hi)
    return ArmState(state.theta_base_deg, state.theta_bottom_deg, state.theta_top_deg,
                    state.extension_mm, offset)


def _preserve_pitch(solved: ArmState, previous_pitch: float, params: ArmParams) -> ArmState:
    """Re-aim the pitch offset after an IK move so the camera orientation holds."""
    base_pitch = (solved.theta_bottom_deg + solved.theta_top_deg + params.bracket_pitch_deg)
    return _with_offset(solved, previous_pitch - base_pitch, params)


# --- line protocol ---------------------------------------------------------

_ZOOM_TOKEN = {Zoom.IN: "+", Zoom.OUT: "-", Zoom.NONE: "0"}
_TILT_TOKEN = {Tilt.UP: "+", Tilt.DOWN: "-", Tilt.NONE: "0"}
_PAN_TOKEN = {Pan.RIGHT: "+", Pan.LEFT: "-", Pan.NONE: "0"}
_ZOOM_FROM = {v: k for k, v in _ZOOM_TOKEN.items()}
_TILT_FROM = {v: k for k, v in _TILT_TOKEN.items()}
_PAN_FROM = {v: k for k, v in _PAN_TOKEN.items()}


class ReportFields(NamedTuple):
    theta_base_deg: float
    theta_bottom_deg: float
    theta_top_deg: float
    extension_mm: float
    camera_mm: tuple[float, float, float]


def encode_report(state: ArmState, pose: CameraPose) -> str:
    """Position report line, fixed two decimals, newline-terminated."""
    x, y, z = pose.position
    return (f"POS,{state.theta_base_deg:.2f},{state.theta_bottom_deg:.2f},"
            f"{state.theta_top_deg:.2f},{state.extension_mm:.2f},"
            f"{x:.2f},{y:.2f},{z:.2f}\n")


def parse_report(line: str) -> ReportFields:
    """Parse a POS line; MalformedLine carries the byte offset of the bad token."""
    body = line[:-1] if line.endswith("\n") else line
    parts = body.split(",")
    if parts[0] != "POS":
        raise MalformedLine(f"expected POS verb, got {parts[0]!r}", offset=0)
    if len(parts) != 8:
        raise MalformedLine(f"expected 7 fields, got {len(parts) - 1}", offset=len(body))
    values = []
    offset = len(parts[0]) + 1
    for i, token in enumerate(parts[1:], start=1):
        try:
            values.append(float(token))
        except ValueError:
            raise MalformedLine(f"bad number in field {i}: {token!r}", offset=offset) from None
        offset += len(token) + 1
    return ReportFields(values[0], values[1], values[2], values[3],
                        (values[4], values[5], values[6]))


def encode_command(cmd: CameraCommand) -> str:
    """Command line for the arm, newline-terminated."""
    return f"MOV {_ZOOM_TOKEN[cmd.zoom]} {_TILT_TOKEN[cmd.tilt]} {_PAN_TOKEN[cmd.pan]}\n"


def parse_command(line: str) -> CameraCommand:
    """Parse a MOV line; MalformedLine carries the byte offset of the bad token."""
    body = line[:-1] if line.endswith("\n") else line
    parts = body.split(" ")
    if parts[0] != "MOV":
        raise MalformedLine(f"expected MOV verb, got {parts[0]!r}", offset=0)
    if len(parts) != 4:
        raise MalformedLine(f"expected 3 direction tokens, got {len(parts) - 1}",
                            offset=len(body))
    offset = len(parts[0]) + 1
    parsed = []
    for i, (token, table) in enumerate(zip(parts[1:], (_ZOOM_FROM, _TILT_FROM, _PAN_FROM)),
                                       start=1):
        if token not in table:
            raise MalformedLine(f"bad token {i}: {token!r}", offset=offset)
        parsed.append(table[token])
        offset += len(token) + 1
    return CameraCommand(zoom=parsed[0], tilt=parsed[1], pan=parsed[2])


def serve(
    in_lines: Iterable[str],
    out_write: Callable[[str], None],
    initial: ArmState = DEFAULT_STATE,
    params: ArmParams = ArmParams(),
    baud: int | None = None,
) -> ArmState:
    """Emulator session: apply each command line, report after each one.

    Commands are processed strictly in arrival order against a single owned
    state. Malformed lines get an ERR response and do not move the arm. When
    baud is set, each response is paced as 10 bits per byte at that rate.
    """
    state = initial
    check_limits(state, params)
    for line in in_lines:
        if line in ("", "\n"):
            continue
        try:
            cmd = parse_command(line)
        except MalformedLine as exc:
            response = f"ERR,{exc.offset},{exc}\n"
        else:
            state, _ = apply_command(state, cmd, params)
            response = encode_report(state, forward_kinematics(state, params))
        if baud:
            time.sleep(len(response) * 10.0 / baud)
        out_write(response)
    return state
