"""Line-delimited record files: the on-disk contracts between tools.

Every format is UTF-8, one record per line, comma-separated fields in fixed
order, numbers as plain decimal literals (shortest float repr on write).
Blank lines and lines starting with '#' are skipped on read. Schemas:

  detections     frame_id,eye,label,x1,y1,x2,y2,score
  scene          label,x,y,z,halfsize
  ground truth   frame_id,eye,label,cx,cy
  survey         frame_id,respondent,zoom,tilt,pan
  commands       frame_id,zoom,tilt,pan
  estimates      frame_id,label,x,y,z,depth,horiz,vert
  plane report   PLANE,d_cam,h_visible,centroid_u,centroid_v,mean_radius
                 then one OBJ,label,u,v line per object
  trajectory     step,theta_base,theta_bottom,theta_top,extension,pitch_offset,
                 zoom,tilt,pan,d_cam,h_visible,centroid_u,centroid_v,mean_radius

eye is left|right; label is left_grasper|right_grasper|red_block|green_block;
command axis values are in|out|none, up|down|none, left|right|none.
"""

from __future__ import annotations

import contextlib
from pathlib import Path
from typing import Iterable, Iterator

from .control import CameraCommand, Pan, Tilt, Zoom
from .errors import RecordError
from .evaluation import GroundTruthObject, SurveyResponse
from .geometry import ObjectEstimate, PlaneReport, StereoRig
from .matching import Detection, Eye, ObjectLabel
from .sim import LoopResult, SceneObject, Workspace


def _num(x: float) -> str:
    return repr(float(x))


@contextlib.contextmanager
def _open_out(path_or_io):
    if hasattr(path_or_io, "write"):
        yield path_or_io
    else:
        with open(path_or_io, "w", encoding="utf-8") as fh:
            yield fh


def _rows(path: str | Path) -> Iterator[tuple[int, list[str]]]:
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            yield line_no, stripped.split(",")


def _expect(fields: list[str], n: int, line_no: int, what: str) -> None:
    if len(fields) != n:
        raise RecordError(f"line {line_no}: {what} needs {n} fields, got {len(fields)}",
                          line_no=line_no)


def _parse_float(token: str, line_no: int, what: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise RecordError(f"line {line_no}: bad {what} {token!r}", line_no=line_no) from None


def _parse_enum(enum_cls, token: str, line_no: int, what: str):
    try:
        return enum_cls(token)
    except ValueError:
        valid = "|".join(e.value for e in enum_cls)
        raise RecordError(f"line {line_no}: unknown {what} {token!r} (expected {valid})",
                          line_no=line_no) from None


# --- detections --------------------------------------------------------------

def write_detections(path_or_io, detections: Iterable[Detection]) -> None:
    with _open_out(path_or_io) as fh:
        for d in detections:
            x1, y1, x2, y2 = d.bbox
            fh.write(f"{d.frame_id},{d.eye.value},{d.label.value},"
                     f"{_num(x1)},{_num(y1)},{_num(x2)},{_num(y2)},{_num(d.score)}\n")


def read_detections(path: str | Path, rig: StereoRig | None = None) -> list[Detection]:
    """Read detections; with a rig, boxes must also fit inside the image."""
    out = []
    for line_no, fields in _rows(path):
        _expect(fields, 8, line_no, "detection")
        eye = _parse_enum(Eye, fields[1], line_no, "eye")
        label = _parse_enum(ObjectLabel, fields[2], line_no, "label")
        x1, y1, x2, y2, score = (_parse_float(t, line_no, name) for t, name in
                                 zip(fields[3:], ("x1", "y1", "x2", "y2", "score")))
        try:
            det = Detection(fields[0], eye, label, (x1, y1, x2, y2), score)
        except ValueError as exc:
            raise RecordError(f"line {line_no}: {exc}", line_no=line_no) from None
        if rig is not None and (x2 > rig.image_width or y2 > rig.image_height):
            raise RecordError(f"line {line_no}: bbox exceeds {rig.image_width}x"
                              f"{rig.image_height} image", line_no=line_no)
        out.append(det)
    return out


# --- scenes -------------------------------------------------------------------

def write_scene(path_or_io, scene: Iterable[SceneObject]) -> None:
    with _open_out(path_or_io) as fh:
        for obj in scene:
            x, y, z = obj.position
            fh.write(f"{obj.label.value},{_num(x)},{_num(y)},{_num(z)},"
                     f"{_num(obj.bbox_halfsize_px)}\n")


def read_scene(path: str | Path, workspace: Workspace | None = None) -> list[SceneObject]:
    """Read scene objects; with a workspace, positions must lie inside it."""
    out = []
    for line_no, fields in _rows(path):
        _expect(fields, 5, line_no, "scene object")
        label = _parse_enum(ObjectLabel, fields[0], line_no, "label")
        x, y, z, half = (_parse_float(t, line_no, name) for t, name in
                         zip(fields[1:], ("x", "y", "z", "halfsize")))
        if workspace is not None and not workspace.contains((x, y, z)):
            raise RecordError(f"line {line_no}: position ({x}, {y}, {z}) outside workspace",
                              line_no=line_no)
        out.append(SceneObject(label, (x, y, z), half))
    return out


# --- evaluation inputs --------------------------------------------------------

def read_ground_truth(path: str | Path) -> list[GroundTruthObject]:
    out = []
    for line_no, fields in _rows(path):
        _expect(fields, 5, line_no, "ground-truth object")
        eye = _parse_enum(Eye, fields[1], line_no, "eye")
        label = _parse_enum(ObjectLabel, fields[2], line_no, "label")
        cx = _parse_float(fields[3], line_no, "cx")
        cy = _parse_float(fields[4], line_no, "cy")
        out.append(GroundTruthObject(fields[0], eye, label, (cx, cy)))
    return out


def read_survey(path: str | Path) -> list[SurveyResponse]:
    out = []
    for line_no, fields in _rows(path):
        _expect(fields, 5, line_no, "survey response")
        out.append(SurveyResponse(
            fields[0], fields[1],
            _parse_enum(Zoom, fields[2], line_no, "zoom"),
            _parse_enum(Tilt, fields[3], line_no, "tilt"),
            _parse_enum(Pan, fields[4], line_no, "pan"),
        ))
    return out


def write_commands(path_or_io, commands: dict[str, CameraCommand]) -> None:
    with _open_out(path_or_io) as fh:
        for frame_id in sorted(commands):
            cmd = commands[frame_id]
            fh.write(f"{frame_id},{cmd.zoom.value},{cmd.tilt.value},{cmd.pan.value}\n")


def read_commands(path: str | Path) -> dict[str, CameraCommand]:
    out: dict[str, CameraCommand] = {}
    for line_no, fields in _rows(path):
        _expect(fields, 4, line_no, "command")
        if fields[0] in out:
            raise RecordError(f"line {line_no}: duplicate frame {fields[0]!r}", line_no=line_no)
        out[fields[0]] = CameraCommand(
            zoom=_parse_enum(Zoom, fields[1], line_no, "zoom"),
            tilt=_parse_enum(Tilt, fields[2], line_no, "tilt"),
            pan=_parse_enum(Pan, fields[3], line_no, "pan"),
        )
    return out


# --- pipeline outputs -----------------------------------------------------------

def write_estimates(path_or_io, frame_id: str, estimates: Iterable[ObjectEstimate]) -> None:
    with _open_out(path_or_io) as fh:
        for est in estimates:
            x, y, z = est.position
            fh.write(f"{frame_id},{est.label.value},{_num(x)},{_num(y)},{_num(z)},"
                     f"{_num(est.depth_mm)},{_num(est.horiz_mm)},{_num(est.vert_mm)}\n")


def write_plane_report(path_or_io, report: PlaneReport) -> None:
    with _open_out(path_or_io) as fh:
        fh.write(f"PLANE,{_num(report.d_cam_mm)},{_num(report.h_visible_mm)},"
                 f"{_num(report.centroid_uv[0])},{_num(report.centroid_uv[1])},"
                 f"{_num(report.mean_radius_mm)}\n")
        for label, (u, v) in report.object_uv:
            fh.write(f"OBJ,{label.value},{_num(u)},{_num(v)}\n")


def write_trajectory(path_or_io, result: LoopResult) -> None:
    with _open_out(path_or_io) as fh:
        for step, entry in enumerate(result.trajectory, start=1):
            s, c, r = entry.state, entry.command, entry.report
            fh.write(f"{step},{_num(s.theta_base_deg)},{_num(s.theta_bottom_deg)},"
                     f"{_num(s.theta_top_deg)},{_num(s.extension_mm)},"
                     f"{_num(s.pitch_offset_deg)},{c.zoom.value},{c.tilt.value},"
                     f"{c.pan.value},{_num(r.d_cam_mm)},{_num(r.h_visible_mm)},"
                     f"{_num(r.centroid_uv[0])},{_num(r.centroid_uv[1])},"
                     f"{_num(r.mean_radius_mm)}\n")
