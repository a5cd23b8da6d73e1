"""Command-line entry point.

Subcommands:
  triangulate  detections file -> 3D object estimate records
  plan         detections file -> one camera command + plane report
  simulate     scene file -> closed-loop trajectory log + convergence summary
  evaluate     predictions vs ground truth (+ survey/proposed commands)
  arm-serve    line-protocol arm emulator on stdin/stdout

Every subcommand is deterministic given its inputs, --config, and --seed.
Exit status is 0 iff no error was reported.
"""

from __future__ import annotations

import argparse
import sys
from collections import defaultdict

from . import arm, records
from .config import Config, load_config
from .control import plan_command
from .errors import CamsteerError, NoObjectsVisible
from .evaluation import accuracy_table, confusion_matrices, majority_vote, match_predictions, \
    rms_center_error
from .geometry import build_pose, triangulate
from .matching import Detection, Eye, pair_detections
from .sim import run_closed_loop

# Camera pose of the default arm state: x,y,z,yaw,pitch.
DEFAULT_POSE = "200,200,0,0,-30"


def _parse_pose(text: str):
    parts = text.split(",")
    if len(parts) != 5:
        raise CamsteerError(f"--pose needs x,y,z,yaw,pitch (5 numbers), got {text!r}")
    try:
        x, y, z, yaw, pitch = (float(p) for p in parts)
    except ValueError:
        raise CamsteerError(f"--pose has a non-numeric field: {text!r}") from None
    return build_pose((x, y, z), yaw, pitch)


def _load(args) -> Config:
    return load_config(args.config) if args.config else Config()


def _ingest(path, cfg: Config) -> list[Detection]:
    dets = records.read_detections(path, cfg.rig)
    if cfg.score_threshold > 0:
        dets = [d for d in dets if d.score >= cfg.score_threshold]
    return dets


def _split_eyes(dets: list[Detection]):
    return ([d for d in dets if d.eye is Eye.LEFT], [d for d in dets if d.eye is Eye.RIGHT])


def _diagnose(discarded: list[Detection]) -> None:
    for d in discarded:
        print(f"DISCARD,{d.frame_id},{d.eye.value},{d.label.value}", file=sys.stderr)


def cmd_triangulate(args) -> int:
    cfg = _load(args)
    pose = _parse_pose(args.pose)
    dets = _ingest(args.detections, cfg)
    by_frame: dict[str, list[Detection]] = defaultdict(list)
    for d in dets:
        by_frame[d.frame_id].append(d)

    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        for frame_id in by_frame:
            left, right = _split_eyes(by_frame[frame_id])
            pairs, discarded = pair_detections(left, right, cfg.pairing_tol_px)
            _diagnose(discarded)
            estimates = [triangulate(p, pose, cfg.rig) for p in pairs]
            records.write_estimates(out, frame_id, estimates)
    finally:
        if args.out:
            out.close()
    return 0


def cmd_plan(args) -> int:
    cfg = _load(args)
    pose = _parse_pose(args.pose)
    dets = _ingest(args.detections, cfg)
    left, right = _split_eyes(dets)
    pairs, discarded = pair_detections(left, right, cfg.pairing_tol_px)
    _diagnose(discarded)
    if not pairs:
        raise NoObjectsVisible("no paired observations in the detections file")
    estimates = [triangulate(p, pose, cfg.rig) for p in pairs]
    command, report = plan_command(estimates, pose, cfg.rig, cfg.control)
    print(f"zoom={command.zoom.value} tilt={command.tilt.value} pan={command.pan.value}")
    if args.report:
        records.write_plane_report(args.report, report)
    return 0


def cmd_simulate(args) -> int:
    cfg = _load(args)
    scene = records.read_scene(args.scene, cfg.workspace)
    result = run_closed_loop(
        scene,
        arm.DEFAULT_STATE,
        max_steps=args.max_steps if args.max_steps else cfg.max_steps,
        rig=cfg.rig,
        control_params=cfg.control,
        arm_params=cfg.arm,
        pairing_tol_px=cfg.pairing_tol_px,
        jitter_px=cfg.jitter_px,
        seed=args.seed if args.seed is not None else cfg.seed,
    )
    if args.trajectory:
        records.write_trajectory(args.trajectory, result)
    print(f"converged={'true' if result.converged else 'false'} steps={result.steps}")
    return 0


def _print_matrix(name: str, matrix) -> None:
    print(f"confusion {name} (rows desired, cols proposed: {' '.join(matrix.labels)})")
    for label, row in zip(matrix.labels, matrix.counts):
        print(f"  {label:<5} " + " ".join(f"{n:4d}" for n in row))


def cmd_evaluate(args) -> int:
    cfg = _load(args)
    preds = _ingest(args.pred, cfg)
    gts = records.read_ground_truth(args.gt)
    table = accuracy_table(preds, gts)
    matches = match_predictions(preds, gts)

    out_lines = []
    print(f"{'group':<10} {'correct':>7} {'total':>6} {'percent':>8}")
    for row in table:
        print(f"{row.group:<10} {row.correct:>7} {row.total:>6} {row.percent:>8.2f}")
        out_lines.append(f"accuracy,{row.group},{row.correct},{row.total},{row.percent:.2f}")
    if matches:
        rms_x, rms_y = rms_center_error(matches)
        print(f"rms_px horizontal={rms_x:.2f} vertical={rms_y:.2f}")
        out_lines.append(f"rms,{rms_x!r},{rms_y!r}")

    if args.survey and args.proposed:
        responses = records.read_survey(args.survey)
        by_frame = defaultdict(list)
        for r in responses:
            by_frame[r.frame_id].append(r)
        desired = {frame_id: majority_vote(rs) for frame_id, rs in by_frame.items()}
        proposed = records.read_commands(args.proposed)
        matrices = confusion_matrices(proposed, desired)
        for frame_id in sorted(desired):
            cmd = desired[frame_id]
            out_lines.append(f"desired,{frame_id},{cmd.zoom.value},{cmd.tilt.value},{cmd.pan.value}")
        for name, matrix in zip(("zoom", "tilt", "pan"), matrices):
            _print_matrix(name, matrix)
            for d_label, row in zip(matrix.labels, matrix.counts):
                for p_label, count in zip(matrix.labels, row):
                    out_lines.append(f"confusion,{name},{d_label},{p_label},{count}")

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("\n".join(out_lines) + "\n")
    return 0


def cmd_arm_serve(args) -> int:
    cfg = _load(args)

    def write(line: str) -> None:
        sys.stdout.write(line)
        sys.stdout.flush()

    arm.serve(sys.stdin, write, arm.DEFAULT_STATE, cfg.arm,
              baud=9600 if cfg.baud_pacing else None)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="camsteer", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    tri = sub.add_parser("triangulate", help="detections -> 3D estimate records")
    tri.add_argument("--detections", required=True)
    tri.add_argument("--pose", default=DEFAULT_POSE, help="camera pose x,y,z,yaw,pitch")
    tri.add_argument("--config")
    tri.add_argument("--out", help="estimate records file (default stdout)")
    tri.set_defaults(func=cmd_triangulate)

    plan = sub.add_parser("plan", help="detections -> one camera command")
    plan.add_argument("--detections", required=True)
    plan.add_argument("--pose", default=DEFAULT_POSE, help="camera pose x,y,z,yaw,pitch")
    plan.add_argument("--config")
    plan.add_argument("--report", help="write the plane report to this file")
    plan.set_defaults(func=cmd_plan)

    simu = sub.add_parser("simulate", help="scene -> closed-loop trajectory")
    simu.add_argument("--scene", required=True)
    simu.add_argument("--config")
    simu.add_argument("--seed", type=int, default=None)
    simu.add_argument("--max-steps", type=int, default=None)
    simu.add_argument("--trajectory", help="write the trajectory log to this file")
    simu.set_defaults(func=cmd_simulate)

    ev = sub.add_parser("evaluate", help="predictions vs ground truth")
    ev.add_argument("--pred", required=True, help="predicted detection records")
    ev.add_argument("--gt", required=True, help="ground-truth center records")
    ev.add_argument("--survey", help="survey response records")
    ev.add_argument("--proposed", help="proposed command records")
    ev.add_argument("--config")
    ev.add_argument("--out", help="machine-readable report file")
    ev.set_defaults(func=cmd_evaluate)

    serve = sub.add_parser("arm-serve", help="arm emulator on stdin/stdout")
    serve.add_argument("--config")
    serve.set_defaults(func=cmd_arm_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CamsteerError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
