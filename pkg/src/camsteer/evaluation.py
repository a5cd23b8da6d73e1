"""Detection and control evaluation: localization hits, accuracy by group,
RMS center errors, majority-vote desired commands, and confusion matrices.

Graspers are scored as one group and blocks as another (left/right graspers
swap too easily and block colors are unreliable to classify), with an "all"
row summing the disjoint groups.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .control import CameraCommand, Pan, Tilt, Zoom
from .errors import EmptyMatchSet, FrameMismatch, FrameSetMismatch
from .matching import Detection, Eye, ObjectLabel, bbox_center

DEFAULT_GROUPING: dict[ObjectLabel, str] = {
    ObjectLabel.LEFT_GRASPER: "graspers",
    ObjectLabel.RIGHT_GRASPER: "graspers",
    ObjectLabel.RED_BLOCK: "blocks",
    ObjectLabel.GREEN_BLOCK: "blocks",
}


@dataclass(frozen=True)
class GroundTruthObject:
    frame_id: str
    eye: Eye
    label: ObjectLabel
    center: tuple[float, float]


@dataclass(frozen=True)
class SurveyResponse:
    frame_id: str
    respondent: str
    zoom: Zoom
    tilt: Tilt
    pan: Pan


class MatchedPair(NamedTuple):
    gt: GroundTruthObject
    pred: Detection
    distance_px: float


class GroupAccuracy(NamedTuple):
    group: str
    correct: int
    total: int
    percent: float


class ConfusionMatrix(NamedTuple):
    """counts[i, j] = frames with desired value labels[i] and proposed labels[j]."""

    labels: tuple[str, ...]
    counts: np.ndarray


class AxisMatrices(NamedTuple):
    zoom: ConfusionMatrix
    tilt: ConfusionMatrix
    pan: ConfusionMatrix


def localization_hit(gt: GroundTruthObject, pred: Detection) -> bool:
    """True when the ground-truth center lies inside the predicted box (inclusive)."""
    if gt.frame_id != pred.frame_id or gt.eye is not pred.eye:
        raise FrameMismatch(
            f"gt ({gt.frame_id}, {gt.eye.value}) vs pred ({pred.frame_id}, {pred.eye.value})"
        )
    x1, y1, x2, y2 = pred.bbox
    return x1 <= gt.center[0] <= x2 and y1 <= gt.center[1] <= y2


def match_predictions(
    preds: Iterable[Detection],
    gts: Iterable[GroundTruthObject],
    grouping: Mapping[ObjectLabel, str] = DEFAULT_GROUPING,
) -> list[MatchedPair]:
    """Greedily match predictions to ground-truth objects by center distance.

    A candidate pair must share frame and eye, localize (hit), and carry
    labels in the same group. Each prediction and each ground-truth object is
    used at most once; nearer centers win.
    """
    by_image: dict[tuple[str, Eye], list[Detection]] = defaultdict(list)
    for pred in preds:
        by_image[(pred.frame_id, pred.eye)].append(pred)

    matches: list[MatchedPair] = []
    gts = list(gts)
    candidates = []
    for gi, gt in enumerate(gts):
        for pred in by_image.get((gt.frame_id, gt.eye), []):
            if grouping.get(gt.label) != grouping.get(pred.label):
                continue
            if not localization_hit(gt, pred):
                continue
            cx, cy = bbox_center(pred)
            dist = float(np.hypot(cx - gt.center[0], cy - gt.center[1]))
            candidates.append((dist, gi, pred))
    candidates.sort(key=lambda c: (c[0], c[1]))
    used_gt: set[int] = set()
    used_pred: set[int] = set()
    for dist, gi, pred in candidates:
        if gi in used_gt or id(pred) in used_pred:
            continue
        used_gt.add(gi)
        used_pred.add(id(pred))
        matches.append(MatchedPair(gts[gi], pred, dist))
    return matches


def _percent(correct: int, total: int) -> float:
    if total == 0:
        return 0.0
    exact = Decimal(100 * correct) / Decimal(total)
    return float(exact.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def accuracy_table(
    preds: Iterable[Detection],
    gts: Iterable[GroundTruthObject],
    grouping: Mapping[ObjectLabel, str] = DEFAULT_GROUPING,
) -> list[GroupAccuracy]:
    """Correct/total/percent per label group plus an "all" summary row.

    A ground-truth object is correct when some prediction localizes it with a
    label from the same group; percentages are rounded half-up to 2 decimals.
    """
    gts = list(gts)
    matches = match_predictions(preds, gts, grouping)
    matched_gts = {id(m.gt) for m in matches}
    groups = sorted(set(grouping.values()))
    rows = []
    for group in groups:
        in_group = [gt for gt in gts if grouping.get(gt.label) == group]
        correct = sum(1 for gt in in_group if id(gt) in matched_gts)
        rows.append(GroupAccuracy(group, correct, len(in_group), _percent(correct, len(in_group))))
    correct_all = sum(r.correct for r in rows)
    total_all = sum(r.total for r in rows)
    rows.append(GroupAccuracy("all", correct_all, total_all, _percent(correct_all, total_all)))
    return rows


def rms_center_error(matches: list[MatchedPair]) -> tuple[float, float]:
    """Per-axis RMS difference (px) between predicted and annotated centers."""
    if not matches:
        raise EmptyMatchSet("no matched pairs to compute RMS over")
    dx = np.array([bbox_center(m.pred)[0] - m.gt.center[0] for m in matches])
    dy = np.array([bbox_center(m.pred)[1] - m.gt.center[1] for m in matches])
    return float(np.sqrt(np.mean(dx**2))), float(np.sqrt(np.mean(dy**2)))


def _plurality(votes: list, none_value):
    counts = Counter(votes)
    top = max(counts.values())
    winners = [value for value, count in counts.items() if count == top]
    return winners[0] if len(winners) == 1 else none_value


def majority_vote(responses: list[SurveyResponse]) -> CameraCommand:
    """Per-axis plurality of survey responses; ties resolve to none."""
    if not responses:
        raise ValueError("majority_vote needs at least one response")
    frames = {r.frame_id for r in responses}
    if len(frames) > 1:
        raise FrameMismatch(f"responses span frames {sorted(frames)}")
    return CameraCommand(
        zoom=_plurality([r.zoom for r in responses], Zoom.NONE),
        tilt=_plurality([r.tilt for r in responses], Tilt.NONE),
        pan=_plurality([r.pan for r in responses], Pan.NONE),
    )


_AXIS_VALUES = {
    "zoom": (Zoom.IN, Zoom.OUT, Zoom.NONE),
    "tilt": (Tilt.UP, Tilt.DOWN, Tilt.NONE),
    "pan": (Pan.LEFT, Pan.RIGHT, Pan.NONE),
}


def confusion_matrices(
    proposed: Mapping[str, CameraCommand],
    desired: Mapping[str, CameraCommand],
) -> AxisMatrices:
    """Desired-by-proposed count matrices for each command axis.

    Both maps must cover exactly the same frame ids; each matrix's counts sum
    to the number of frames.
    """
    if set(proposed) != set(desired):
        only_p = sorted(set(proposed) - set(desired))
        only_d = sorted(set(desired) - set(proposed))
        raise FrameSetMismatch(f"frame sets differ (proposed only {only_p}, desired only {only_d})")
    out = {}
    for axis, values in _AXIS_VALUES.items():
        index = {value: i for i, value in enumerate(values)}
        counts = np.zeros((len(values), len(values)), dtype=int)
        for frame_id in proposed:
            d = getattr(desired[frame_id], axis)
            p = getattr(proposed[frame_id], axis)
            counts[index[d], index[p]] += 1
        out[axis] = ConfusionMatrix(tuple(v.value for v in values), counts)
    return AxisMatrices(out["zoom"], out["tilt"], out["pan"])
