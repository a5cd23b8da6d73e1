"""Sorting and pairing of left/right detections into stereo observations.

Detections arrive per eye with axis-aligned bounding boxes. Bounding-box
centers stand in for object centers. Same-label detections are paired by
ascending center-x rank (horizontal order is preserved between rectified
views); a pair survives only if the vertical difference of its centers is
within tolerance and its disparity is positive. Everything else is discarded
rather than guessed at.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import MixedFrame

DEFAULT_PAIRING_TOL_PX = 20.0


class Eye(str, Enum):
    LEFT = "left"
    RIGHT = "right"


class ObjectLabel(str, Enum):
    LEFT_GRASPER = "left_grasper"
    RIGHT_GRASPER = "right_grasper"
    RED_BLOCK = "red_block"
    GREEN_BLOCK = "green_block"


@dataclass(frozen=True)
class Detection:
    """One labeled bounding box in one eye's image, in pixels.

    bbox is (x1, y1, x2, y2) with the upper-left corner first; sub-pixel
    coordinates are allowed.
    """

    frame_id: str
    eye: Eye
    label: ObjectLabel
    bbox: tuple[float, float, float, float]
    score: float = 1.0

    def __post_init__(self):
        x1, y1, x2, y2 = self.bbox
        if not (0 <= x1 < x2 and 0 <= y1 < y2):
            raise ValueError(f"invalid bbox {self.bbox}: need 0 <= min < max per axis")
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"score {self.score} outside [0, 1]")


@dataclass(frozen=True)
class PairedObservation:
    """Matched left/right pixel centers for one object."""

    label: ObjectLabel
    left_center: tuple[float, float]
    right_center: tuple[float, float]

    def __post_init__(self):
        if self.left_center[0] <= self.right_center[0]:
            raise ValueError(
                f"non-positive disparity: left x {self.left_center[0]} "
                f"<= right x {self.right_center[0]}"
            )


def bbox_center(det: Detection) -> tuple[float, float]:
    """Center of a detection's bounding box."""
    x1, y1, x2, y2 = det.bbox
    return (x1 + x2) / 2.0, (y1 + y2) / 2.0


def pair_detections(
    left: list[Detection],
    right: list[Detection],
    tol_px: float = DEFAULT_PAIRING_TOL_PX,
) -> tuple[list[PairedObservation], list[Detection]]:
    """Pair same-label detections across eyes; return (pairs, discarded).

    Within each label, both sides are sorted by center x and zipped in order.
    A zipped pair is kept only if |left_y - right_y| <= tol_px and its
    disparity is positive; otherwise both detections are discarded, as is any
    unmatched surplus on either side. Every input detection ends up in exactly
    one of the two outputs.
    """
    if tol_px < 0:
        raise ValueError(f"tol_px must be >= 0, got {tol_px}")
    frames = {d.frame_id for d in left} | {d.frame_id for d in right}
    if len(frames) > 1:
        raise MixedFrame(f"detections span multiple frames: {sorted(frames)}")

    pairs: list[PairedObservation] = []
    discarded: list[Detection] = []
    for label in ObjectLabel:
        lefts = sorted(
            (d for d in left if d.label is label), key=lambda d: bbox_center(d)[0]
        )
        rights = sorted(
            (d for d in right if d.label is label), key=lambda d: bbox_center(d)[0]
        )
        for ldet, rdet in zip(lefts, rights):
            lc, rc = bbox_center(ldet), bbox_center(rdet)
            if abs(lc[1] - rc[1]) <= tol_px and lc[0] > rc[0]:
                pairs.append(PairedObservation(label, lc, rc))
            else:
                discarded.extend((ldet, rdet))
        n = min(len(lefts), len(rights))
        discarded.extend(lefts[n:])
        discarded.extend(rights[n:])
    return pairs, discarded
