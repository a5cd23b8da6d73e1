"""Scoring a detector and the controller against references.

Detector side: a ground-truth object counts as correctly identified when some
prediction's box contains its center and carries a label from the same group
(left/right graspers are merged, as are block colors). Per-axis RMS of the
center error quantifies localization quality.

Controller side: per-frame desired commands come from a majority vote over
survey responses (ties fall back to none), and desired-vs-proposed counts go
into one confusion matrix per command axis.
"""

import numpy as np

from camsteer import CameraCommand, Detection, Eye, ObjectLabel, Pan, Tilt, Zoom
from camsteer.evaluation import (
    GroundTruthObject,
    SurveyResponse,
    accuracy_table,
    confusion_matrices,
    majority_vote,
    match_predictions,
    rms_center_error,
)

rng = np.random.default_rng(9)

# Synthesize 30 frames: each has a grasper and a block; the detector finds
# the grasper reliably (with the left/right labels swapped, which the merged
# group forgives) and the block only two thirds of the time.
gts, preds = [], []
for i in range(30):
    frame = f"f{i:02d}"
    gx, gy = rng.uniform(300, 900), rng.uniform(200, 500)
    gts.append(GroundTruthObject(frame, Eye.LEFT, ObjectLabel.LEFT_GRASPER, (gx, gy)))
    jitter = rng.normal(0, 6, size=2)
    preds.append(Detection(frame, Eye.LEFT, ObjectLabel.RIGHT_GRASPER,
                           (gx - 40 + jitter[0], gy - 30 + jitter[1],
                            gx + 40 + jitter[0], gy + 30 + jitter[1])))
    bx, by = rng.uniform(300, 900), rng.uniform(200, 500)
    gts.append(GroundTruthObject(frame, Eye.LEFT, ObjectLabel.RED_BLOCK, (bx, by)))
    if i % 3 != 0:
        preds.append(Detection(frame, Eye.LEFT, ObjectLabel.RED_BLOCK,
                               (bx - 20, by - 20, bx + 20, by + 20)))

print(f"{'group':<10} {'correct':>7} {'total':>6} {'percent':>8}")
for row in accuracy_table(preds, gts):
    print(f"{row.group:<10} {row.correct:>7} {row.total:>6} {row.percent:>8.2f}")

rms_x, rms_y = rms_center_error(match_predictions(preds, gts))
print(f"center RMS: horizontal {rms_x:.2f} px, vertical {rms_y:.2f} px")

# Survey: 13 respondents per frame; the controller proposes zoom-in more
# eagerly than people want, which shows up in the zoom matrix's none-row.
desired, proposed = {}, {}
for i in range(10):
    frame = f"s{i:02d}"
    responses = []
    for r in range(13):
        wants_down = (i + r) % 3 == 0
        responses.append(SurveyResponse(
            frame, f"r{r:02d}",
            Zoom.IN if r < 4 else Zoom.NONE,
            Tilt.DOWN if wants_down else Tilt.NONE,
            Pan.RIGHT if i % 4 == 0 and r < 9 else Pan.NONE,
        ))
    desired[frame] = majority_vote(responses)
    proposed[frame] = CameraCommand(zoom=Zoom.IN, tilt=Tilt.NONE,
                                    pan=desired[frame].pan)

matrices = confusion_matrices(proposed, desired)
for name, matrix in zip(("zoom", "tilt", "pan"), matrices):
    print(f"\n{name} confusion (rows desired, cols proposed: {', '.join(matrix.labels)})")
    for label, row in zip(matrix.labels, matrix.counts):
        print(f"  {label:<5} {row}")
