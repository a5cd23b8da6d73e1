"""Detection pairing tests: sort-by-x rule, tolerance, conservation."""

import numpy as np
import pytest

from camsteer.errors import MixedFrame
from camsteer.matching import Detection, Eye, ObjectLabel, bbox_center, pair_detections


def det(eye, label, cx, cy, frame="f001", half=10.0, score=1.0):
    return Detection(frame, eye, label, (cx - half, cy - half, cx + half, cy + half), score)


class TestBboxCenter:
    @pytest.mark.parametrize("bbox,center", [
        ((100, 100, 200, 200), (150, 150)),
        ((0, 0, 1280, 720), (640, 360)),
        ((101, 50, 104, 60), (102.5, 55)),
    ])
    def test_examples(self, bbox, center):
        d = Detection("f", Eye.LEFT, ObjectLabel.RED_BLOCK, bbox)
        assert bbox_center(d) == center

    def test_invalid_bbox_rejected(self):
        with pytest.raises(ValueError):
            Detection("f", Eye.LEFT, ObjectLabel.RED_BLOCK, (10, 10, 10, 20))
        with pytest.raises(ValueError):
            Detection("f", Eye.LEFT, ObjectLabel.RED_BLOCK, (-1, 0, 10, 20))


class TestPairing:
    def test_single_pair(self):
        pairs, discarded = pair_detections(
            [det(Eye.LEFT, ObjectLabel.RIGHT_GRASPER, 700, 360)],
            [det(Eye.RIGHT, ObjectLabel.RIGHT_GRASPER, 630, 360)],
        )
        assert len(pairs) == 1 and not discarded
        assert pairs[0].left_center == (700, 360)
        assert pairs[0].right_center == (630, 360)

    def test_vertical_tolerance_rejects(self):
        pairs, discarded = pair_detections(
            [det(Eye.LEFT, ObjectLabel.RED_BLOCK, 500, 300)],
            [det(Eye.RIGHT, ObjectLabel.RED_BLOCK, 450, 325)],
        )
        assert not pairs and len(discarded) == 2

    def test_tolerance_boundary_inclusive(self):
        def run(dy):
            return pair_detections(
                [det(Eye.LEFT, ObjectLabel.RED_BLOCK, 500, 300)],
                [det(Eye.RIGHT, ObjectLabel.RED_BLOCK, 450, 300 + dy)],
            )
        pairs, _ = run(20)
        assert len(pairs) == 1
        pairs, discarded = run(21)
        assert not pairs and len(discarded) == 2

    def test_x_order_pairing(self):
        pairs, discarded = pair_detections(
            [det(Eye.LEFT, ObjectLabel.RED_BLOCK, 800, 300),
             det(Eye.LEFT, ObjectLabel.RED_BLOCK, 400, 300)],
            [det(Eye.RIGHT, ObjectLabel.RED_BLOCK, 760, 298),
             det(Eye.RIGHT, ObjectLabel.RED_BLOCK, 350, 305)],
        )
        assert not discarded
        got = {(p.left_center[0], p.right_center[0]) for p in pairs}
        assert got == {(400, 350), (800, 760)}

    def test_negative_disparity_discarded(self):
        pairs, discarded = pair_detections(
            [det(Eye.LEFT, ObjectLabel.RED_BLOCK, 400, 300)],
            [det(Eye.RIGHT, ObjectLabel.RED_BLOCK, 450, 300)],
        )
        assert not pairs and len(discarded) == 2

    def test_surplus_discarded(self):
        pairs, discarded = pair_detections(
            [det(Eye.LEFT, ObjectLabel.RED_BLOCK, 400, 300),
             det(Eye.LEFT, ObjectLabel.GREEN_BLOCK, 500, 300)],
            [det(Eye.RIGHT, ObjectLabel.RED_BLOCK, 350, 300)],
        )
        assert len(pairs) == 1
        assert [d.label for d in discarded] == [ObjectLabel.GREEN_BLOCK]

    def test_mixed_frame_rejected(self):
        with pytest.raises(MixedFrame):
            pair_detections(
                [det(Eye.LEFT, ObjectLabel.RED_BLOCK, 400, 300, frame="a")],
                [det(Eye.RIGHT, ObjectLabel.RED_BLOCK, 350, 300, frame="b")],
            )

    def test_conservation_and_permutation_invariance(self):
        rng = np.random.default_rng(31)
        labels = list(ObjectLabel)
        for _ in range(50):
            left = [det(Eye.LEFT, labels[int(rng.integers(4))],
                        float(rng.uniform(50, 1200)), float(rng.uniform(50, 600)))
                    for _ in range(int(rng.integers(0, 8)))]
            right = [det(Eye.RIGHT, labels[int(rng.integers(4))],
                         float(rng.uniform(50, 1200)), float(rng.uniform(50, 600)))
                     for _ in range(int(rng.integers(0, 8)))]
            pairs, discarded = pair_detections(left, right)
            assert 2 * len(pairs) + len(discarded) == len(left) + len(right)

            shuffled_left = list(left)
            shuffled_right = list(right)
            rng.shuffle(shuffled_left)
            rng.shuffle(shuffled_right)
            pairs2, _ = pair_detections(shuffled_left, shuffled_right)
            key = lambda p: (p.label.value, p.left_center, p.right_center)
            assert sorted(pairs, key=key) == sorted(pairs2, key=key)

    def test_tolerance_monotonicity(self):
        rng = np.random.default_rng(37)
        for _ in range(30):
            left = [det(Eye.LEFT, ObjectLabel.RED_BLOCK,
                        float(rng.uniform(200, 1200)), float(rng.uniform(50, 600)))
                    for _ in range(4)]
            right = [det(Eye.RIGHT, ObjectLabel.RED_BLOCK,
                         float(rng.uniform(50, 1000)), float(rng.uniform(50, 600)))
                     for _ in range(4)]
            counts = [len(pair_detections(left, right, tol)[0]) for tol in (0, 10, 20, 50, 1000)]
            assert counts == sorted(counts)

    def test_pairs_satisfy_invariants_by_construction(self):
        rng = np.random.default_rng(41)
        for _ in range(30):
            left = [det(Eye.LEFT, ObjectLabel.GREEN_BLOCK,
                        float(rng.uniform(200, 1200)), float(rng.uniform(300, 340)))
                    for _ in range(5)]
            right = [det(Eye.RIGHT, ObjectLabel.GREEN_BLOCK,
                         float(rng.uniform(50, 1000)), float(rng.uniform(300, 340)))
                     for _ in range(5)]
            pairs, _ = pair_detections(left, right)
            for p in pairs:
                assert p.left_center[0] > p.right_center[0]
                assert abs(p.left_center[1] - p.right_center[1]) <= 20.0
