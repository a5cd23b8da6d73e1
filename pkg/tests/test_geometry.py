"""Geometry tests: triangulation equations, camera frames, plane projection.

The forward pinhole model in camsteer.sim is the independent oracle here:
points are projected with it and recovered with the triangulation path.
"""

import math

import numpy as np
import pytest

from camsteer.errors import (
    DegeneratePlane,
    EmptyObjectList,
    GimbalDegenerate,
    NegativeDistance,
    ZeroOrNegativeDisparity,
)
from camsteer.geometry import (
    CameraPose,
    ObjectEstimate,
    StereoRig,
    build_pose,
    horizontal_offset,
    object_distance,
    plane_distance,
    project_to_plane,
    triangulate,
    vertical_offset,
    visible_half_height,
)
from camsteer.matching import ObjectLabel, PairedObservation
from camsteer.sim import pinhole_project

RIG = StereoRig()


def frustum_points(rng, pose, n, depth_range=(200.0, 1500.0)):
    """Random points inside the view frustum of a pose, by construction."""
    d = rng.uniform(*depth_range, size=n)
    u = rng.uniform(-0.7, 0.7, size=n) * d * (RIG.center_x / RIG.focal_px)
    v = rng.uniform(-0.7, 0.7, size=n) * d * (RIG.center_y / RIG.focal_px)
    return (pose.position[None, :] + d[:, None] * pose.normal[None, :]
            + u[:, None] * pose.horizontal[None, :] + v[:, None] * pose.vertical[None, :])


class TestDisparityEquations:
    def test_object_distance_examples(self):
        assert object_distance(700, 630, RIG) == pytest.approx(630.0)
        assert object_distance(703, 640, RIG) == pytest.approx(700.0)

    def test_zero_disparity_rejected(self):
        with pytest.raises(ZeroOrNegativeDisparity):
            object_distance(640, 640, RIG)
        with pytest.raises(ZeroOrNegativeDisparity):
            object_distance(600, 640, RIG)

    def test_horizontal_offset_examples(self):
        assert horizontal_offset(703, 640, RIG) == pytest.approx(31.5)
        assert horizontal_offset(766, 703, RIG) == pytest.approx(94.5)
        assert horizontal_offset(640, 577, RIG) == pytest.approx(-31.5)

    def test_vertical_offset_examples(self):
        assert vertical_offset(360, 700, 630, RIG) == 0.0
        assert vertical_offset(290, 703, 640, RIG) == pytest.approx(70.0)
        assert vertical_offset(430, 710, 640, RIG) == pytest.approx(-63.0)

    def test_offset_identities(self):
        # d_h - S/2 == d*(right_x - cx)/f and d_v == d*(cy - right_y)/f
        rng = np.random.default_rng(11)
        for _ in range(500):
            rx = rng.uniform(0, RIG.image_width)
            lx = rx + rng.uniform(5.0, 300.0)
            ry = rng.uniform(0, RIG.image_height)
            d = object_distance(lx, rx, RIG)
            dh = horizontal_offset(lx, rx, RIG)
            dv = vertical_offset(ry, lx, rx, RIG)
            lhs = dh - RIG.baseline_mm / 2
            rhs = d * (rx - RIG.center_x) / RIG.focal_px
            assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)
            assert dv == pytest.approx(d * (RIG.center_y - ry) / RIG.focal_px, rel=1e-9, abs=1e-9)


class TestTriangulate:
    def test_level_pose_example(self):
        pose = build_pose((0, 200, 0), 0, 0)
        obs = PairedObservation(ObjectLabel.RED_BLOCK, (700, 360), (630, 360))
        est = triangulate(obs, pose, RIG)
        assert est.position == pytest.approx([630.0, 200.0, 22.5])
        assert (est.depth_mm, est.horiz_mm, est.vert_mm) == pytest.approx((630.0, 22.5, 0.0))

    def test_origin_pose_example(self):
        pose = build_pose((0, 0, 0), 0, 0)
        obs = PairedObservation(ObjectLabel.RED_BLOCK, (703, 360), (640, 360))
        est = triangulate(obs, pose, RIG)
        assert est.position == pytest.approx([700.0, 0.0, 31.5])

    def test_degenerate_pair_rejected(self):
        with pytest.raises(ValueError):
            PairedObservation(ObjectLabel.RED_BLOCK, (640, 360), (640, 360))

    def test_round_trip_against_pinhole_oracle(self):
        rng = np.random.default_rng(17)
        for _ in range(25):
            pose = build_pose(rng.uniform(-100, 100, size=3),
                              rng.uniform(-60, 60), rng.uniform(-45, 45))
            for point in frustum_points(rng, pose, 40):
                (lx, ly), (rx, ry) = pinhole_project(point, pose, RIG)
                obs = PairedObservation(ObjectLabel.RED_BLOCK, (lx, ly), (rx, ry))
                est = triangulate(obs, pose, RIG)
                assert np.max(np.abs(est.position - point)) <= 1e-6


class TestBuildPose:
    def test_identity_orientation(self):
        pose = build_pose((0, 0, 0), 0, 0)
        assert pose.normal == pytest.approx([1, 0, 0])
        assert pose.horizontal == pytest.approx([0, 0, 1])
        assert pose.vertical == pytest.approx([0, 1, 0])

    def test_yaw_90(self):
        pose = build_pose((0, 0, 0), 90, 0)
        assert pose.normal == pytest.approx([0, 0, 1], abs=1e-12)
        assert pose.horizontal == pytest.approx([-1, 0, 0], abs=1e-12)
        assert pose.vertical == pytest.approx([0, 1, 0], abs=1e-12)

    def test_pitch_down_30(self):
        pose = build_pose((0, 0, 0), 0, -30)
        assert pose.normal == pytest.approx([math.cos(math.radians(30)),
                                             -math.sin(math.radians(30)), 0])
        assert float(pose.vertical @ np.array([0, 1, 0])) == pytest.approx(
            math.cos(math.radians(30)))

    def test_gimbal_limits(self):
        for pitch in (90, -90, 120):
            with pytest.raises(GimbalDegenerate):
                build_pose((0, 0, 0), 0, pitch)

    def test_orthonormality_over_random_angles(self):
        rng = np.random.default_rng(5)
        yaws = rng.uniform(-180, 180, size=10_000)
        pitches = rng.uniform(-89.9, 89.9, size=10_000)
        for yaw, pitch in zip(yaws, pitches):
            pose = build_pose((0, 0, 0), yaw, pitch)  # CameraPose validates on build
            assert abs(np.linalg.norm(pose.normal) - 1) <= 1e-9

    def test_bad_frame_rejected(self):
        with pytest.raises(ValueError):
            CameraPose((0, 0, 0), (1, 0, 0), (0, 0, 2), (0, 1, 0))
        with pytest.raises(ValueError):
            CameraPose((0, 0, 0), (1, 0, 0), (0, 0, 1), (0, -1, 0))


class TestPlane:
    def test_plane_distance_examples(self):
        pose = build_pose((0, 0, 0), 0, 0)
        assert plane_distance(pose, (630, 200, 22.5)) == pytest.approx(630.0)
        assert plane_distance(pose, pose.position) == 0.0
        pose2 = build_pose((100, 0, 0), 0, 0)
        assert plane_distance(pose2, (630, 0, 0)) == pytest.approx(530.0)

    def test_visible_half_height(self):
        assert visible_half_height(630, RIG) == pytest.approx(363.731, abs=1e-3)
        assert visible_half_height(0, RIG) == 0.0
        rig45 = StereoRig(half_fov_v_deg=45)
        assert visible_half_height(1000, rig45) == pytest.approx(1000.0)
        with pytest.raises(NegativeDistance):
            visible_half_height(-1, RIG)

    def _est(self, position):
        p = np.asarray(position, dtype=float)
        return ObjectEstimate(ObjectLabel.RED_BLOCK, p, max(p[0], 1.0), 0.0, 0.0)

    def test_single_object(self):
        pose = build_pose((0, 0, 0), 0, 0)
        report = project_to_plane([self._est((700, 0, 31.5))], pose, RIG)
        assert report.centroid_uv == pytest.approx((31.5, 0.0))
        assert report.mean_radius_mm == 0.0
        assert report.d_cam_mm == pytest.approx(700.0)

    def test_symmetric_pair(self):
        pose = build_pose((0, 0, 0), 0, 0)
        report = project_to_plane([self._est((700, 0, 100)), self._est((700, 0, -100))],
                                  pose, RIG)
        assert report.centroid_uv == pytest.approx((0.0, 0.0))
        assert report.mean_radius_mm == pytest.approx(100.0)
        assert report.h_visible_mm == pytest.approx(report.d_cam_mm * math.tan(math.radians(30)))

    def test_projection_kills_depth(self):
        pose = build_pose((0, 0, 0), 0, 0)
        near_far = [self._est((600, 20, 50)), self._est((800, 20, 50))]
        report = project_to_plane(near_far, pose, RIG)
        (_, uv1), (_, uv2) = report.object_uv
        assert uv1 == pytest.approx(uv2)
        assert uv1 == pytest.approx((50.0, 20.0))

    def test_centroid_is_mean_of_object_uv(self):
        rng = np.random.default_rng(23)
        pose = build_pose((10, 20, -5), 15, -20)
        pts = frustum_points(rng, pose, 12, depth_range=(300.0, 900.0))
        ests = [self._est(p) for p in pts]
        report = project_to_plane(ests, pose, RIG)
        uvs = np.array([uv for _, uv in report.object_uv])
        assert np.max(np.abs(uvs.mean(axis=0) - report.centroid_uv)) <= 1e-9

    def test_invariant_under_normal_shifts(self):
        pose = build_pose((0, 0, 0), 0, 0)
        base = [self._est((500, 10, -30)), self._est((600, -40, 80))]
        shifted = [self._est(np.asarray(e.position) + 37.0 * pose.normal) for e in base]
        r1 = project_to_plane(base, pose, RIG)
        r2 = project_to_plane(shifted, pose, RIG)
        for (_, uv1), (_, uv2) in zip(r1.object_uv, r2.object_uv):
            assert uv1 == pytest.approx(uv2)

    def test_empty_and_degenerate(self):
        pose = build_pose((0, 0, 0), 0, 0)
        with pytest.raises(EmptyObjectList):
            project_to_plane([], pose, RIG)
        behind = [self._est((500, 0, 0))]
        back_pose = build_pose((1000, 0, 0), 0, 0)
        with pytest.raises(DegeneratePlane):
            project_to_plane(behind, back_pose, RIG)


class TestRig:
    def test_defaults(self):
        assert RIG.center_x == 640.0 and RIG.center_y == 360.0

    def test_validation(self):
        with pytest.raises(ValueError):
            StereoRig(focal_px=0)
        with pytest.raises(ValueError):
            StereoRig(image_width=1281)
