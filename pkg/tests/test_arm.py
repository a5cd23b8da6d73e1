"""Arm model tests: forward/inverse kinematics, command stepping, line codec."""

import numpy as np
import pytest

from camsteer.arm import (
    DEFAULT_STATE,
    ArmParams,
    ArmState,
    apply_command,
    camera_pitch_deg,
    encode_command,
    encode_report,
    forward_kinematics,
    inverse_kinematics,
    parse_command,
    parse_report,
    serve,
)
from camsteer.control import CameraCommand, Pan, Tilt, Zoom
from camsteer.errors import LimitViolation, MalformedLine, Unreachable

PARAMS = ArmParams()


class TestForwardKinematics:
    def test_home_state(self):
        pose = forward_kinematics(DEFAULT_STATE, PARAMS)
        assert pose.position == pytest.approx([200.0, 200.0, 0.0], abs=1e-9)
        assert camera_pitch_deg(DEFAULT_STATE, PARAMS) == pytest.approx(-30.0)

    def test_base_rotation_maps_radial_to_z(self):
        pose = forward_kinematics(ArmState(90.0, 90.0, -90.0, 50.0), PARAMS)
        assert pose.position == pytest.approx([0.0, 200.0, 200.0], abs=1e-9)

    def test_collinear_vertical_stack(self):
        pose = forward_kinematics(ArmState(0.0, 90.0, 0.0, 0.0), PARAMS)
        assert pose.position == pytest.approx([0.0, 350.0, 0.0], abs=1e-9)

    def test_limit_violation(self):
        with pytest.raises(LimitViolation):
            forward_kinematics(ArmState(120.0, 90.0, -90.0, 50.0), PARAMS)
        with pytest.raises(LimitViolation):
            forward_kinematics(ArmState(0.0, 90.0, -90.0, 150.0), PARAMS)


class TestInverseKinematics:
    def test_round_trip_of_home(self):
        state = inverse_kinematics((200.0, 200.0, 0.0), DEFAULT_STATE, PARAMS)
        assert state == ArmState(0.0, 90.0, -90.0, 50.0, 0.0)

    def test_boundary_of_reach_zero_extension(self):
        state = inverse_kinematics((0.0, 350.0, 0.0), DEFAULT_STATE, PARAMS)
        assert state.theta_bottom_deg == pytest.approx(90.0)
        assert state.theta_top_deg == pytest.approx(0.0)
        assert state.extension_mm == pytest.approx(0.0)

    def test_unreachable(self):
        with pytest.raises(Unreachable):
            inverse_kinematics((10000.0, 0.0, 0.0), DEFAULT_STATE, PARAMS)
        with pytest.raises(Unreachable):
            inverse_kinematics((-300.0, 100.0, 0.0), DEFAULT_STATE, PARAMS)  # base behind

    def test_deterministic(self):
        target = (310.0, 150.0, 40.0)
        first = inverse_kinematics(target, DEFAULT_STATE, PARAMS)
        for _ in range(5):
            assert inverse_kinematics(target, DEFAULT_STATE, PARAMS) == first

    def test_grid_round_trip(self):
        # reachable planar annulus grid: FK(IK(target)) lands within 1e-3 mm
        count = 0
        for radial in np.arange(150.0, 441.0, 10.0):
            for height in np.arange(0.0, 441.0, 10.0):
                if not 150.0 <= np.hypot(radial, height) <= 449.0:
                    continue
                target = np.array([radial, height, 0.0])
                state = inverse_kinematics(target, DEFAULT_STATE, PARAMS)
                pose = forward_kinematics(state, PARAMS)
                assert np.max(np.abs(pose.position - target)) <= 1e-3
                count += 1
        assert count > 500

    def test_preserves_pitch_offset(self):
        current = ArmState(0.0, 90.0, -90.0, 50.0, 12.0)
        state = inverse_kinematics((250.0, 180.0, 10.0), current, PARAMS)
        assert state.pitch_offset_deg == 12.0


class TestApplyCommand:
    def test_all_none_is_identity(self):
        result = apply_command(DEFAULT_STATE, CameraCommand(), PARAMS)
        assert result.state == DEFAULT_STATE
        assert not result.blocked

    def test_pan_right_twice(self):
        state, _ = apply_command(DEFAULT_STATE, CameraCommand(pan=Pan.RIGHT), PARAMS)
        state, _ = apply_command(state, CameraCommand(pan=Pan.RIGHT), PARAMS)
        assert state.theta_base_deg == 4.0

    def test_pan_left_then_right_restores_exactly(self):
        state, _ = apply_command(DEFAULT_STATE, CameraCommand(pan=Pan.LEFT), PARAMS)
        state, _ = apply_command(state, CameraCommand(pan=Pan.RIGHT), PARAMS)
        assert state.theta_base_deg == DEFAULT_STATE.theta_base_deg

    def test_pan_clamps_at_limit(self):
        at_limit = ArmState(90.0, 90.0, -90.0, 50.0)
        state, _ = apply_command(at_limit, CameraCommand(pan=Pan.RIGHT), PARAMS)
        assert state.theta_base_deg == 90.0

    def test_tilt_steps_pitch_offset(self):
        state, _ = apply_command(DEFAULT_STATE, CameraCommand(tilt=Tilt.UP), PARAMS)
        assert state.pitch_offset_deg == 2.0
        state, _ = apply_command(state, CameraCommand(tilt=Tilt.DOWN), PARAMS)
        assert state.pitch_offset_deg == 0.0

    def test_zoom_advances_along_normal(self):
        pose = forward_kinematics(DEFAULT_STATE, PARAMS)
        state, blocked = apply_command(DEFAULT_STATE, CameraCommand(zoom=Zoom.IN), PARAMS)
        assert not blocked
        new_pose = forward_kinematics(state, PARAMS)
        expected = pose.position + PARAMS.zoom_step_mm * pose.normal
        assert np.max(np.abs(new_pose.position - expected)) <= 1e-3

    def test_zoom_keeps_orientation(self):
        state, _ = apply_command(DEFAULT_STATE, CameraCommand(zoom=Zoom.OUT), PARAMS)
        assert camera_pitch_deg(state, PARAMS) == pytest.approx(
            camera_pitch_deg(DEFAULT_STATE, PARAMS), abs=1e-9)

    def test_blocked_zoom_keeps_state(self):
        # fully extended straight out: zooming further in has no solution
        stretched = ArmState(0.0, 0.0, 0.0, 100.0)
        state, blocked = apply_command(stretched, CameraCommand(zoom=Zoom.OUT), PARAMS)
        # zoom out from straight-out pitch -30 moves back and up: reachable
        assert not blocked
        far = inverse_kinematics((440.0, 80.0, 0.0), DEFAULT_STATE, PARAMS)
        state, blocked = apply_command(far, CameraCommand(zoom=Zoom.IN), PARAMS)
        if blocked:
            assert state == far


class TestCodec:
    def test_encode_report_example(self):
        pose = forward_kinematics(DEFAULT_STATE, PARAMS)
        line = encode_report(DEFAULT_STATE, pose)
        assert line == "POS,0.00,90.00,-90.00,50.00,200.00,200.00,0.00\n"

    def test_parse_command_examples(self):
        cmd = parse_command("MOV + 0 -\n")
        assert cmd == CameraCommand(zoom=Zoom.IN, tilt=Tilt.NONE, pan=Pan.LEFT)
        assert parse_command("MOV 0 0 0") == CameraCommand()

    def test_parse_command_bad_token(self):
        with pytest.raises(MalformedLine) as err:
            parse_command("MOV x 0 0")
        assert "token 1" in str(err.value)
        assert err.value.offset == 4

    def test_parse_command_bad_verb_and_arity(self):
        with pytest.raises(MalformedLine) as err:
            parse_command("MOVE + 0 0")
        assert err.value.offset == 0
        with pytest.raises(MalformedLine):
            parse_command("MOV + 0")
        with pytest.raises(MalformedLine):
            parse_command("MOV + 0 0 0")
        with pytest.raises(MalformedLine):
            parse_command("MOV  + 0 0")  # double space

    def test_command_round_trip_all_27(self):
        for zoom in Zoom:
            for tilt in Tilt:
                for pan in Pan:
                    cmd = CameraCommand(zoom, tilt, pan)
                    line = encode_command(cmd)
                    assert parse_command(line) == cmd
                    assert encode_command(parse_command(line)) == line

    def test_report_round_trip(self):
        pose = forward_kinematics(DEFAULT_STATE, PARAMS)
        line = encode_report(DEFAULT_STATE, pose)
        fields = parse_report(line)
        assert fields.theta_base_deg == 0.0
        assert fields.camera_mm == (200.0, 200.0, 0.0)
        rebuilt = encode_report(
            ArmState(fields.theta_base_deg, fields.theta_bottom_deg,
                     fields.theta_top_deg, fields.extension_mm), pose)
        assert rebuilt == line

    def test_parse_report_bad_field(self):
        with pytest.raises(MalformedLine) as err:
            parse_report("POS,0.00,oops,0.00,0.00,1.00,2.00,3.00")
        assert err.value.offset == 9


class TestServe:
    def test_session(self):
        out: list[str] = []
        final = serve(
            ["MOV 0 0 +\n", "\n", "MOV x 0 0\n", "MOV 0 0 -\n"],
            out.append, DEFAULT_STATE, PARAMS,
        )
        assert len(out) == 3
        assert out[0].startswith("POS,2.00,")
        assert out[1].startswith("ERR,4,")
        assert out[2].startswith("POS,0.00,")
        assert final.theta_base_deg == 0.0

    def test_reports_follow_each_command(self):
        out: list[str] = []
        serve(["MOV + 0 0\n"] * 3, out.append, DEFAULT_STATE, PARAMS)
        assert len(out) == 3
        for line in out:
            parse_report(line)  # must be well-formed
