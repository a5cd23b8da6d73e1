"""The two-link camera arm: forward and inverse kinematics.

The arm is a base servo (pan about +y), a bottom servo and a top servo in the
rotated vertical plane, and a linear actuator that stretches the upper arm.
Inverse kinematics sweeps the bottom servo outward from its current angle in
quarter-degree steps and takes the first angle that leaves the remaining
distance to the target inside the actuator's range, so solutions are
deterministic and stay close to the current posture.
"""

import numpy as np

from camsteer import ArmParams, CameraCommand, Pan, Zoom, apply_command, \
    forward_kinematics, inverse_kinematics
from camsteer.arm import DEFAULT_STATE, camera_pitch_deg

params = ArmParams()
print(f"links: {params.l1_mm} mm + ({params.l2_mm} mm + extension of "
      f"{params.ext_range_mm[0]}..{params.ext_range_mm[1]} mm), "
      f"camera bracket pitched {params.bracket_pitch_deg} deg")

pose = forward_kinematics(DEFAULT_STATE, params)
print(f"\nhome state {DEFAULT_STATE}")
print(f"  camera at {np.round(pose.position, 2)} mm, "
      f"pitch {camera_pitch_deg(DEFAULT_STATE, params):.1f} deg")

# Inverse kinematics: ask for a nearby target and look at the joints chosen.
target = (320.0, 150.0, 60.0)
solution = inverse_kinematics(target, DEFAULT_STATE, params)
reached = forward_kinematics(solution, params)
print(f"\nIK to {target}:")
print(f"  joints: base {solution.theta_base_deg:.2f}, bottom {solution.theta_bottom_deg:.2f}, "
      f"top {solution.theta_top_deg:.2f}, extension {solution.extension_mm:.2f}")
print(f"  reached {np.round(reached.position, 3)} mm "
      f"(error {np.max(np.abs(reached.position - np.asarray(target))):.2e} mm)")

# Reachability scan: how much of the radial/height plane the arm covers.
reachable = 0
total = 0
for radial in np.arange(50.0, 500.0, 25.0):
    row = ""
    for height in np.arange(0.0, 500.0, 25.0):
        total += 1
        try:
            inverse_kinematics((radial, height, 0.0), DEFAULT_STATE, params)
            row += "#"
            reachable += 1
        except Exception:
            row += "."
    print(f"  r={radial:4.0f} {row}")
print(f"reachable: {reachable}/{total} grid cells (rows: radial 50..475 mm, "
      "cols: height 0..475 mm)")

# Discrete command stepping: pan steps the base, zoom rides the optical axis.
state = DEFAULT_STATE
for command in (CameraCommand(pan=Pan.RIGHT), CameraCommand(pan=Pan.RIGHT),
                CameraCommand(zoom=Zoom.IN)):
    state, blocked = apply_command(state, command, params)
    pose = forward_kinematics(state, params)
    print(f"after zoom={command.zoom.value} pan={command.pan.value}: base "
          f"{state.theta_base_deg:.1f} deg, camera {np.round(pose.position, 1)}"
          + (" [blocked]" if blocked else ""))
