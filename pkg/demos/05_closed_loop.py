"""Closing the loop: perceive, plan, act, repeat until the view is good.

Each step renders the scene into per-eye detections, pairs and triangulates
them, runs the view-control rules, and applies the resulting command to the
arm. The loop stops when the command is all-none (converged) or the step
budget runs out. Everything is deterministic for a fixed seed.

Record files for the scene and the trajectory land next to this script so
the `camsteer simulate` CLI can replay the same run:

    camsteer simulate --scene demos/out/scene.csv
"""

from pathlib import Path

import numpy as np

from camsteer.arm import DEFAULT_STATE
from camsteer.records import write_scene, write_trajectory
from camsteer.sim import run_closed_loop, sample_scene

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

rng = np.random.default_rng(45)
scene = sample_scene(rng, n_objects=5)
print("scene:")
for obj in scene:
    print(f"  {obj.label.value:<13} at ({obj.position[0]:6.1f}, "
          f"{obj.position[1]:6.1f}, {obj.position[2]:6.1f}) mm")

result = run_closed_loop(scene, DEFAULT_STATE, max_steps=200)
print(f"\nconverged={result.converged} in {result.steps} steps\n")
print(f"{'step':>4} {'zoom':>5} {'tilt':>5} {'pan':>6} {'d_cam':>7} "
      f"{'spread%':>8} {'u':>7} {'v':>7}")
for i, step in enumerate(result.trajectory, start=1):
    r = step.report
    print(f"{i:>4} {step.command.zoom.value:>5} {step.command.tilt.value:>5} "
          f"{step.command.pan.value:>6} {r.d_cam_mm:7.1f} "
          f"{100 * r.mean_radius_mm / r.h_visible_mm:7.1f}% "
          f"{r.centroid_uv[0]:7.1f} {r.centroid_uv[1]:7.1f}")

write_scene(out_dir / "scene.csv", scene)
write_trajectory(out_dir / "trajectory.csv", result)
print(f"\nwrote {out_dir / 'scene.csv'} and {out_dir / 'trajectory.csv'}")

# Convergence is a fixed point: one more step from the final state proposes
# no movement again.
rerun = run_closed_loop(scene, result.trajectory[-1].state, max_steps=5)
print(f"re-run from the converged state: converged={rerun.converged} "
      f"steps={rerun.steps}")
