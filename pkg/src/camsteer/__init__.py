"""camsteer: stereo detections in, camera steering commands out.

The pipeline: paired bounding boxes are triangulated into 3D object
estimates, the estimates are projected onto a view plane through their
centroid, and rule-based control turns the layout into discrete
zoom/tilt/pan commands that a two-link camera-arm emulator consumes over a
plain ASCII line protocol. A closed-loop simulator and evaluation metrics
round out the toolkit.
"""

from .arm import ArmParams, ArmState, apply_command, forward_kinematics, inverse_kinematics
from .config import Config, load_config
from .control import CameraCommand, ControlParams, Pan, Tilt, Zoom, plan_command
from .geometry import (
    CameraPose,
    ObjectEstimate,
    PlaneReport,
    StereoRig,
    build_pose,
    triangulate,
)
from .matching import Detection, Eye, ObjectLabel, PairedObservation, pair_detections
from .sim import LoopResult, SceneObject, Workspace, pinhole_project, render_scene, run_closed_loop

__version__ = "0.1.0"

__all__ = [
    "ArmParams", "ArmState", "apply_command", "forward_kinematics", "inverse_kinematics",
    "Config", "load_config",
    "CameraCommand", "ControlParams", "Pan", "Tilt", "Zoom", "plan_command",
    "CameraPose", "ObjectEstimate", "PlaneReport", "StereoRig", "build_pose", "triangulate",
    "Detection", "Eye", "ObjectLabel", "PairedObservation", "pair_detections",
    "LoopResult", "SceneObject", "Workspace", "pinhole_project", "render_scene",
    "run_closed_loop",
    "__version__",
]
