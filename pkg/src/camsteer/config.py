"""Single JSON config file binding rig, control, arm, and simulation options.

Every key is optional and falls back to the built-in defaults; unknown keys
are rejected so typos fail loudly. See demos/config.json for a full example.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from pathlib import Path

from .arm import ArmParams
from .control import ControlParams
from .errors import ConfigError
from .geometry import StereoRig
from .matching import ObjectLabel
from .sim import Workspace


@dataclass(frozen=True)
class Config:
    rig: StereoRig = StereoRig()
    control: ControlParams = ControlParams()
    arm: ArmParams = ArmParams()
    workspace: Workspace = Workspace()
    pairing_tol_px: float = 20.0
    score_threshold: float = 0.0
    jitter_px: float = 0.0
    seed: int = 0
    max_steps: int = 200
    baud_pacing: bool = False


_TUPLE_KEYS = {"ext_range_mm", "base_limits_deg", "bottom_limits_deg",
               "top_limits_deg", "pitch_offset_limits_deg", "x", "y", "z"}


def _build(cls, section: dict, where: str):
    known = {f.name for f in fields(cls)}
    unknown = set(section) - known
    if unknown:
        raise ConfigError(f"unknown {where} keys: {sorted(unknown)}")
    kwargs = {}
    for key, value in section.items():
        if key in _TUPLE_KEYS:
            value = tuple(value)
        kwargs[key] = value
    try:
        return cls(**kwargs)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad {where} section: {exc}") from None


def _build_control(section: dict) -> ControlParams:
    section = dict(section)
    weights = section.pop("weights", None)
    if weights is not None:
        try:
            weights = {ObjectLabel(k): float(v) for k, v in weights.items()}
        except ValueError as exc:
            raise ConfigError(f"bad control weights: {exc}") from None
    params = _build(ControlParams, section, "control")
    if weights is None:
        return params
    return ControlParams(params.ring_center_frac, params.ring_halfwidth_frac,
                         params.recenter_frac, weights)


def load_config(path: str | Path) -> Config:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be an object")

    known = {"rig", "control", "arm", "sim", "pairing_tol_px", "score_threshold"}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"unknown top-level keys: {sorted(unknown)}")

    sim = dict(raw.get("sim", {}))
    sim_known = {"workspace", "jitter_px", "seed", "max_steps", "baud_pacing"}
    sim_unknown = set(sim) - sim_known
    if sim_unknown:
        raise ConfigError(f"unknown sim keys: {sorted(sim_unknown)}")

    return Config(
        rig=_build(StereoRig, raw.get("rig", {}), "rig"),
        control=_build_control(raw.get("control", {})),
        arm=_build(ArmParams, raw.get("arm", {}), "arm"),
        workspace=_build(Workspace, sim.get("workspace", {}), "workspace"),
        pairing_tol_px=float(raw.get("pairing_tol_px", 20.0)),
        score_threshold=float(raw.get("score_threshold", 0.0)),
        jitter_px=float(sim.get("jitter_px", 0.0)),
        seed=int(sim.get("seed", 0)),
        max_steps=int(sim.get("max_steps", 200)),
        baud_pacing=bool(sim.get("baud_pacing", False)),
    )
