"""Runtime configuration with room-scale defaults.

Everything a user may want to tune lives here; modules take a config object
rather than reading globals, so tests can pin values explicitly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from pathlib import Path


@dataclass(frozen=True)
class GraphConfig:
    # Support predicate: bottom face within eps_z of the supporter's top face
    # and at least footprint_frac of the footprint contained in it.
    support_eps_z: float = 0.05
    support_footprint_frac: float = 0.6
    # CloseTo gap threshold doubles as the region-clustering eps.
    close_gap: float = 1.0
    # Directional relations: 90 degree cone in the anchor's frame, bounded gap.
    directional_cone_deg: float = 90.0
    directional_gap: float = 2.5
    # Fallback orientation probing.
    orientation_probe_range: float = 3.0
    cluster_eps: float = 1.0
    cluster_min_pts: int = 2


@dataclass(frozen=True)
class AreaConfig:
    adjacent_width: float = 0.6
    close_width: float = 1.2
    directional_depth: float = 1.5
    aligned_half_width: float = 0.4
    aligned_overhang: float = 2.5
    interact_cone_deg: float = 90.0


@dataclass(frozen=True)
class NavConfig:
    cell_size: float = 0.25
    window: int = 16
    replan_period: int = 8
    # Objects whose vertical span intersects this band block walking.
    walk_band_low: float = 0.1
    walk_band_high: float = 1.8


@dataclass(frozen=True)
class MotionConfig:
    fps: int = 30
    frames_per_tick: int = 10
    search_interval: int = 10
    blend_frames: int = 5
    max_speed: float = 2.0
    weight_keyjoint_pos: float = 1.0
    weight_keyjoint_vel: float = 1.0
    weight_future_pos: float = 1.0
    weight_future_dir: float = 1.0
    weight_relative: float = 1.0
    weight_root_height: float = 1.0


@dataclass(frozen=True)
class EngineConfig:
    # Frames an interaction runs before the participant is done; group events
    # share one clock started when the last participant is ready.
    default_action_frames: int = 150
    action_frames: dict[str, int] = field(default_factory=dict)
    transition_frames: int = 45
    arrival_tolerance_cells: float = 0.5
    arrival_angle_deg: float = 15.0


@dataclass(frozen=True)
class PlanningConfig:
    retries: int = 3
    temperature: float = 0.1
    max_tokens: int = 1024


@dataclass(frozen=True)
class Config:
    graph: GraphConfig = field(default_factory=GraphConfig)
    area: AreaConfig = field(default_factory=AreaConfig)
    nav: NavConfig = field(default_factory=NavConfig)
    motion: MotionConfig = field(default_factory=MotionConfig)
    engine: EngineConfig = field(default_factory=EngineConfig)
    planning: PlanningConfig = field(default_factory=PlanningConfig)

    @staticmethod
    def load(path: str | Path) -> "Config":
        """Read a JSON config file; unknown keys are rejected."""
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        sections = {}
        for f in fields(Config):
            if f.name in raw:
                section_cls = f.default_factory  # type: ignore[union-attr]
                known = {sf.name for sf in fields(section_cls)}
                unknown = set(raw[f.name]) - known
                if unknown:
                    raise ValueError(f"unknown config keys in {f.name}: {sorted(unknown)}")
                sections[f.name] = section_cls(**raw[f.name])
        unknown = set(raw) - {f.name for f in fields(Config)}
        if unknown:
            raise ValueError(f"unknown config sections: {sorted(unknown)}")
        return Config(**sections)


DEFAULT_CONFIG = Config()
