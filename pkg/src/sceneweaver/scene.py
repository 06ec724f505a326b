"""Scene loading and 3D scene-graph construction.

A scene file is JSON with a ``floor`` polygon and a flat ``objects`` list.
Graph construction runs in two passes: support levels first (the floor is the
implicit level-0 supporter), then horizontal relations restricted to pairs on
the same support level and Above/Below restricted to hangable objects.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .config import GraphConfig
from .errors import CyclicSupport, DuplicateId, EmptyFloor, SchemaError, UnknownObject
from .geometry import (
    OrientedBox,
    box_distance,
    ensure_ccw,
    footprint_overlap_area,
    footprints_overlap,
    polygon_area,
    segment_polygon_entry,
    to_shapely,
    unit,
)

HANGABLE = -1

ATTRIBUTES = ("sittable", "lieable", "interactable")

RELATION_KINDS = (
    "Supports", "Above", "Below",
    "InFrontOf", "Behind", "LeftOf", "RightOf", "CloseTo",
)

INVERSE_KIND = {
    "InFrontOf": "Behind", "Behind": "InFrontOf",
    "LeftOf": "RightOf", "RightOf": "LeftOf",
    "Above": "Below", "Below": "Above",
    "CloseTo": "CloseTo",
}

# Built-in label generalization used by the benchmark preprocessing flag.
GENERAL_LABELS = {
    "kitchen_cabinet": "cabinet",
    "kitchen_counter": "counter",
    "kitchen_table": "table",
    "office_chair": "chair",
    "office_desk": "desk",
    "dining_table": "table",
    "dining_chair": "chair",
    "coffee_table": "table",
    "bar_stool": "stool",
    "bar_counter": "counter",
}


@dataclass
class SceneObject:
    id: str
    label: str
    box: OrientedBox
    orientation: np.ndarray | None = None
    attributes: frozenset[str] = frozenset()
    support_level: int | None = None  # HANGABLE for hangable objects

    def __post_init__(self):
        if self.orientation is not None:
            self.orientation = np.asarray(self.orientation, dtype=float)
            n = float(np.linalg.norm(self.orientation))
            if abs(n - 1.0) > 1e-6:
                if n < 1e-9:
                    raise SchemaError(f"object {self.id!r}: zero orientation vector")
                self.orientation = self.orientation / n

    @property
    def hangable(self) -> bool:
        return self.support_level == HANGABLE

    def footprint(self) -> np.ndarray:
        return self.box.footprint()


@dataclass(frozen=True)
class RelationEdge:
    source: str
    target: str
    kind: str

    def __post_init__(self):
        if self.source == self.target:
            raise ValueError("relation endpoints must differ")
        if self.kind not in RELATION_KINDS:
            raise ValueError(f"unknown relation kind {self.kind!r}")


@dataclass
class SceneGraph:
    objects: list[SceneObject]
    edges: list[RelationEdge] = field(default_factory=list)
    floor_bounds: np.ndarray | None = None
    name: str = "scene"
    actions: tuple[str, ...] = ()

    def __post_init__(self):
        self._by_id = {o.id: o for o in self.objects}
        if len(self._by_id) != len(self.objects):
            raise DuplicateId("duplicate object ids in scene")

    def get(self, object_id: str) -> SceneObject:
        try:
            return self._by_id[object_id]
        except KeyError:
            raise UnknownObject(object_id) from None

    def has(self, object_id: str) -> bool:
        return object_id in self._by_id

    def edges_from(self, source: str, kind: str) -> list[RelationEdge]:
        return [e for e in self.edges if e.source == source and e.kind == kind]

    def edges_to(self, target: str, kind: str) -> list[RelationEdge]:
        return [e for e in self.edges if e.target == target and e.kind == kind]

    def supporter_of(self, object_id: str) -> str | None:
        for e in self.edges:
            if e.kind == "Supports" and e.target == object_id:
                return e.source
        return None


def _require(cond: bool, msg: str):
    if not cond:
        raise SchemaError(msg)


def load_scene(path: str | Path, *, generalize_labels: bool = False,
               randomize_indices_seed: int | None = None) -> SceneGraph:
    """Load a scene file into a graph with objects only (no edges yet).

    ``generalize_labels`` replaces specific labels with general ones and
    ``randomize_indices_seed`` reshuffles the numeric suffixes of identically
    labeled objects, mirroring the benchmark's anti-cue preprocessing.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read scene file {path}: {exc}") from exc

    _require(isinstance(raw, dict), "scene file must be a JSON object")
    _require("floor" in raw, "scene file missing 'floor'")
    _require("objects" in raw, "scene file missing 'objects'")

    floor = np.asarray(raw["floor"], dtype=float)
    _require(floor.ndim == 2 and floor.shape[1] == 2 and len(floor) >= 3,
             "'floor' must be a polygon with >= 3 [x, y] vertices")
    if abs(polygon_area(floor)) < 1e-9:
        raise EmptyFloor("floor polygon has zero area")
    floor = ensure_ccw(floor)

    generalizations = dict(GENERAL_LABELS)
    generalizations.update(raw.get("label_generalizations", {}))

    objects: list[SceneObject] = []
    seen: set[str] = set()
    for entry in raw["objects"]:
        _require(isinstance(entry, dict), "object entries must be JSON objects")
        for key in ("id", "label", "center", "half_extents"):
            _require(key in entry, f"object entry missing '{key}'")
        oid = str(entry["id"])
        if oid in seen:
            raise DuplicateId(f"duplicate object id {oid!r}")
        seen.add(oid)
        label = str(entry["label"])
        if generalize_labels:
            label = generalizations.get(label, label)
        attrs = frozenset(entry.get("attributes", []))
        unknown_attrs = attrs - set(ATTRIBUTES)
        _require(not unknown_attrs, f"object {oid!r}: unknown attributes {sorted(unknown_attrs)}")
        try:
            box = OrientedBox(entry["center"], entry["half_extents"], float(entry.get("yaw", 0.0)))
        except ValueError as exc:
            raise SchemaError(f"object {oid!r}: {exc}") from exc
        orientation = entry.get("orientation")
        objects.append(SceneObject(
            id=oid, label=label, box=box,
            orientation=None if orientation is None else np.asarray(orientation, dtype=float),
            attributes=attrs,
        ))

    if randomize_indices_seed is not None:
        objects = _randomize_indices(objects, randomize_indices_seed)

    return SceneGraph(
        objects=objects,
        floor_bounds=floor,
        name=str(raw.get("name", path.stem)),
        actions=tuple(raw.get("actions", [])),
    )


def _randomize_indices(objects: list[SceneObject], seed: int) -> list[SceneObject]:
    """Permute the _<n> suffixes within each label group, keeping ids unique."""
    import random

    rng = random.Random(seed)
    groups: dict[str, list[int]] = {}
    for i, obj in enumerate(objects):
        if "_" in obj.id and obj.id.rsplit("_", 1)[1].isdigit():
            groups.setdefault(obj.id.rsplit("_", 1)[0], []).append(i)
    renamed = list(objects)
    for prefix, idxs in sorted(groups.items()):
        suffixes = [objects[i].id.rsplit("_", 1)[1] for i in idxs]
        shuffled = suffixes[:]
        rng.shuffle(shuffled)
        for i, suf in zip(idxs, shuffled):
            renamed[i] = replace(objects[i], id=f"{prefix}_{suf}")
    return renamed


# --- support structure ---


def compute_support(graph: SceneGraph, cfg: GraphConfig = GraphConfig()) -> SceneGraph:
    """Assign support levels and Supports edges in place, returning the graph.

    Floor-resting objects get level 0.  A supported object sits with its bottom
    within ``support_eps_z`` of the supporter's top and most of its footprint
    inside the supporter's.  Everything else hangs.
    """
    eps = cfg.support_eps_z
    order = sorted(graph.objects, key=lambda o: (o.box.bottom, o.id))
    edges = [e for e in graph.edges if e.kind != "Supports"]
    for obj in order:
        obj.support_level = None

    for obj in order:
        if obj.box.bottom <= eps:
            obj.support_level = 0
            continue
        fp = obj.footprint()
        fp_area = abs(polygon_area(fp))
        best: SceneObject | None = None
        for cand in order:
            if cand.id == obj.id or cand.support_level in (None, HANGABLE):
                continue
            if abs(cand.box.top - obj.box.bottom) > eps:
                continue
            contained = footprint_overlap_area(fp, cand.footprint())
            if contained >= cfg.support_footprint_frac * fp_area:
                if best is None or (cand.box.top, cand.id) > (best.box.top, best.id):
                    best = cand
        if best is not None:
            if best.box.bottom >= obj.box.top - 1e-9:
                raise CyclicSupport(f"{best.id} cannot support {obj.id}")
            obj.support_level = best.support_level + 1  # type: ignore[operator]
            edges.append(RelationEdge(best.id, obj.id, "Supports"))
        else:
            obj.support_level = HANGABLE

    graph.edges = edges
    return graph


# --- orientation ---


def estimate_orientation(obj: SceneObject, graph: SceneGraph,
                         cfg: GraphConfig = GraphConfig()) -> np.ndarray:
    """Facing direction: the explicit one if present, else the box-axis
    direction with the largest clearance before hitting another box or the
    floor boundary.  Ties prefer +x, then +y."""
    if obj.orientation is not None:
        return obj.orientation

    max_range = cfg.orientation_probe_range
    blockers = [
        o for o in graph.objects
        if o.id != obj.id
        and o.box.bottom < obj.box.top and o.box.top > obj.box.bottom
    ]
    origin = obj.box.center2d

    def clearance(direction: np.ndarray) -> float:
        # Extent of our own footprint along the probe direction.
        fp = obj.footprint()
        own = float(np.max((fp - origin) @ direction))
        best = max_range
        for other in blockers:
            hit = segment_polygon_entry(origin, direction, max_range + own, other.footprint())
            if hit is not None:
                best = min(best, max(0.0, hit - own))
        if graph.floor_bounds is not None:
            boundary = to_shapely(graph.floor_bounds).exterior
            from shapely.geometry import LineString

            seg = LineString([tuple(origin), tuple(origin + direction * (max_range + own))])
            inter = seg.intersection(boundary)
            if not inter.is_empty:
                coords = []
                for g in getattr(inter, "geoms", [inter]):
                    coords.extend(g.coords)
                hit = min(math.hypot(c[0] - origin[0], c[1] - origin[1]) for c in coords)
                best = min(best, max(0.0, hit - own))
        return best

    candidates = obj.box.axis_directions()

    def tie_key(d: np.ndarray) -> tuple[float, float, float]:
        return (-round(clearance(d), 9), -round(float(d[0]), 9), -round(float(d[1]), 9))

    best_dir = min(candidates, key=tie_key)
    return unit(best_dir)


# --- horizontal and vertical relations ---


def _cone_membership(anchor: SceneObject, direction: np.ndarray, other: SceneObject,
                     half_angle: float) -> bool:
    rel = other.box.center2d - anchor.box.center2d
    n = float(np.linalg.norm(rel))
    if n < 1e-9:
        return False
    cos_angle = float(rel @ direction) / n
    return cos_angle >= math.cos(half_angle) - 1e-12


def compute_relations(graph: SceneGraph, cfg: GraphConfig = GraphConfig()) -> SceneGraph:
    """Add horizontal edges between same-level pairs and Above/Below for
    hangable objects.  Every directional edge gets its formal inverse."""
    if any(o.support_level is None for o in graph.objects):
        raise ValueError("compute_support must run before compute_relations")

    half_angle = math.radians(cfg.directional_cone_deg / 2.0)
    edge_set: set[tuple[str, str, str]] = {(e.source, e.target, e.kind) for e in graph.edges}

    def add(source: str, target: str, kind: str):
        edge_set.add((source, target, kind))
        inv = INVERSE_KIND.get(kind)
        if inv:
            edge_set.add((target, source, inv))

    leveled = [o for o in graph.objects if not o.hangable]
    for a in leveled:
        facing = estimate_orientation(a, graph, cfg)
        left = np.array([-facing[1], facing[0]])
        for b in leveled:
            if b.id == a.id or b.support_level != a.support_level:
                continue
            gap = box_distance(a.box, b.box)
            if gap <= cfg.close_gap:
                add(a.id, b.id, "CloseTo")
            if gap <= cfg.directional_gap:
                # Edges read "<source> is <kind> <target>": b in a's front cone
                # means b is in front of a.
                if _cone_membership(a, facing, b, half_angle):
                    add(b.id, a.id, "InFrontOf")
                elif _cone_membership(a, -facing, b, half_angle):
                    add(b.id, a.id, "Behind")
                elif _cone_membership(a, left, b, half_angle):
                    add(b.id, a.id, "LeftOf")
                elif _cone_membership(a, -left, b, half_angle):
                    add(b.id, a.id, "RightOf")

    hangables = [o for o in graph.objects if o.hangable]
    for h in hangables:
        for o in graph.objects:
            if o.id == h.id:
                continue
            if footprints_overlap(h.footprint(), o.footprint()):
                if h.box.center[2] > o.box.center[2]:
                    add(h.id, o.id, "Above")
                elif h.box.center[2] < o.box.center[2]:
                    add(h.id, o.id, "Below")

    graph.edges = [RelationEdge(s, t, k) for s, t, k in sorted(edge_set)]
    return graph


def build_scene_graph(graph: SceneGraph, cfg: GraphConfig = GraphConfig()) -> SceneGraph:
    return compute_relations(compute_support(graph, cfg), cfg)


# --- serialization ---


def graph_to_structured_text(graph: SceneGraph, regions=()) -> str:
    """Deterministic JSON rendering of the graph for prompts and export."""
    def obj_record(o: SceneObject) -> dict:
        record = {
            "id": o.id,
            "label": o.label,
            "center": [round(float(v), 6) for v in o.box.center],
            "half_extents": [round(float(v), 6) for v in o.box.half_extents],
            "yaw": round(o.box.yaw, 6),
            "attributes": sorted(o.attributes),
            "support": "hangable" if o.hangable else o.support_level,
        }
        if o.orientation is not None:
            record["orientation"] = [round(float(v), 6) for v in o.orientation]
        return record

    doc = {
        "name": graph.name,
        "floor": [[round(float(x), 6) for x in pt] for pt in (
            graph.floor_bounds.tolist() if graph.floor_bounds is not None else [])],
        "objects": [obj_record(o) for o in sorted(graph.objects, key=lambda o: o.id)],
        "edges": [
            {"source": e.source, "target": e.target, "kind": e.kind}
            for e in sorted(graph.edges, key=lambda e: (e.source, e.target, e.kind))
        ],
        "regions": [
            {
                "id": r.id,
                "members": sorted(r.member_ids),
                "centroid": [round(float(v), 6) for v in r.centroid],
            }
            for r in sorted(regions, key=lambda r: r.id)
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def point_on_floor(graph: SceneGraph, point) -> bool:
    from shapely.geometry import Point

    if graph.floor_bounds is None:
        return False
    return to_shapely(graph.floor_bounds).buffer(1e-9).contains(
        Point(float(point[0]), float(point[1])))
