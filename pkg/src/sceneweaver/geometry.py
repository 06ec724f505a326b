"""Oriented boxes and 2D convex-polygon primitives.

Boxes are z-axis aligned (yaw about vertical only), so every 3D computation
decomposes into a 2D footprint part and a vertical interval part.  Footprints
are convex CCW polygons stored as (n, 2) float arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from shapely.geometry import MultiPoint, Polygon

TWO_PI = 2.0 * math.pi


def wrap_angle(theta: float) -> float:
    """Wrap to [-pi, pi)."""
    wrapped = math.fmod(theta + math.pi, TWO_PI)
    if wrapped < 0:
        wrapped += TWO_PI
    return wrapped - math.pi


def unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    n = float(np.linalg.norm(v))
    if n < 1e-12:
        raise ValueError("cannot normalize a zero vector")
    return v / n


def rot2(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def perp_left(v: np.ndarray) -> np.ndarray:
    """90 degree counterclockwise rotation (the anchor's left-hand side)."""
    return np.array([-v[1], v[0]])


@dataclass(frozen=True)
class OrientedBox:
    """Z-axis-aligned box: yawed footprint extruded over a height interval."""

    center: np.ndarray
    half_extents: np.ndarray
    yaw: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        object.__setattr__(self, "half_extents", np.asarray(self.half_extents, dtype=float))
        if self.center.shape != (3,):
            raise ValueError("center must be a 3D point")
        if self.half_extents.shape != (3,) or not np.all(self.half_extents > 0):
            raise ValueError("half_extents must be three positive lengths")
        object.__setattr__(self, "yaw", wrap_angle(float(self.yaw)))

    @property
    def bottom(self) -> float:
        return float(self.center[2] - self.half_extents[2])

    @property
    def top(self) -> float:
        return float(self.center[2] + self.half_extents[2])

    @property
    def center2d(self) -> np.ndarray:
        return self.center[:2]

    def footprint(self) -> np.ndarray:
        """CCW corner coordinates of the horizontal cross-section, shape (4, 2)."""
        hx, hy = float(self.half_extents[0]), float(self.half_extents[1])
        local = np.array([[hx, hy], [-hx, hy], [-hx, -hy], [hx, -hy]])
        return local @ rot2(self.yaw).T + self.center2d

    def corners(self) -> np.ndarray:
        """The 8 box vertices, shape (8, 3)."""
        fp = self.footprint()
        lo = np.column_stack([fp, np.full(4, self.bottom)])
        hi = np.column_stack([fp, np.full(4, self.top)])
        return np.vstack([lo, hi])

    def axis_directions(self) -> list[np.ndarray]:
        """The four horizontal box-axis directions (+x, +y, -x, -y in local frame)."""
        r = rot2(self.yaw)
        return [r @ np.array([1.0, 0.0]), r @ np.array([0.0, 1.0]),
                r @ np.array([-1.0, 0.0]), r @ np.array([0.0, -1.0])]


def ensure_ccw(pts: np.ndarray) -> np.ndarray:
    if polygon_area(pts) < 0:
        return pts[::-1].copy()
    return pts


def polygon_area(pts: np.ndarray) -> float:
    """Signed shoelace area; positive for CCW."""
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def points_in_convex(pts: np.ndarray, queries: np.ndarray, eps: float = 1e-9) -> np.ndarray:
    """Vectorized membership test of query points against one CCW convex polygon."""
    queries = np.atleast_2d(queries)
    inside = np.ones(len(queries), dtype=bool)
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        edge = b - a
        rel = queries - a
        cross = edge[0] * rel[:, 1] - edge[1] * rel[:, 0]
        inside &= cross >= -eps
    return inside


def point_in_convex(pts: np.ndarray, p, eps: float = 1e-9) -> bool:
    return bool(points_in_convex(pts, np.asarray(p, dtype=float)[None, :], eps)[0])


def interval_gap(a_lo: float, a_hi: float, b_lo: float, b_hi: float) -> float:
    return max(0.0, max(a_lo, b_lo) - min(a_hi, b_hi))


def to_shapely(pts: np.ndarray) -> Polygon:
    return Polygon(pts.tolist())


def footprint_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Minimum planar distance between two convex polygons; 0 when they touch."""
    return float(to_shapely(a).distance(to_shapely(b)))


def footprints_overlap(a: np.ndarray, b: np.ndarray, eps: float = 1e-9) -> bool:
    inter = to_shapely(a).intersection(to_shapely(b))
    return inter.area > eps


def footprint_overlap_area(a: np.ndarray, b: np.ndarray) -> float:
    return float(to_shapely(a).intersection(to_shapely(b)).area)


def box_distance(a: OrientedBox, b: OrientedBox) -> float:
    """Minimum gap between two boxes; 0 iff they intersect.

    Both boxes are right prisms over their footprints, so the squared distance
    splits into the planar footprint distance and the vertical interval gap.
    """
    dxy = footprint_distance(a.footprint(), b.footprint())
    dz = interval_gap(a.bottom, a.top, b.bottom, b.top)
    return math.hypot(dxy, dz)


def convex_hull(points: np.ndarray) -> np.ndarray:
    """CCW convex hull vertices of a point set, shape (m, 2)."""
    hull = MultiPoint([tuple(p) for p in np.asarray(points, dtype=float)]).convex_hull
    if hull.geom_type != "Polygon":  # collinear input
        raise ValueError("degenerate hull: points are collinear")
    pts = np.asarray(hull.exterior.coords)[:-1]
    return ensure_ccw(pts)


def clip_convex(a: np.ndarray, b: np.ndarray) -> list[np.ndarray]:
    """Intersection of two convex polygons as a (possibly empty) vertex list."""
    inter = to_shapely(a).intersection(to_shapely(b))
    pieces: list[np.ndarray] = []
    geoms = getattr(inter, "geoms", [inter])
    for g in geoms:
        if g.geom_type == "Polygon" and g.area > 1e-12:
            pts = np.asarray(g.exterior.coords)[:-1]
            pieces.append(ensure_ccw(pts))
    return pieces


def segment_polygon_entry(origin: np.ndarray, direction: np.ndarray, max_range: float,
                          poly: np.ndarray) -> float | None:
    """Distance along the ray origin + t*direction at which it first enters poly.

    Returns None when the segment of length max_range never touches it.
    """
    from shapely.geometry import LineString

    end = origin + direction * max_range
    seg = LineString([tuple(origin), tuple(end)])
    inter = seg.intersection(to_shapely(poly))
    if inter.is_empty:
        return None
    # The intersection of a segment with a convex polygon is a point or segment;
    # take the closest coordinate to the origin.
    coords: list[tuple[float, float]] = []
    for g in getattr(inter, "geoms", [inter]):
        coords.extend(g.coords)
    dists = [math.hypot(c[0] - origin[0], c[1] - origin[1]) for c in coords]
    return min(dists)
