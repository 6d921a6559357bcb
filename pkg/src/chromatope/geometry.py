"""Convex cell geometry: halfspace clipping in 2D and 3D.

Cells are convex regions represented by their boundary: a vertex loop in 2D,
a list of planar polygon faces in 3D.  Clipping is Sutherland-Hodgman against
one halfspace (normal . x <= offset) at a time; in 3D each cut also rebuilds
the cap polygon from the crossing points, which is valid because every cell
here is convex.
"""

from __future__ import annotations

import numpy as np


def _dedupe_loop(points: list[np.ndarray], tol: float) -> list[np.ndarray]:
    out: list[np.ndarray] = []
    for p in points:
        if not out or np.linalg.norm(p - out[-1]) > tol:
            out.append(p)
    if len(out) > 1 and np.linalg.norm(out[0] - out[-1]) <= tol:
        out.pop()
    return out


def clip_loop(points: list[np.ndarray], normal: np.ndarray, offset: float,
              tol: float) -> list[np.ndarray]:
    """Clip a closed vertex loop (2D polygon or planar 3D polygon) by a halfspace."""
    if not points:
        return []
    dists = [float(normal @ p - offset) for p in points]
    out: list[np.ndarray] = []
    k = len(points)
    for i in range(k):
        p, d = points[i], dists[i]
        q, e = points[(i + 1) % k], dists[(i + 1) % k]
        if d <= tol:
            out.append(p)
        if (d > tol and e < -tol) or (d < -tol and e > tol):
            t = d / (d - e)
            out.append(p + t * (q - p))
    return _dedupe_loop(out, tol)


def polygon_area(points: list[np.ndarray]) -> float:
    """Area of a planar polygon given as a vertex loop (2D or 3D)."""
    if len(points) < 3:
        return 0.0
    c = np.mean(points, axis=0)
    total = np.zeros(3)
    for i in range(len(points)):
        a = np.append(points[i] - c, 0.0)[:3] if len(c) == 2 else points[i] - c
        b_pt = points[(i + 1) % len(points)]
        b = np.append(b_pt - c, 0.0)[:3] if len(c) == 2 else b_pt - c
        total = total + np.cross(a, b)
    return 0.5 * float(np.linalg.norm(total))


class ConvexRegion2:
    """Convex polygon as a CCW-ish vertex loop."""

    def __init__(self, points: list[np.ndarray]):
        self.points = points

    @classmethod
    def box(cls, lo, hi) -> "ConvexRegion2":
        lo = np.asarray(lo, float)
        hi = np.asarray(hi, float)
        pts = [
            np.array([lo[0], lo[1]]),
            np.array([hi[0], lo[1]]),
            np.array([hi[0], hi[1]]),
            np.array([lo[0], hi[1]]),
        ]
        return cls(pts)

    def clip(self, normal, offset, tol=1e-12) -> "ConvexRegion2":
        return ConvexRegion2(clip_loop(self.points, np.asarray(normal, float),
                                       float(offset), tol))

    def is_empty(self) -> bool:
        return len(self.points) == 0

    def vertices(self) -> np.ndarray:
        return np.array(self.points) if self.points else np.zeros((0, 2))

    def area(self) -> float:
        return polygon_area(self.points)

    def measure_on_line(self, normal, offset, tol) -> float:
        """Total length of boundary edges lying on normal.x = offset."""
        if len(self.points) < 2:
            return 0.0
        total = 0.0
        k = len(self.points)
        for i in range(k):
            p, q = self.points[i], self.points[(i + 1) % k]
            if abs(normal @ p - offset) <= tol and abs(normal @ q - offset) <= tol:
                total += float(np.linalg.norm(q - p))
        return total


class ConvexRegion3:
    """Convex polyhedron as a list of planar polygon faces."""

    def __init__(self, faces: list[list[np.ndarray]]):
        self.faces = [f for f in faces if len(f) >= 3]

    @classmethod
    def box(cls, lo, hi) -> "ConvexRegion3":
        lo = np.asarray(lo, float)
        hi = np.asarray(hi, float)
        corners = {}
        for sx in (0, 1):
            for sy in (0, 1):
                for sz in (0, 1):
                    corners[(sx, sy, sz)] = np.array([
                        hi[0] if sx else lo[0],
                        hi[1] if sy else lo[1],
                        hi[2] if sz else lo[2],
                    ])
        quads = [
            [(0, 0, 0), (0, 1, 0), (0, 1, 1), (0, 0, 1)],
            [(1, 0, 0), (1, 0, 1), (1, 1, 1), (1, 1, 0)],
            [(0, 0, 0), (0, 0, 1), (1, 0, 1), (1, 0, 0)],
            [(0, 1, 0), (1, 1, 0), (1, 1, 1), (0, 1, 1)],
            [(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)],
            [(0, 0, 1), (0, 1, 1), (1, 1, 1), (1, 0, 1)],
        ]
        return cls([[corners[c] for c in quad] for quad in quads])

    def clip(self, normal, offset, tol=1e-12) -> "ConvexRegion3":
        normal = np.asarray(normal, float)
        offset = float(offset)
        new_faces: list[list[np.ndarray]] = []
        cap_points: list[np.ndarray] = []
        for face in self.faces:
            clipped = clip_loop(face, normal, offset, tol)
            if len(clipped) >= 3:
                new_faces.append(clipped)
            for p in clipped:
                if abs(normal @ p - offset) <= 10 * tol + 1e-9:
                    cap_points.append(p)
        cap = _order_cap(cap_points, normal)
        if len(cap) >= 3:
            new_faces.append(cap)
        return ConvexRegion3(new_faces)

    def is_empty(self) -> bool:
        return len(self.faces) == 0

    def vertices(self) -> np.ndarray:
        pts: list[np.ndarray] = []
        for face in self.faces:
            pts.extend(face)
        if not pts:
            return np.zeros((0, 3))
        arr = np.array(pts)
        # dedupe by rounding
        scale = max(np.abs(arr).max(), 1.0)
        keys = np.round(arr / (1e-9 * scale)).astype(np.int64)
        _, idx = np.unique(keys, axis=0, return_index=True)
        return arr[np.sort(idx)]

    def measure_on_plane(self, normal, offset, tol) -> float:
        """Total area of faces lying on normal.x = offset."""
        total = 0.0
        for face in self.faces:
            if all(abs(normal @ p - offset) <= tol for p in face):
                total += polygon_area(face)
        return total


def _order_cap(points: list[np.ndarray], normal: np.ndarray) -> list[np.ndarray]:
    if len(points) < 3:
        return []
    arr = np.array(points)
    scale = max(np.abs(arr).max(), 1.0)
    keys = np.round(arr / (1e-9 * scale)).astype(np.int64)
    _, idx = np.unique(keys, axis=0, return_index=True)
    arr = arr[np.sort(idx)]
    if len(arr) < 3:
        return []
    center = arr.mean(axis=0)
    # orthobasis of the plane
    a = np.zeros(3)
    a[int(np.argmin(np.abs(normal)))] = 1.0
    u = np.cross(normal, a)
    u = u / np.linalg.norm(u)
    v = np.cross(normal, u)
    rel = arr - center
    ang = np.arctan2(rel @ v, rel @ u)
    return [arr[i] for i in np.argsort(ang)]


def clip_region(dim: int, lo, hi, normals, offsets, tol=1e-12):
    """Box clipped by a list of halfspaces; returns a ConvexRegion2/3."""
    if dim == 2:
        region = ConvexRegion2.box(lo, hi)
    elif dim == 3:
        region = ConvexRegion3.box(lo, hi)
    else:
        raise ValueError(f"clipping supports dims 2 and 3, got {dim}")
    for nrm, off in zip(normals, offsets):
        region = region.clip(nrm, off, tol)
        if region.is_empty():
            break
    return region
