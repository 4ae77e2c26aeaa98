"""Construction engine: positioned sketches compiled to rotation systems.

Family generators place vertices at 2D points, route edges as polylines and
declare each crossing together with its location.  The cyclic dart order at
every node (including crossing dummies) is then read off by sorting outgoing
directions counterclockwise.  The sketch geometry only has to be locally
truthful; the drawing validator (Euler, proper crossings, connectivity)
rejects any sketch whose declared combinatorics is not actually planar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graph_core import Dart, OnePlaneDrawing, build_drawing

Point = tuple[float, float]


def ring_point(radius: float, frac: float) -> Point:
    """Point at ``frac`` of a full turn (ccw) on a circle of given radius."""
    ang = 2.0 * math.pi * frac
    return (radius * math.cos(ang), radius * math.sin(ang))


@dataclass
class _EdgeSketch:
    u: int
    v: int
    vias: list[Point] = field(default_factory=list)
    cross_at: Optional[Point] = None  # set when this edge is in a crossing pair


class Sketch:
    """Accumulates vertices, edges and crossings; compiles to a drawing."""

    def __init__(self) -> None:
        self._points: list[Point] = []
        self._edges: list[_EdgeSketch] = []
        self._crossings: list[tuple[int, int, Point]] = []

    # -- construction ------------------------------------------------------

    def vertex(self, point: Point) -> int:
        self._points.append(point)
        return len(self._points) - 1

    def ring(self, radius: float, count: int, offset: float = 0.0) -> list[int]:
        """``count`` vertices evenly spaced on a circle, ccw from ``offset``."""
        return [self.vertex(ring_point(radius, offset + j / count)) for j in range(count)]

    def edge(self, u: int, v: int, vias: Sequence[Point] = ()) -> int:
        self._edges.append(_EdgeSketch(u=u, v=v, vias=list(vias)))
        return len(self._edges) - 1

    def ring_edges(self, ring: list[int], omit: Sequence[int] = ()) -> list[Optional[int]]:
        """Cycle edges (j, j+1) for a ring; positions in ``omit`` are skipped."""
        out: list[Optional[int]] = []
        skip = set(omit)
        k = len(ring)
        for j in range(k):
            out.append(None if j in skip else self.edge(ring[j], ring[(j + 1) % k]))
        return out

    def crossing(self, e1: int, e2: int, at: Point) -> int:
        """Declare that edges e1 and e2 cross at the given sketch point."""
        for e in (e1, e2):
            if self._edges[e].cross_at is not None:
                raise ValueError(f"edge {e} already carries a crossing")
        self._edges[e1].cross_at = at
        self._edges[e2].cross_at = at
        self._crossings.append((e1, e2, at))
        return len(self._crossings) - 1

    # -- compilation -------------------------------------------------------

    def _polyline(self, e: int) -> list[Point]:
        es = self._edges[e]
        return [self._points[es.u]] + es.vias + [self._points[es.v]]

    def _split_at_crossing(self, e: int, at: Point) -> tuple[list[Point], list[Point]]:
        """Split the polyline of e at the via closest to the crossing point."""
        poly = self._polyline(e)
        best, best_d = 1, float("inf")
        for i in range(1, len(poly)):
            px, py = poly[i - 1]
            qx, qy = poly[i]
            ax, ay = at
            dx, dy = qx - px, qy - py
            denom = dx * dx + dy * dy
            t = 0.5 if denom == 0 else max(0.0, min(1.0, ((ax - px) * dx + (ay - py) * dy) / denom))
            cx, cy = px + t * dx, py + t * dy
            d = (cx - ax) ** 2 + (cy - ay) ** 2
            if d < best_d:
                best, best_d = i, d

        def dedup(points: list[Point]) -> list[Point]:
            out = [points[0]]
            for p in points[1:]:
                if (p[0] - out[-1][0]) ** 2 + (p[1] - out[-1][1]) ** 2 > 1e-18:
                    out.append(p)
            return out

        return dedup(poly[:best] + [at]), dedup([at] + poly[best:])

    def compile(self) -> OnePlaneDrawing:
        n = len(self._points)
        edges = [(es.u, es.v) for es in self._edges]
        crossings = [(a, b) for a, b, _ in self._crossings]
        cross_index = {}
        for k, (a, b, _) in enumerate(self._crossings):
            cross_index[a] = k
            cross_index[b] = k

        # Outgoing direction of each dart at its node, from the sketch geometry.
        darts_at: dict[int, list[tuple[float, Dart]]] = {node: [] for node in range(n + len(self._crossings))}

        def leg_angle(at: Point, toward: Point) -> float:
            return math.atan2(toward[1] - at[1], toward[0] - at[0])

        for e, es in enumerate(self._edges):
            if es.cross_at is None:
                poly = self._polyline(e)
                darts_at[es.u].append((leg_angle(poly[0], poly[1]), (e, 0, 0)))
                darts_at[es.v].append((leg_angle(poly[-1], poly[-2]), (e, 0, 1)))
            else:
                k = cross_index[e]
                dummy = n + k
                first, second = self._split_at_crossing(e, es.cross_at)
                darts_at[es.u].append((leg_angle(first[0], first[1]), (e, 0, 0)))
                darts_at[dummy].append((leg_angle(first[-1], first[-2]), (e, 0, 1)))
                darts_at[dummy].append((leg_angle(second[0], second[1]), (e, 1, 0)))
                darts_at[es.v].append((leg_angle(second[-1], second[-2]), (e, 1, 1)))

        rotation: dict[int, list[Dart]] = {}
        for node, pairs in darts_at.items():
            pairs.sort(key=lambda t: (t[0], t[1]))
            rotation[node] = [d for _, d in pairs]
        return build_drawing(
            n=n, edges=edges, crossings=crossings, rotation=rotation, outer_face=0
        )


def with_outer_face(drawing: OnePlaneDrawing, face_index: int) -> OnePlaneDrawing:
    return OnePlaneDrawing(
        graph=drawing.graph,
        crossings=drawing.crossings,
        rotation=drawing.rotation,
        outer_face=face_index,
    )


def face_index_containing_dart(drawing: OnePlaneDrawing, dart: Dart) -> int:
    for i, walk in enumerate(drawing._faces):
        if dart in walk.darts:
            return i
    raise ValueError(f"dart {dart} not found in any face")


def outermost_face_index(drawing: OnePlaneDrawing, sketch_hint: Optional[Dart] = None) -> int:
    """Pick the face holding the hint dart, or fall back to the longest walk."""
    if sketch_hint is not None:
        return face_index_containing_dart(drawing, sketch_hint)
    best, best_len = 0, -1
    for i, walk in enumerate(drawing._faces):
        if len(walk) > best_len:
            best, best_len = i, len(walk)
    return best
