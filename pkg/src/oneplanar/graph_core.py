"""Multigraphs with fixed 1-planar drawings, stored as planarized rotation systems.

A drawing is kept purely combinatorially: real vertices plus one dummy node
per crossing pair, a cyclic dart order at every node, and a segment map that
ties dummy nodes back to the original edges.  Every structural predicate the
rest of the package relies on (validity, faces, bigon-freeness, simplicity,
degrees) lives here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

Dart = tuple[int, int, int]  # (edge id, segment index 0|1, end 0|1)


class DrawingError(ValueError):
    """Base class for rejected drawings."""


class LoopEdge(DrawingError):
    pass


class EdgeCrossedTwice(DrawingError):
    pass


class InvalidRotation(DrawingError):
    pass


class ImproperCrossing(InvalidRotation):
    """Dummy node whose rotation does not alternate the two crossing edges."""


class InvalidCrossingPair(DrawingError):
    """Crossing pair made of two parallel edges sharing both endpoints."""


class DisconnectedEmbedding(DrawingError):
    pass


class EulerViolation(DrawingError):
    pass


@dataclass(frozen=True)
class MultiGraph:
    """Undirected multigraph; parallel edges allowed, loops rejected."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        for e, (u, v) in enumerate(self.edges):
            if u == v:
                raise LoopEdge(f"edge {e} is a loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise DrawingError(f"edge {e}=({u},{v}) has an endpoint out of range")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree_list(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def incident_edges(self, v: int) -> list[int]:
        return [e for e, (a, b) in enumerate(self.edges) if a == v or b == v]


def is_simple(g: MultiGraph) -> bool:
    """True iff no two edges share both endpoints."""
    seen = set()
    for u, v in g.edges:
        key = (u, v) if u < v else (v, u)
        if key in seen:
            return False
        seen.add(key)
    return True


@dataclass(frozen=True)
class DegreeProfile:
    """Per-vertex degrees plus the degree histogram of a vertex subset."""

    degrees: tuple[int, ...]
    subset: tuple[int, ...]
    histogram: dict[int, int] = field(compare=False)

    @property
    def min_degree(self) -> int:
        return min(self.degrees) if self.degrees else 0

    @property
    def max_degree(self) -> int:
        return max(self.degrees) if self.degrees else 0


def degrees(g: MultiGraph, subset: Optional[Iterable[int]] = None) -> DegreeProfile:
    """Exact degrees; histogram restricted to ``subset`` (default: all vertices)."""
    deg = g.degree_list()
    sub = tuple(sorted(set(range(g.vertex_count)) if subset is None else set(subset)))
    for v in sub:
        if not 0 <= v < g.vertex_count:
            raise DrawingError(f"subset vertex {v} out of range")
    hist: dict[int, int] = {}
    for v in sub:
        hist[deg[v]] = hist.get(deg[v], 0) + 1
    return DegreeProfile(degrees=tuple(deg), subset=sub, histogram=hist)


@dataclass(frozen=True)
class FaceWalk:
    """Cyclic dart sequence bounding one cell of the planarization."""

    darts: tuple[Dart, ...]
    is_outer: bool = False

    def __len__(self) -> int:
        return len(self.darts)


@dataclass(frozen=True)
class OnePlaneDrawing:
    """A 1-planar drawing: multigraph + crossing pairs + planarization rotations.

    Node ids: real vertices are 0..n-1, the dummy of crossing pair k is n+k.
    ``rotation[node]`` lists the darts at that node in cyclic (ccw) order.
    ``outer_face`` indexes into the canonical order produced by ``faces()``.
    """

    graph: MultiGraph
    crossings: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[Dart, ...], ...]
    outer_face: int = 0

    @property
    def n(self) -> int:
        return self.graph.vertex_count

    @property
    def node_count(self) -> int:
        return self.n + len(self.crossings)

    @cached_property
    def crossing_of_edge(self) -> dict[int, int]:
        """edge id -> index of its crossing pair (absent if uncrossed)."""
        out: dict[int, int] = {}
        for k, (a, b) in enumerate(self.crossings):
            out[a] = k
            out[b] = k
        return out

    def is_crossed(self, e: int) -> bool:
        return e in self.crossing_of_edge

    def dummy_node(self, k: int) -> int:
        return self.n + k

    def segment_count(self, e: int) -> int:
        return 2 if self.is_crossed(e) else 1

    def node_of_dart(self, d: Dart) -> int:
        """The planarization node holding dart d."""
        e, seg, end = d
        u, v = self.graph.edges[e]
        k = self.crossing_of_edge.get(e)
        if k is None:
            return u if end == 0 else v
        if seg == 0:
            return u if end == 0 else self.dummy_node(k)
        return self.dummy_node(k) if end == 0 else v

    def darts_of_edge(self, e: int) -> list[Dart]:
        if self.is_crossed(e):
            return [(e, 0, 0), (e, 0, 1), (e, 1, 0), (e, 1, 1)]
        return [(e, 0, 0), (e, 0, 1)]

    @staticmethod
    def twin(d: Dart) -> Dart:
        e, seg, end = d
        return (e, seg, 1 - end)

    @cached_property
    def _dart_position(self) -> dict[Dart, tuple[int, int]]:
        """dart -> (node, index within that node's rotation)."""
        pos: dict[Dart, tuple[int, int]] = {}
        for node, rot in enumerate(self.rotation):
            for i, d in enumerate(rot):
                if d in pos:
                    raise InvalidRotation(f"dart {d} appears more than once")
                pos[d] = (node, i)
        return pos

    def next_dart(self, d: Dart) -> Dart:
        """Face-traversal successor: step to the far end, take the next dart ccw."""
        t = self.twin(d)
        node, i = self._dart_position[t]
        rot = self.rotation[node]
        return rot[(i + 1) % len(rot)]

    @cached_property
    def _faces(self) -> tuple[FaceWalk, ...]:
        all_darts: list[Dart] = []
        for e in range(self.graph.edge_count):
            all_darts.extend(self.darts_of_edge(e))
        seen: set[Dart] = set()
        walks: list[FaceWalk] = []
        for d0 in all_darts:
            if d0 in seen:
                continue
            walk = []
            d = d0
            while True:
                walk.append(d)
                seen.add(d)
                d = self.next_dart(d)
                if d == d0:
                    break
            walks.append(FaceWalk(darts=tuple(walk)))
        return tuple(
            FaceWalk(darts=w.darts, is_outer=(i == self.outer_face))
            for i, w in enumerate(walks)
        )

    def face_nodes(self, face: FaceWalk) -> list[int]:
        return [self.node_of_dart(d) for d in face.darts]

    def validate(self) -> "OnePlaneDrawing":
        """Check every drawing invariant eagerly; return self if all hold."""
        g = self.graph
        # 1-planarity of the crossing list.
        counted: dict[int, int] = {}
        for k, (a, b) in enumerate(self.crossings):
            for e in (a, b):
                if not 0 <= e < g.edge_count:
                    raise DrawingError(f"crossing {k} names unknown edge {e}")
                counted[e] = counted.get(e, 0) + 1
                if counted[e] > 1:
                    raise EdgeCrossedTwice(f"edge {e} appears in two crossing pairs")
            if a == b:
                raise EdgeCrossedTwice(f"crossing {k} pairs edge {a} with itself")
            ea, eb = frozenset(g.edges[a]), frozenset(g.edges[b])
            if ea == eb:
                raise InvalidCrossingPair(
                    f"crossing {k} pairs parallel edges {a} and {b} with both endpoints shared"
                )
        # Rotation completeness: every dart exactly once, at its own node.
        if len(self.rotation) != self.node_count:
            raise InvalidRotation(
                f"rotation has {len(self.rotation)} nodes, expected {self.node_count}"
            )
        pos = self._dart_position
        expected = set()
        for e in range(g.edge_count):
            expected.update(self.darts_of_edge(e))
        if set(pos) != expected:
            missing = sorted(expected - set(pos))[:4]
            extra = sorted(set(pos) - expected)[:4]
            raise InvalidRotation(f"dart mismatch: missing={missing} extra={extra}")
        for d, (node, _) in pos.items():
            if self.node_of_dart(d) != node:
                raise InvalidRotation(f"dart {d} listed at node {node}, belongs to {self.node_of_dart(d)}")
        # Proper crossings: 4 darts per dummy, alternating between the two edges.
        for k, (a, b) in enumerate(self.crossings):
            rot = self.rotation[self.dummy_node(k)]
            if len(rot) != 4:
                raise ImproperCrossing(f"dummy {k} has {len(rot)} darts, expected 4")
            owners = [d[0] for d in rot]
            if owners[0] == owners[1] or owners[1] == owners[2]:
                raise ImproperCrossing(f"dummy {k} rotation does not alternate edges {a},{b}")
        # Connectivity of the planarization.
        if self.node_count > 0:
            nbr: list[list[int]] = [[] for _ in range(self.node_count)]
            for e in range(g.edge_count):
                ds = self.darts_of_edge(e)
                for i in range(0, len(ds), 2):
                    x, y = self.node_of_dart(ds[i]), self.node_of_dart(ds[i + 1])
                    nbr[x].append(y)
                    nbr[y].append(x)
            seen = {0}
            stack = [0]
            while stack:
                x = stack.pop()
                for y in nbr[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) != self.node_count:
                raise DisconnectedEmbedding(
                    f"planarization has {self.node_count - len(seen)} unreachable nodes"
                )
        # Euler's formula on the planarization.
        v_prime = self.node_count
        e_prime = g.edge_count + 2 * len(self.crossings)
        f = len(self._faces)
        if v_prime - e_prime + f != 2:
            raise EulerViolation(
                f"V'-E'+F = {v_prime}-{e_prime}+{f} = {v_prime - e_prime + f}, expected 2"
            )
        if not 0 <= self.outer_face < f:
            raise DrawingError(f"outer_face index {self.outer_face} out of range (F={f})")
        return self


def build_drawing(
    n: int,
    edges: Sequence[tuple[int, int]],
    crossings: Sequence[tuple[int, int]] = (),
    rotation: Optional[dict[int, Sequence[Dart]]] = None,
    outer_face: int = 0,
) -> OnePlaneDrawing:
    """Assemble and validate a drawing from raw data.

    ``rotation`` maps node ids (reals 0..n-1, dummy k at n+k) to dart lists.
    """
    g = MultiGraph(vertex_count=n, edges=tuple(tuple(e) for e in edges))
    cross = tuple(tuple(c) for c in crossings)
    node_count = n + len(cross)
    rot_map = rotation or {}
    rot = tuple(
        tuple(tuple(d) for d in rot_map.get(node, ())) for node in range(node_count)
    )
    drawing = OnePlaneDrawing(graph=g, crossings=cross, rotation=rot, outer_face=outer_face)
    return drawing.validate()


def faces(drawing: OnePlaneDrawing) -> list[FaceWalk]:
    """Complete face decomposition of the planarization, canonical order."""
    return list(drawing._faces)


def is_bigon_free(drawing: OnePlaneDrawing) -> tuple[bool, list[int]]:
    """True iff no cell is bounded by exactly two uncrossed parallel edges.

    Returns the verdict plus the indices of offending faces.
    """
    offending = []
    for i, walk in enumerate(drawing._faces):
        if len(walk) != 2:
            continue
        (e1, s1, _), (e2, s2, _) = walk.darts
        if e1 == e2:
            continue
        if drawing.is_crossed(e1) or drawing.is_crossed(e2):
            continue
        if frozenset(drawing.graph.edges[e1]) == frozenset(drawing.graph.edges[e2]):
            offending.append(i)
    return (not offending, offending)


def delete_edge(drawing: OnePlaneDrawing, e: int) -> OnePlaneDrawing:
    """Remove one edge; a crossing through it dissolves (partner merges back)."""
    return _delete(drawing, drop_edges={e}, drop_vertices=set())


def delete_vertices(drawing: OnePlaneDrawing, victims: Iterable[int]) -> OnePlaneDrawing:
    """Remove vertices with all incident edges; remaining ids are compacted."""
    vs = set(victims)
    drop = {
        e
        for e, (u, v) in enumerate(drawing.graph.edges)
        if u in vs or v in vs
    }
    return _delete(drawing, drop_edges=drop, drop_vertices=vs)


def _delete(
    drawing: OnePlaneDrawing, drop_edges: set[int], drop_vertices: set[int]
) -> OnePlaneDrawing:
    g = drawing.graph
    vmap = {}
    nxt = 0
    for v in range(g.vertex_count):
        if v not in drop_vertices:
            vmap[v] = nxt
            nxt += 1
    emap = {}
    new_edges = []
    for e, (u, v) in enumerate(g.edges):
        if e in drop_edges:
            continue
        emap[e] = len(new_edges)
        new_edges.append((vmap[u], vmap[v]))
    surviving_cross = [
        (a, b) for (a, b) in drawing.crossings if a not in drop_edges and b not in drop_edges
    ]
    kmap = {}
    new_cross = []
    for k, (a, b) in enumerate(drawing.crossings):
        if (a, b) in surviving_cross:
            kmap[k] = len(new_cross)
            new_cross.append((emap[a], emap[b]))
    dissolved = {
        drawing.crossing_of_edge[e]
        for e in drop_edges
        if e in drawing.crossing_of_edge
    }

    def remap_dart(d: Dart) -> Optional[Dart]:
        e, seg, end = d
        if e in drop_edges:
            return None
        old_k = drawing.crossing_of_edge.get(e)
        if old_k is not None and old_k in dissolved:
            # Partner of a dropped edge: its two segments merge into one.
            if seg == 0 and end == 1:
                return None  # inner end disappears with the dummy
            if seg == 1 and end == 0:
                return None
            return (emap[e], 0, end)
        return (emap[e], seg, end)

    rot_map: dict[int, list[Dart]] = {}
    for node, rot in enumerate(drawing.rotation):
        if node < g.vertex_count:
            if node in drop_vertices:
                continue
            new_node = vmap[node]
        else:
            k = node - g.vertex_count
            if k not in kmap:
                continue
            new_node = len(vmap) + kmap[k]
        new_rot = [rd for rd in (remap_dart(d) for d in rot) if rd is not None]
        rot_map[new_node] = new_rot
    return build_drawing(
        n=len(vmap),
        edges=new_edges,
        crossings=new_cross,
        rotation=rot_map,
        outer_face=0,
    )


# ---------------------------------------------------------------------------
# JSON interchange format
# ---------------------------------------------------------------------------


def _node_key(drawing: OnePlaneDrawing, node: int) -> str:
    if node < drawing.n:
        return f"v:{node}"
    return f"x:{node - drawing.n}"


def drawing_to_dict(drawing: OnePlaneDrawing, certificate: Optional[dict] = None) -> dict:
    doc = {
        "n": drawing.n,
        "edges": [[u, v] for u, v in drawing.graph.edges],
        "crossings": [[a, b] for a, b in drawing.crossings],
        "rotation": {
            _node_key(drawing, node): [[e, s, t] for (e, s, t) in rot]
            for node, rot in enumerate(drawing.rotation)
        },
        "outer_face": drawing.outer_face,
    }
    if certificate is not None:
        doc["certificate"] = certificate
    return doc


def drawing_from_dict(doc: dict) -> OnePlaneDrawing:
    n = int(doc["n"])
    rotation: dict[int, list[Dart]] = {}
    for key, darts in doc.get("rotation", {}).items():
        kind, _, idx = key.partition(":")
        node = int(idx) if kind == "v" else n + int(idx)
        rotation[node] = [tuple(d) for d in darts]
    return build_drawing(
        n=n,
        edges=[tuple(e) for e in doc["edges"]],
        crossings=[tuple(c) for c in doc.get("crossings", [])],
        rotation=rotation,
        outer_face=int(doc.get("outer_face", 0)),
    )


def dump_drawing(drawing: OnePlaneDrawing, certificate: Optional[dict] = None) -> str:
    return json.dumps(drawing_to_dict(drawing, certificate), indent=2) + "\n"


def load_drawing(text: str) -> tuple[OnePlaneDrawing, Optional[dict]]:
    doc = json.loads(text)
    return drawing_from_dict(doc), doc.get("certificate")
