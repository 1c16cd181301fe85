"""Rotation-system embeddings of connected multigraphs on orientable surfaces.

An embedding is given combinatorially: every edge ``i`` contributes two darts
(half-edges) ``2*i`` at its tail and ``2*i + 1`` at its head, and each vertex
lists the darts originating at it in cyclic order.  Faces are traced with the
face-on-left rule — the successor of a dart ``d`` on its face boundary is the
rotation-successor of ``twin(d)`` at the twin's origin — so every boundary is
a counterclockwise facial circuit.

The package-wide standing assumption is enforced at load time: every edge
must border two distinct faces.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .errors import (
    EdgeOnOneFace,
    MalformedInput,
    NonOrientableOrBadEmbedding,
    NotConnected,
    RotationInconsistent,
)


def twin(dart: int) -> int:
    """The other dart of the same edge."""
    return dart ^ 1


def edge_of(dart: int) -> int:
    """The edge a dart belongs to."""
    return dart // 2


@dataclass(frozen=True)
class Face:
    """One face of an embedding.

    ``boundary`` is the cyclic dart sequence traced with the face on the
    left of every dart; it starts at the lowest dart on the boundary.
    """

    id: int
    boundary: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.boundary)

    def edge_ids(self) -> tuple[int, ...]:
        """Edges on this face's boundary, in boundary order."""
        return tuple(edge_of(d) for d in self.boundary)


@dataclass(frozen=True)
class DualGraph:
    """Face-adjacency multigraph: one link per primal edge.

    ``links[e]`` is ``(left, right)`` where ``left`` is the face containing
    the tail dart ``2*e`` and ``right`` the face containing ``2*e + 1``.
    """

    nodes: tuple[int, ...]
    links: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SurfaceGraph:
    """A validated embedded multigraph.

    Instances are produced by :func:`load_embedding`; all fields are
    immutable and safe to share.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    rotations: tuple[tuple[int, ...], ...]
    faces: tuple[Face, ...]
    genus: int

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def dart_origin(self, dart: int) -> int:
        """The vertex a dart points away from."""
        tail, head = self.edges[edge_of(dart)]
        return tail if dart % 2 == 0 else head

    def face_of_dart(self, dart: int) -> int:
        return self._dart_face_table()[dart]

    def left_face(self, edge: int) -> int:
        """The face containing the tail dart of ``edge``."""
        return self.face_of_dart(2 * edge)

    def right_face(self, edge: int) -> int:
        """The face containing the head dart of ``edge``."""
        return self.face_of_dart(2 * edge + 1)

    def _dart_face_table(self) -> tuple[int, ...]:
        cached = getattr(self, "_face_table", None)
        if cached is None:
            table = [0] * (2 * self.edge_count)
            for face in self.faces:
                for d in face.boundary:
                    table[d] = face.id
            cached = tuple(table)
            object.__setattr__(self, "_face_table", cached)
        return cached


def _rotation_successors(
    rotations: tuple[tuple[int, ...], ...], edge_count: int
) -> list[int]:
    succ = [-1] * (2 * edge_count)
    for rot in rotations:
        for i, d in enumerate(rot):
            succ[d] = rot[(i + 1) % len(rot)]
    return succ


def _trace(rotations: tuple[tuple[int, ...], ...], edge_count: int) -> list[Face]:
    """Partition all darts into face boundaries (face-on-left rule)."""
    succ = _rotation_successors(rotations, edge_count)
    faces: list[Face] = []
    seen = [False] * (2 * edge_count)
    for start in range(2 * edge_count):
        if seen[start]:
            continue
        boundary = []
        d = start
        while not seen[d]:
            seen[d] = True
            boundary.append(d)
            d = succ[twin(d)]
        faces.append(Face(id=len(faces), boundary=tuple(boundary)))
    return faces


def load_embedding(text: str) -> SurfaceGraph:
    """Parse, validate, and trace an embedding file.

    The file is JSON: ``{"vertices": n, "edges": [[tail, head], ...],
    "rotations": [[dart, ...], ...]}`` with ``rotations[v]`` listing the
    darts originating at ``v`` in cyclic order.  Unknown fields are
    rejected.

    Raises :class:`MalformedInput`, :class:`RotationInconsistent`,
    :class:`NotConnected`, :class:`EdgeOnOneFace`, or
    :class:`NonOrientableOrBadEmbedding`.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise MalformedInput("top-level value must be an object")
    expected = {"vertices", "edges", "rotations"}
    if set(data) != expected:
        unknown = sorted(set(data) - expected)
        missing = sorted(expected - set(data))
        raise MalformedInput(
            f"unknown fields {unknown}, missing fields {missing}"
        )

    vertices = data["vertices"]
    if not isinstance(vertices, int) or isinstance(vertices, bool) or vertices < 1:
        raise MalformedInput("'vertices' must be a positive integer")

    raw_edges = data["edges"]
    if not isinstance(raw_edges, list) or not raw_edges:
        raise MalformedInput("'edges' must be a nonempty array")
    edges: list[tuple[int, int]] = []
    for k, pair in enumerate(raw_edges):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in pair)
        ):
            raise MalformedInput(f"edge {k} must be a [tail, head] pair of integers")
        tail, head = pair
        if not (0 <= tail < vertices and 0 <= head < vertices):
            raise MalformedInput(f"edge {k} references a vertex out of range")
        edges.append((tail, head))

    raw_rotations = data["rotations"]
    if not isinstance(raw_rotations, list) or len(raw_rotations) != vertices:
        raise MalformedInput("'rotations' must list one dart cycle per vertex")
    rotations: list[tuple[int, ...]] = []
    for v, rot in enumerate(raw_rotations):
        if not isinstance(rot, list) or not all(
            isinstance(d, int) and not isinstance(d, bool) for d in rot
        ):
            raise MalformedInput(f"rotation of vertex {v} must be an array of darts")
        rotations.append(tuple(rot))

    edge_count = len(edges)
    seen_darts = [False] * (2 * edge_count)
    for v, rot in enumerate(rotations):
        for d in rot:
            if not 0 <= d < 2 * edge_count:
                raise RotationInconsistent(f"dart {d} out of range at vertex {v}")
            if seen_darts[d]:
                raise RotationInconsistent(f"dart {d} appears twice")
            seen_darts[d] = True
            tail, head = edges[edge_of(d)]
            origin = tail if d % 2 == 0 else head
            if origin != v:
                raise RotationInconsistent(
                    f"dart {d} originates at vertex {origin}, listed at {v}"
                )
    if not all(seen_darts):
        missing = [d for d, ok in enumerate(seen_darts) if not ok]
        raise RotationInconsistent(f"darts missing from rotations: {missing}")

    # connectivity of the underlying multigraph
    neighbours: list[list[int]] = [[] for _ in range(vertices)]
    for tail, head in edges:
        neighbours[tail].append(head)
        neighbours[head].append(tail)
    reached = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in neighbours[v]:
            if w not in reached:
                reached.add(w)
                queue.append(w)
    if len(reached) != vertices:
        raise NotConnected(
            f"only {len(reached)} of {vertices} vertices reachable from vertex 0"
        )

    faces = _trace(tuple(rotations), edge_count)
    face_of = {}
    for face in faces:
        for d in face.boundary:
            face_of[d] = face.id
    for e in range(edge_count):
        if face_of[2 * e] == face_of[2 * e + 1]:
            raise EdgeOnOneFace(
                f"edge {e} has both darts on face {face_of[2 * e]}"
            )

    euler = vertices - edge_count + len(faces)
    if euler % 2 != 0 or euler > 2:
        raise NonOrientableOrBadEmbedding(
            f"Euler characteristic {euler} does not give a nonnegative integer genus"
        )
    return SurfaceGraph(
        vertex_count=vertices,
        edges=tuple(edges),
        rotations=tuple(rotations),
        faces=tuple(faces),
        genus=(2 - euler) // 2,
    )


def trace_faces(g: SurfaceGraph) -> tuple[Face, ...]:
    """Re-trace the face boundaries of ``g`` (deterministic, idempotent)."""
    return tuple(_trace(g.rotations, g.edge_count))


def genus(g: SurfaceGraph) -> int:
    """Genus from the Euler relation over the traced faces."""
    euler = g.vertex_count - g.edge_count + g.face_count
    if euler % 2 != 0 or euler > 2:
        raise NonOrientableOrBadEmbedding(
            f"Euler characteristic {euler} does not give a nonnegative integer genus"
        )
    return (2 - euler) // 2


def dual_graph(g: SurfaceGraph) -> DualGraph:
    """Face-adjacency multigraph, one link per primal edge.

    The result is connected whenever ``g`` is a valid embedding.
    """
    links = tuple((g.left_face(e), g.right_face(e)) for e in range(g.edge_count))
    reached = {0}
    queue = deque([0])
    adjacency: dict[int, list[int]] = {f.id: [] for f in g.faces}
    for left, right in links:
        adjacency[left].append(right)
        adjacency[right].append(left)
    while queue:
        f = queue.popleft()
        for other in adjacency[f]:
            if other not in reached:
                reached.add(other)
                queue.append(other)
    if len(reached) != g.face_count:
        raise NotConnected("dual graph is not connected")
    return DualGraph(nodes=tuple(f.id for f in g.faces), links=links)
