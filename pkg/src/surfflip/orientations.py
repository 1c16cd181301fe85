"""Orientations with prescribed out-degrees, facial circuits, and flips.

An orientation assigns each edge a direction; it satisfies an out-degree
prescription when every vertex has exactly the prescribed number of
outgoing edges (a loop contributes one outgoing edge to its vertex no
matter which way it points).  A face whose boundary is traversed entirely
with the edge directions is counterclockwise and may be flipped, which
reverses exactly its boundary edges and preserves all out-degrees.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .embedding import Face, SurfaceGraph
from .errors import (
    EmptyEnumeration,
    MalformedInput,
    NoAlphaOrientation,
    NotCounterclockwise,
)
from .homology import ChainVector, difference_chain


@dataclass(frozen=True)
class OutDegreeSpec:
    """Prescribed out-degree for every vertex."""

    alpha: tuple[int, ...]

    def validate(self, g: SurfaceGraph) -> None:
        """Check shape, totals, and per-vertex degree bounds against ``g``."""
        if len(self.alpha) != g.vertex_count:
            raise MalformedInput(
                f"spec has {len(self.alpha)} vertices, graph has {g.vertex_count}"
            )
        if any(not isinstance(a, int) or isinstance(a, bool) or a < 0 for a in self.alpha):
            raise MalformedInput("out-degrees must be nonnegative integers")
        if sum(self.alpha) != g.edge_count:
            raise MalformedInput(
                f"out-degrees sum to {sum(self.alpha)}, graph has {g.edge_count} edges"
            )
        degree = [0] * g.vertex_count
        for tail, head in g.edges:
            degree[tail] += 1
            degree[head] += 1
        for v, a in enumerate(self.alpha):
            if a > degree[v]:
                raise MalformedInput(
                    f"vertex {v} has degree {degree[v]} but prescribed out-degree {a}"
                )


@dataclass(frozen=True)
class Orientation:
    """A direction for every edge; ``forward`` means tail to head as listed.

    ``id`` is the position within an enumeration and never takes part in
    equality; across runs an orientation is identified by its bitstring.
    """

    forward: tuple[bool, ...]
    id: int | None = field(default=None, compare=False)

    def bitstring(self) -> str:
        """'1'/'0' per edge, edge 0 first; '1' means forward."""
        return "".join("1" if f else "0" for f in self.forward)

    @classmethod
    def from_bitstring(cls, bits: str, id: int | None = None) -> "Orientation":
        if not bits or any(c not in "01" for c in bits):
            raise MalformedInput(f"not a bitstring: {bits!r}")
        return cls(forward=tuple(c == "1" for c in bits), id=id)

    def out_degrees(self, g: SurfaceGraph) -> tuple[int, ...]:
        out = [0] * g.vertex_count
        for e, (tail, head) in enumerate(g.edges):
            out[tail if self.forward[e] else head] += 1
        return tuple(out)


class FaceState(Enum):
    """How an orientation traverses a face boundary."""

    CCW = "ccw"
    CW = "cw"
    NOT_DIRECTED = "not_directed"


def _dart_agrees(d: Orientation, dart: int) -> bool:
    """Whether the orientation directs the dart's edge along the dart."""
    forward = d.forward[dart // 2]
    return forward if dart % 2 == 0 else not forward


def enumerate_alpha(g: SurfaceGraph, spec: OutDegreeSpec) -> list[Orientation]:
    """All orientations meeting the out-degree prescription, exactly once.

    Lexicographic order of the forward bitstring (edge 0 most significant),
    ids assigned in that order; empty when the prescription is infeasible.
    Backtracking over edges in id order, pruning on committed out-degrees
    and on what the undecided incidences can still contribute.
    """
    spec.validate(g)
    n = g.vertex_count
    m = g.edge_count
    out = [0] * n
    # Undecided contributions per vertex: loops always add one outgoing
    # edge (forced); a non-loop incidence may or may not (optional).
    forced = [0] * n
    optional = [0] * n
    for tail, head in g.edges:
        if tail == head:
            forced[tail] += 1
        else:
            optional[tail] += 1
            optional[head] += 1
    alpha = spec.alpha

    def feasible(v: int) -> bool:
        return out[v] + forced[v] <= alpha[v] <= out[v] + forced[v] + optional[v]

    results: list[Orientation] = []
    forward = [False] * m

    def assign(e: int) -> None:
        if e == m:
            results.append(Orientation(tuple(forward), id=len(results)))
            return
        tail, head = g.edges[e]
        if tail == head:
            forced[tail] -= 1
            out[tail] += 1
            if feasible(tail):
                for choice in (False, True):
                    forward[e] = choice
                    assign(e + 1)
            out[tail] -= 1
            forced[tail] += 1
            return
        optional[tail] -= 1
        optional[head] -= 1
        for choice, gains in ((False, head), (True, tail)):
            out[gains] += 1
            if feasible(tail) and feasible(head):
                forward[e] = choice
                assign(e + 1)
            out[gains] -= 1
        optional[tail] += 1
        optional[head] += 1

    assign(0)
    return results


def _strongly_connected(g: SurfaceGraph, d: Orientation) -> bool:
    succ: list[list[int]] = [[] for _ in range(g.vertex_count)]
    pred: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for e, (tail, head) in enumerate(g.edges):
        if not d.forward[e]:
            tail, head = head, tail
        succ[tail].append(head)
        pred[head].append(tail)
    for adjacency in (succ, pred):
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for w in adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != g.vertex_count:
            return False
    return True


def check_strongly_connected_alpha(g: SurfaceGraph, spec: OutDegreeSpec) -> bool:
    """Whether orientations with this prescription are strongly connected.

    It suffices to test one: if any orientation with these out-degrees is
    strongly connected then all of them are, because their differences are
    vertex-balanced.  Tests the first enumerated orientation.
    """
    orients = enumerate_alpha(g, spec)
    if not orients:
        raise NoAlphaOrientation(f"no orientation has out-degrees {spec.alpha}")
    return _strongly_connected(g, orients[0])


def face_state(d: Orientation, f: Face) -> FaceState:
    """CCW if every boundary dart runs with the orientation, CW if against."""
    agreements = [_dart_agrees(d, dart) for dart in f.boundary]
    if all(agreements):
        return FaceState.CCW
    if not any(agreements):
        return FaceState.CW
    return FaceState.NOT_DIRECTED


def flip(d: Orientation, f: Face) -> Orientation:
    """Reverse a counterclockwise face boundary; out-degrees are preserved."""
    if face_state(d, f) is not FaceState.CCW:
        raise NotCounterclockwise(
            f"face {f.id} is {face_state(d, f).value}, not ccw"
        )
    forward = list(d.forward)
    for e in f.edge_ids():
        forward[e] = not forward[e]
    return Orientation(tuple(forward))


def reverse(d: Orientation) -> Orientation:
    """Reverse every edge; swaps counterclockwise and clockwise faces."""
    return Orientation(tuple(not f for f in d.forward))


def rigid_edges(orients: Sequence[Orientation]) -> frozenset[int]:
    """Edges directed identically across a full enumeration."""
    if not orients:
        raise EmptyEnumeration("no orientations to scan for rigid edges")
    first = orients[0].forward
    rigid = set(range(len(first)))
    for d in orients[1:]:
        rigid = {e for e in rigid if d.forward[e] == first[e]}
        if not rigid:
            break
    return frozenset(rigid)


def difference(d1: Orientation, d2: Orientation) -> ChainVector:
    """Oriented subgraph where the orientations differ, with d1's directions.

    The result is always vertex-balanced when both orientations share an
    out-degree vector.
    """
    return difference_chain(d1, d2)


def ccw_faces(g: SurfaceGraph, d: Orientation) -> list[Face]:
    """All faces counterclockwise in ``d``, ascending by face id."""
    return [f for f in g.faces if face_state(d, f) is FaceState.CCW]


def iter_face_states(g: SurfaceGraph, d: Orientation) -> Iterable[tuple[Face, FaceState]]:
    for f in g.faces:
        yield f, face_state(d, f)
