"""Integer edge chains, face vectors, homology bases, and class partitions.

Every oriented subgraph of an embedded graph is represented as an integer
chain vector with one entry per edge: ``+1`` if the subgraph traverses the
edge in the reference direction, ``-1`` against it, ``0`` if absent.  The
reference is an orientation ``d0``; wherever it is optional the as-listed
reference (every edge directed tail to head) is used.

Two independent tests decide whether a chain lies in the span of the
counterclockwise face vectors: a linear-time dual-graph labeling
(:func:`homologous`) and an exact rational elimination over a tree–cotree
cycle basis (:func:`signature`).  They are implemented separately on purpose
so that each can serve as an oracle for the other.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Sequence

from .embedding import SurfaceGraph
from .errors import DifferentOutDegrees, MismatchedGraph, SolveFailed

if TYPE_CHECKING:  # pragma: no cover - import cycle guard, typing only
    from .orientations import Orientation


@dataclass(frozen=True)
class ChainVector:
    """Integer vector over edge ids; the coordinate form of a subgraph."""

    entries: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __add__(self, other: "ChainVector") -> "ChainVector":
        self._check(other)
        return ChainVector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "ChainVector") -> "ChainVector":
        self._check(other)
        return ChainVector(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "ChainVector":
        return ChainVector(tuple(-a for a in self.entries))

    def scaled(self, k: int) -> "ChainVector":
        return ChainVector(tuple(k * a for a in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def support(self) -> tuple[int, ...]:
        """Edge ids with a nonzero entry."""
        return tuple(e for e, a in enumerate(self.entries) if a)

    def _check(self, other: "ChainVector") -> None:
        if len(self.entries) != len(other.entries):
            raise MismatchedGraph(
                f"chain lengths differ: {len(self.entries)} vs {len(other.entries)}"
            )


@dataclass(frozen=True)
class HomologyBasis:
    """A tree–cotree basis of the embedding's first homology.

    ``cycles`` holds ``2 * genus`` oriented circuits, one per edge outside
    both the spanning tree and the dual cotree.
    """

    cycles: tuple[ChainVector, ...]
    tree: frozenset[int]
    cotree: frozenset[int]


@dataclass(frozen=True)
class HomologySignature:
    """Coordinates of a chain along the basis cycles, modulo face vectors.

    Two orientations are homologous exactly when their signatures relative
    to a common reference coincide.
    """

    mu: tuple[int, ...]


def _forward_of(d: "Orientation | Sequence[bool] | None", edge_count: int) -> tuple[bool, ...]:
    """Normalize an orientation-like value to a per-edge forward tuple."""
    if d is None:
        return (True,) * edge_count
    forward = getattr(d, "forward", d)
    forward = tuple(bool(x) for x in forward)
    if len(forward) != edge_count:
        raise MismatchedGraph(
            f"orientation has {len(forward)} edges, graph has {edge_count}"
        )
    return forward


def chain_vector(
    d: "Orientation | Sequence[bool] | dict[int, bool]",
    d0: "Orientation | Sequence[bool] | None" = None,
    *,
    edge_count: int | None = None,
) -> ChainVector:
    """Coordinates of an orientation or oriented subgraph relative to ``d0``.

    ``d`` may be a full orientation (entries come out ``+1``/``-1``
    everywhere) or a partial one given as ``{edge_id: forward}`` (absent
    edges get ``0``).  ``d0`` defaults to the as-listed reference.
    """
    if isinstance(d, dict):
        if edge_count is None:
            raise MismatchedGraph("edge_count is required for subgraph chains")
        ref = _forward_of(d0, edge_count)
        entries = [0] * edge_count
        for e, fwd in d.items():
            entries[e] = 1 if bool(fwd) == ref[e] else -1
        return ChainVector(tuple(entries))
    forward = getattr(d, "forward", d)
    forward = tuple(bool(x) for x in forward)
    ref = _forward_of(d0, len(forward))
    return ChainVector(tuple(1 if f == r else -1 for f, r in zip(forward, ref)))


def difference_chain(
    d1: "Orientation | Sequence[bool]", d2: "Orientation | Sequence[bool]"
) -> ChainVector:
    """Chain of the oriented subgraph where ``d1`` and ``d2`` disagree.

    Entries carry ``d1``'s direction relative to the as-listed reference;
    equals ``(chain_vector(d1) - chain_vector(d2)) / 2``.
    """
    f1 = tuple(bool(x) for x in getattr(d1, "forward", d1))
    f2 = tuple(bool(x) for x in getattr(d2, "forward", d2))
    if len(f1) != len(f2):
        raise MismatchedGraph(f"orientations over {len(f1)} vs {len(f2)} edges")
    return ChainVector(
        tuple(0 if a == b else (1 if a else -1) for a, b in zip(f1, f2))
    )


def face_vectors(
    g: SurfaceGraph, d0: "Orientation | Sequence[bool] | None" = None
) -> list[ChainVector]:
    """One chain per face, each boundary traversed counterclockwise.

    The vectors sum to zero: every edge borders two distinct faces and
    contributes ``+1`` to one and ``-1`` to the other.
    """
    ref = _forward_of(d0, g.edge_count)
    vectors = []
    for face in g.faces:
        entries = [0] * g.edge_count
        for d in face.boundary:
            e = d // 2
            agrees_listed = d % 2 == 0
            entries[e] = 1 if agrees_listed == ref[e] else -1
        vectors.append(ChainVector(tuple(entries)))
    return vectors


def is_vertex_balanced(g: SurfaceGraph, chain: ChainVector) -> bool:
    """Whether the chain's signed in/out flow vanishes at every vertex."""
    balance = [0] * g.vertex_count
    for e, a in enumerate(chain.entries):
        if a:
            tail, head = g.edges[e]
            balance[tail] += a
            balance[head] -= a
    return not any(balance)


def tree_cotree_basis(
    g: SurfaceGraph, d0: "Orientation | Sequence[bool] | None" = None
) -> HomologyBasis:
    """Deterministic homology basis from a spanning tree and dual cotree.

    The spanning tree grows by breadth-first search from vertex 0 taking
    edges in id order; the cotree grows in the dual from face 0 over the
    remaining edges, again in id order.  Each of the ``2 * genus`` leftover
    edges closes a unique circuit through the tree, oriented to traverse
    that edge in its ``d0`` direction.
    """
    ref = _forward_of(d0, g.edge_count)
    incident: list[list[tuple[int, int]]] = [[] for _ in range(g.vertex_count)]
    for e, (tail, head) in enumerate(g.edges):
        incident[tail].append((e, head))
        incident[head].append((e, tail))
    for lst in incident:
        lst.sort()

    tree: set[int] = set()
    parent: dict[int, tuple[int, int] | None] = {0: None}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for e, w in incident[v]:
            if w not in parent:
                parent[w] = (v, e)
                tree.add(e)
                queue.append(w)

    dual_incident: list[list[tuple[int, int]]] = [[] for _ in range(g.face_count)]
    for e in range(g.edge_count):
        if e in tree:
            continue
        left, right = g.left_face(e), g.right_face(e)
        dual_incident[left].append((e, right))
        dual_incident[right].append((e, left))
    for lst in dual_incident:
        lst.sort()

    cotree: set[int] = set()
    seen_faces = {0}
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for e, other in dual_incident[f]:
            if other not in seen_faces:
                seen_faces.add(other)
                cotree.add(e)
                queue.append(other)

    leftover = sorted(set(range(g.edge_count)) - tree - cotree)

    def tree_walk(start: int, goal: int) -> list[int]:
        """Signed edge chain of the tree path from ``start`` to ``goal``."""
        hops: dict[int, tuple[int, int] | None] = {start: None}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            if v == goal:
                break
            for e, w in incident[v]:
                if e in tree and w not in hops:
                    hops[w] = (v, e)
                    queue.append(w)
        entries = [0] * g.edge_count
        v = goal
        while hops[v] is not None:
            prev, e = hops[v]
            entries[e] += 1 if g.edges[e] == (prev, v) else -1
            v = prev
        return entries

    cycles = []
    for e in leftover:
        tail, head = g.edges[e]
        if not ref[e]:
            tail, head = head, tail
        entries = tree_walk(head, tail)
        entries[e] += 1 if ref[e] else -1
        # tree_walk counts traversals in as-listed directions; re-express
        # relative to d0 so the defining edge always carries +1.
        entries = [a if ref[i] else -a for i, a in enumerate(entries)]
        cycles.append(ChainVector(tuple(entries)))
    return HomologyBasis(
        cycles=tuple(cycles), tree=frozenset(tree), cotree=frozenset(cotree)
    )


def _face_labels(g: SurfaceGraph, chain: ChainVector) -> tuple[int, ...] | None:
    """Label all faces so that left minus right label equals the chain.

    Walks the dual graph from face 0 (label 0), deriving each neighbouring
    label from the edge rule ``label(left) - label(right) = entry``; returns
    ``None`` as soon as a previously assigned label is contradicted, which
    happens exactly when the chain is not in the span of the face vectors.
    Chain entries are relative to the as-listed reference.
    """
    labels: list[int | None] = [None] * g.face_count
    labels[0] = 0
    constraints: list[list[tuple[int, int]]] = [[] for _ in range(g.face_count)]
    for e, entry in enumerate(chain.entries):
        left, right = g.left_face(e), g.right_face(e)
        constraints[left].append((right, entry))     # label[left] - label[right] = entry
        constraints[right].append((left, -entry))
    queue = deque([0])
    while queue:
        f = queue.popleft()
        assert labels[f] is not None
        for other, delta in constraints[f]:
            expected = labels[f] - delta
            if labels[other] is None:
                labels[other] = expected
                queue.append(other)
            elif labels[other] != expected:
                return None
    if any(v is None for v in labels):
        raise SolveFailed("dual graph was not connected during labeling")
    return tuple(labels)  # type: ignore[arg-type]


def _check_same_alpha(g: SurfaceGraph, d1, d2) -> None:
    f1 = _forward_of(d1, g.edge_count)
    f2 = _forward_of(d2, g.edge_count)
    out1 = [0] * g.vertex_count
    out2 = [0] * g.vertex_count
    for e, (tail, head) in enumerate(g.edges):
        out1[tail if f1[e] else head] += 1
        out2[tail if f2[e] else head] += 1
    if out1 != out2:
        raise DifferentOutDegrees(f"out-degree vectors differ: {out1} vs {out2}")


def homologous(g: SurfaceGraph, d1, d2) -> bool:
    """Whether the difference of two orientations is null-homologous.

    Decided by the dual-labeling consistency test: the difference chain is
    in the span of the face vectors exactly when the face labeling closes
    without contradiction.
    """
    _check_same_alpha(g, d1, d2)
    return _face_labels(g, difference_chain(d1, d2)) is not None


def signature(g: SurfaceGraph, d, ref, basis: HomologyBasis) -> HomologySignature:
    """Basis coordinates of ``d - ref`` modulo the face-vector span.

    Solves exactly (rational elimination) for the unique decomposition of
    the difference chain over ``{face vectors minus face 0} + basis
    cycles`` and returns the basis coefficients.  The basis must be in
    as-listed coordinates (the default of :func:`tree_cotree_basis`).
    Independent of :func:`homologous` by construction.
    """
    _check_same_alpha(g, d, ref)
    chain = difference_chain(d, ref)
    columns = [fv.entries for fv in face_vectors(g)[1:]]
    columns += [cycle.entries for cycle in basis.cycles]
    n = len(columns)
    rows = g.edge_count
    matrix = [
        [Fraction(columns[j][e]) for j in range(n)] + [Fraction(chain.entries[e])]
        for e in range(rows)
    ]
    pivot_cols: list[int] = []
    rank = 0
    for col in range(n):
        pivot_row = next(
            (r for r in range(rank, rows) if matrix[r][col] != 0), None
        )
        if pivot_row is None:
            continue
        matrix[rank], matrix[pivot_row] = matrix[pivot_row], matrix[rank]
        pivot = matrix[rank][col]
        matrix[rank] = [x / pivot for x in matrix[rank]]
        for r in range(rows):
            if r != rank and matrix[r][col] != 0:
                factor = matrix[r][col]
                matrix[r] = [
                    x - factor * y for x, y in zip(matrix[r], matrix[rank])
                ]
        pivot_cols.append(col)
        rank += 1
    if rank != n:
        raise SolveFailed("cycle-space basis columns are not independent")
    for r in range(rank, rows):
        if matrix[r][n] != 0:
            raise SolveFailed("difference chain is outside the cycle space")
    solution = [Fraction(0)] * n
    for r, col in enumerate(pivot_cols):
        solution[col] = matrix[r][n]
    if any(x.denominator != 1 for x in solution):
        raise SolveFailed("decomposition is not integral")
    face_cols = g.face_count - 1
    return HomologySignature(mu=tuple(int(x) for x in solution[face_cols:]))


def homology_classes(
    g: SurfaceGraph, orients: Iterable["Orientation | Sequence[bool]"]
) -> list[list[int]]:
    """Partition orientations into homology classes.

    Returns index sets into the input sequence, classes ordered by smallest
    member, members ascending.
    """
    orients = list(orients)
    classes: list[list[int]] = []
    representatives: list = []
    for i, d in enumerate(orients):
        for cls, rep in zip(classes, representatives):
            if homologous(g, d, rep):
                cls.append(i)
                break
        else:
            classes.append([i])
            representatives.append(d)
    return classes
