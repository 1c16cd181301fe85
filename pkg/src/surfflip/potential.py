"""Face potentials, flip distance, and shortest flip sequences.

The difference of two orientations with equal out-degrees is a
vertex-balanced chain.  When that chain decomposes over counterclockwise
face boundaries, the integer coefficients form a potential: one label per
face, fixed to 0 at face 0, with the label difference across every edge
prescribed by the chain.  The minimum number of flips from one orientation
to the other, avoiding a forbidden face set, is the sum of the normalized
potential — provided every forbidden face sits at the minimum label.

Outcomes that are answers rather than failures (``NotHomologous``,
``Unreachable``) are returned, not raised; callers pattern-match.
"""

from __future__ import annotations

from dataclasses import dataclass

from .embedding import SurfaceGraph
from .errors import SolveFailed
from .homology import _check_same_alpha, _face_labels, difference_chain
from .orientations import FaceState, Orientation, face_state, flip


@dataclass(frozen=True)
class NotHomologous:
    """Typed outcome: the difference chain lies outside the face span."""


@dataclass(frozen=True)
class PotentialVector:
    """Integer label per face with label 0 at the base face.

    Across every edge the label of the left face minus the label of the
    right face (sides taken in the difference chain's direction) equals
    the chain entry.
    """

    z: tuple[int, ...]
    base: int
    z_min: int
    argmin: frozenset[int]

    def normalized(self) -> tuple[int, ...]:
        """Labels shifted so the minimum is 0."""
        return tuple(v - self.z_min for v in self.z)


@dataclass(frozen=True)
class FlipCountVector:
    """How many times each face was flipped along a sequence."""

    t: tuple[int, ...]


@dataclass(frozen=True)
class Unreachable:
    """Typed outcome: no flip sequence exists (or the search got stuck).

    ``reason`` is one of ``"not_homologous"``, ``"forbidden_not_at_min"``
    (``faces`` lists the forbidden faces above the minimum), or
    ``"no_flippable_face"`` (``faces`` lists faces still owing flips when
    the greedy search found nothing counterclockwise to flip).
    """

    reason: str
    faces: tuple[int, ...] = ()


def z_potential(
    g: SurfaceGraph, d_from: Orientation, d_to: Orientation
) -> PotentialVector | NotHomologous:
    """Face labels of the difference ``d_from - d_to``, or ``NotHomologous``.

    Labels spread from face 0 over the dual graph; any contradiction means
    the difference is not in the span of the face vectors.  On success the
    decomposition identity holds: the label-weighted sum of the face
    vectors reproduces the difference chain entrywise.
    """
    _check_same_alpha(g, d_from, d_to)
    labels = _face_labels(g, difference_chain(d_from, d_to))
    if labels is None:
        return NotHomologous()
    z_min = min(labels)
    return PotentialVector(
        z=labels,
        base=0,
        z_min=z_min,
        argmin=frozenset(f for f, v in enumerate(labels) if v == z_min),
    )


def flip_distance(
    g: SurfaceGraph,
    d_from: Orientation,
    d_to: Orientation,
    forbidden: frozenset[int] | set[int] = frozenset(),
) -> int | Unreachable:
    """Minimum number of flips from ``d_from`` to ``d_to`` avoiding ``forbidden``.

    Equals the sum of the normalized potential when it exists and every
    forbidden face attains the minimum label; otherwise ``Unreachable``.
    """
    pot = z_potential(g, d_from, d_to)
    if isinstance(pot, NotHomologous):
        return Unreachable("not_homologous")
    violators = tuple(sorted(f for f in forbidden if pot.z[f] != pot.z_min))
    if violators:
        return Unreachable("forbidden_not_at_min", violators)
    return sum(pot.normalized())


def reachable(
    g: SurfaceGraph,
    d_from: Orientation,
    d_to: Orientation,
    forbidden: frozenset[int] | set[int] = frozenset(),
) -> bool:
    """Whether some sequence of flips avoiding ``forbidden`` connects the pair."""
    return isinstance(flip_distance(g, d_from, d_to, forbidden), int)


def min_flip_sequence(
    g: SurfaceGraph,
    d_from: Orientation,
    d_to: Orientation,
    forbidden: frozenset[int] | set[int] = frozenset(),
) -> list[int] | Unreachable:
    """A shortest flip sequence (face ids in flip order), or ``Unreachable``.

    Greedy: repeatedly flip the lowest-id counterclockwise face that still
    owes flips (its residual normalized label is positive).  If faces still
    owe flips but none of them is counterclockwise, the search reports
    ``Unreachable("no_flippable_face", ...)`` listing those faces.
    """
    distance = flip_distance(g, d_from, d_to, forbidden)
    if isinstance(distance, Unreachable):
        return distance
    pot = z_potential(g, d_from, d_to)
    assert isinstance(pot, PotentialVector)
    residual = list(pot.normalized())
    current = d_from
    sequence: list[int] = []
    while any(residual):
        for f, owing in enumerate(residual):
            if owing > 0 and face_state(current, g.faces[f]) is FaceState.CCW:
                current = flip(current, g.faces[f])
                residual[f] -= 1
                sequence.append(f)
                break
        else:
            return Unreachable(
                "no_flippable_face",
                tuple(f for f, owing in enumerate(residual) if owing > 0),
            )
    if current.forward != d_to.forward:
        raise SolveFailed("flip sequence replay did not reach the target")
    return sequence


def flip_count_vector(g: SurfaceGraph, sequence: list[int]) -> FlipCountVector:
    """Per-face flip counts of a sequence."""
    t = [0] * g.face_count
    for f in sequence:
        t[f] += 1
    return FlipCountVector(t=tuple(t))
