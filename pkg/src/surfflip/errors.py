"""Exception types shared across the package."""

from __future__ import annotations


class SurfflipError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInput(SurfflipError):
    """An input file or value violates the documented schema."""


class NotConnected(SurfflipError):
    """The underlying graph is not connected."""


class RotationInconsistent(SurfflipError):
    """The rotation lists do not form a valid dart system."""


class EdgeOnOneFace(SurfflipError):
    """Some edge's two darts were traced into the same face boundary.

    Every operation in this package assumes each edge borders two distinct
    faces; embeddings violating that are rejected at load time.
    """


class NonOrientableOrBadEmbedding(SurfflipError):
    """The Euler relation did not produce a nonnegative integer genus."""


class MismatchedGraph(SurfflipError):
    """Two values that must live over the same graph do not."""


class DifferentOutDegrees(SurfflipError):
    """Two orientations that must share an out-degree vector do not."""


class SolveFailed(SurfflipError):
    """An internal computation that is guaranteed to succeed did not.

    Raised only on library bugs (e.g. a cycle-space decomposition coming
    back inconsistent, or the two lattice certification routes disagreeing),
    never on legitimate data.
    """


class NoAlphaOrientation(SurfflipError):
    """No orientation realizes the requested out-degree vector."""


class NotCounterclockwise(SurfflipError):
    """A flip was requested on a face that is not counterclockwise."""


class EmptyEnumeration(SurfflipError):
    """An operation requiring a nonempty orientation list received none."""


class NotStronglyConnected(SurfflipError):
    """A computation requiring a strongly connected digraph received one
    that is not."""


class NotAcyclic(SurfflipError):
    """A computation requiring an acyclic digraph received a cyclic one."""
