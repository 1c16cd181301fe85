"""Flip graphs under forbidden faces: colorings, components, lattices.

Nodes are enumeration ids of all orientations with a fixed out-degree
prescription; an arc runs from an orientation to the result of flipping
one of its counterclockwise faces, colored by that face id, with faces in
the forbidden set excluded.  Within a homology class every component of a
flip graph with a nonempty forbidden set is acyclic with a unique sink and
source and is the cover graph of a distributive lattice; this module
verifies all of that explicitly rather than assuming it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .embedding import SurfaceGraph
from .errors import MalformedInput, NotAcyclic, NotStronglyConnected, SolveFailed
from .orientations import FaceState, Orientation, face_state, flip
from .potential import PotentialVector, z_potential

Arc = tuple[int, int, int]


@dataclass(frozen=True)
class FlipGraph:
    """Directed flip graph: ``arcs`` are (from-id, to-id, face-id) triples."""

    nodes: tuple[int, ...]
    arcs: tuple[Arc, ...]
    forbidden: frozenset[int]

    def out_arcs(self, node: int) -> list[Arc]:
        return [a for a in self.arcs if a[0] == node]


@dataclass(frozen=True)
class ComponentReport:
    """Structure facts for one weakly connected component within a class.

    ``sink_in_O`` records whether the unique sink has no counterclockwise
    face outside the forbidden set; ``source_in_Ostar`` likewise with
    clockwise faces.
    """

    component: tuple[int, ...]
    acyclic: bool
    sink: int | None
    source: int | None
    lattice_certified: bool
    sink_in_O: bool
    source_in_Ostar: bool


def build_flip_graph(
    g: SurfaceGraph,
    orients: Sequence[Orientation],
    forbidden: frozenset[int] | set[int] = frozenset(),
) -> FlipGraph:
    """Flip graph over a full enumeration, omitting forbidden face colors.

    Arcs are emitted with sources ascending and face colors ascending, so
    building with a forbidden set equals building with none and then
    deleting its colors, arc for arc.
    """
    by_bits = {d.bitstring(): i for i, d in enumerate(orients)}
    arcs: list[Arc] = []
    for i, d in enumerate(orients):
        for f in g.faces:
            if f.id in forbidden:
                continue
            if face_state(d, f) is FaceState.CCW:
                target = by_bits[flip(d, f).bitstring()]
                arcs.append((i, target, f.id))
    return FlipGraph(
        nodes=tuple(range(len(orients))),
        arcs=tuple(arcs),
        forbidden=frozenset(forbidden),
    )


def restrict(fg: FlipGraph, extra: frozenset[int] | set[int]) -> FlipGraph:
    """Delete all arcs colored by ``extra`` and grow the forbidden set."""
    return FlipGraph(
        nodes=fg.nodes,
        arcs=tuple(a for a in fg.arcs if a[2] not in extra),
        forbidden=fg.forbidden | frozenset(extra),
    )


def reverse_graph(fg: FlipGraph) -> FlipGraph:
    """The same graph with every arc reversed, colors kept."""
    return FlipGraph(
        nodes=fg.nodes,
        arcs=tuple((to, frm, color) for frm, to, color in fg.arcs),
        forbidden=fg.forbidden,
    )


def verify_u_coloring(fg: FlipGraph) -> tuple[bool, tuple | None]:
    """Check the two out-arc coloring rules; a witness names the bad pair.

    For every node with out-arcs to two distinct targets: the colors must
    differ (rule one), and swapping the two colors must lead both targets
    to a common completion node (rule two).  The witness is
    ``("U1", arc, arc)`` or ``("U2", arc, arc)``.
    """
    out: dict[int, list[Arc]] = {n: [] for n in fg.nodes}
    arc_set = set(fg.arcs)
    for arc in fg.arcs:
        out[arc[0]].append(arc)
    for node in fg.nodes:
        arcs = out[node]
        for i, a in enumerate(arcs):
            for b in arcs[i + 1:]:
                if a[1] == b[1]:
                    continue
                if a[2] == b[2]:
                    return False, ("U1", a, b)
                completions = {
                    x
                    for (frm, x, color) in arc_set
                    if frm == a[1] and color == b[2]
                } & {
                    x
                    for (frm, x, color) in arc_set
                    if frm == b[1] and color == a[2]
                }
                if not completions:
                    return False, ("U2", a, b)
    return True, None


def verify_l_coloring(fg: FlipGraph) -> tuple[bool, tuple | None]:
    """The out-arc rules applied to the reversed graph (in-arc form)."""
    return verify_u_coloring(reverse_graph(fg))


def _successors(fg: FlipGraph) -> dict[int, list[int]]:
    succ: dict[int, list[int]] = {n: [] for n in fg.nodes}
    for frm, to, _ in fg.arcs:
        succ[frm].append(to)
    return succ


def scc_decomposition(fg: FlipGraph) -> list[frozenset[int]]:
    """Strongly connected components, ordered by smallest member.

    Iterative Tarjan; isolated nodes come out as singletons.
    """
    succ = _successors(fg)
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    components: list[frozenset[int]] = []
    counter = 0
    for root in fg.nodes:
        if root in index:
            continue
        work: list[tuple[int, int]] = [(root, 0)]
        while work:
            node, child_pos = work[-1]
            if child_pos == 0:
                index[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack.add(node)
            advanced = False
            for pos in range(child_pos, len(succ[node])):
                child = succ[node][pos]
                if child not in index:
                    work[-1] = (node, pos + 1)
                    work.append((child, 0))
                    advanced = True
                    break
                if child in on_stack:
                    low[node] = min(low[node], index[child])
            if advanced:
                continue
            work.pop()
            if low[node] == index[node]:
                comp = set()
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    comp.add(member)
                    if member == node:
                        break
                components.append(frozenset(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
        # continue with next root
    return sorted(components, key=min)


def weakly_connected_components(fg: FlipGraph) -> list[frozenset[int]]:
    """Components under arc-direction blindness, ordered by smallest member."""
    neighbours: dict[int, set[int]] = {n: set() for n in fg.nodes}
    for frm, to, _ in fg.arcs:
        neighbours[frm].add(to)
        neighbours[to].add(frm)
    seen: set[int] = set()
    components: list[frozenset[int]] = []
    for start in fg.nodes:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            for w in neighbours[v]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        components.append(frozenset(comp))
    return sorted(components, key=min)


def induced_subgraph(fg: FlipGraph, nodes: frozenset[int] | set[int]) -> FlipGraph:
    """Restriction to a node subset, keeping arcs with both ends inside."""
    return FlipGraph(
        nodes=tuple(sorted(nodes)),
        arcs=tuple(a for a in fg.arcs if a[0] in nodes and a[1] in nodes),
        forbidden=fg.forbidden,
    )


def bfs_distances(fg: FlipGraph, source: int) -> dict[int, int]:
    """Shortest arc counts from ``source`` to every reachable node.

    This is the verification oracle for the closed-form flip distance; it
    never replaces the formula in product paths.
    """
    succ = _successors(fg)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in succ[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def _max_flow_unit(
    nodes: Sequence[int], capacity: dict[tuple[int, int], int], s: int, t: int
) -> int:
    """Max flow with the given integer arc capacities (breadth-first paths)."""
    residual = dict(capacity)
    flow = 0
    while True:
        parent: dict[int, int] = {s: s}
        queue = deque([s])
        while queue and t not in parent:
            v = queue.popleft()
            for w in nodes:
                if w not in parent and residual.get((v, w), 0) > 0:
                    parent[w] = v
                    queue.append(w)
        if t not in parent:
            return flow
        v = t
        while v != s:
            p = parent[v]
            residual[(p, v)] = residual.get((p, v), 0) - 1
            residual[(v, p)] = residual.get((v, p), 0) + 1
            v = p
        flow += 1


def strong_edge_connectivity(fg: FlipGraph) -> int:
    """Largest s such that every s-1 arc deletions leave the graph strongly
    connected; the minimum over ordered node pairs of arc-disjoint paths.

    Requires a strongly connected input with at least two nodes.
    """
    if len(fg.nodes) < 2:
        raise MalformedInput("edge connectivity needs at least two nodes")
    if len(scc_decomposition(fg)) != 1:
        raise NotStronglyConnected("flip graph is not strongly connected")
    capacity: dict[tuple[int, int], int] = {}
    for frm, to, _ in fg.arcs:
        capacity[(frm, to)] = capacity.get((frm, to), 0) + 1
    best = None
    for s in fg.nodes:
        for t in fg.nodes:
            if s == t:
                continue
            value = _max_flow_unit(fg.nodes, capacity, s, t)
            if best is None or value < best:
                best = value
    assert best is not None
    return best


def _no_face_outside(
    g: SurfaceGraph,
    d: Orientation,
    forbidden: frozenset[int],
    state: FaceState,
) -> bool:
    return all(
        face_state(d, f) is not state for f in g.faces if f.id not in forbidden
    )


def certify_distributive_lattice(
    g: SurfaceGraph,
    fg: FlipGraph,
    component: frozenset[int] | set[int],
    orients: Sequence[Orientation],
) -> tuple[bool, tuple | None]:
    """Certify one acyclic component as the cover graph of a distributive
    lattice, by two independent routes.

    Route one is order-theoretic: under ``x <= y`` iff ``y`` reaches ``x``,
    every pair must have a unique meet and join and meets must distribute
    over joins on all triples; a failure is returned with a counterexample.
    Route two recomputes meets and joins as entrywise min and max of the
    per-node flip-count vectors toward the sink; any disagreement between
    the routes is an internal inconsistency and raises ``SolveFailed``.
    """
    sub = induced_subgraph(fg, component)
    if any(len(c) > 1 for c in scc_decomposition(sub)):
        raise NotAcyclic("component contains a directed cycle")
    nodes = sorted(component)
    succ = _successors(sub)
    reach: dict[int, set[int]] = {}
    for n in nodes:
        seen = {n}
        queue = deque([n])
        while queue:
            v = queue.popleft()
            for w in succ[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        reach[n] = seen

    def meet(a: int, b: int) -> int | None:
        lower = reach[a] & reach[b]
        tops = [m for m in lower if lower <= reach[m]]
        return tops[0] if len(tops) == 1 else None

    def join(a: int, b: int) -> int | None:
        upper = [x for x in nodes if a in reach[x] and b in reach[x]]
        bottoms = [j for j in upper if all(j in reach[x] for x in upper)]
        return bottoms[0] if len(bottoms) == 1 else None

    meets: dict[tuple[int, int], int] = {}
    joins: dict[tuple[int, int], int] = {}
    for a in nodes:
        for b in nodes:
            m = meet(a, b)
            if m is None:
                return False, ("meet", a, b)
            j = join(a, b)
            if j is None:
                return False, ("join", a, b)
            meets[a, b] = m
            joins[a, b] = j
    for a in nodes:
        for b in nodes:
            for c in nodes:
                if meets[a, joins[b, c]] != joins[meets[a, b], meets[a, c]]:
                    return False, ("distributivity", a, b, c)

    sinks = [n for n in nodes if not succ[n]]
    if len(sinks) != 1:
        raise SolveFailed(f"acyclic lattice component with sinks {sinks}")
    sink = sinks[0]
    vectors: dict[int, tuple[int, ...]] = {}
    for n in nodes:
        pot = z_potential(g, orients[n], orients[sink])
        if not isinstance(pot, PotentialVector):
            raise SolveFailed("component member not homologous to its sink")
        vectors[n] = pot.normalized()
    by_vector = {v: n for n, v in vectors.items()}
    if len(by_vector) != len(nodes):
        raise SolveFailed("flip-count vectors are not distinct on the component")
    for a in nodes:
        for b in nodes:
            low = tuple(map(min, vectors[a], vectors[b]))
            high = tuple(map(max, vectors[a], vectors[b]))
            if by_vector.get(low) != meets[a, b] or by_vector.get(high) != joins[a, b]:
                raise SolveFailed(
                    f"order-theoretic and flip-count lattices disagree on ({a}, {b})"
                )
    return True, None


def component_reports(
    g: SurfaceGraph,
    fg: FlipGraph,
    classes: Sequence[Sequence[int]],
    orients: Sequence[Orientation],
) -> list[ComponentReport]:
    """One report per weakly connected component within each homology class.

    Classes are taken in the given order, components by smallest node id.
    Cyclic components report no sink or source and no lattice.
    """
    reports: list[ComponentReport] = []
    for cls in classes:
        class_graph = induced_subgraph(fg, set(cls))
        for comp in weakly_connected_components(class_graph):
            sub = induced_subgraph(class_graph, comp)
            acyclic = all(len(c) == 1 for c in scc_decomposition(sub))
            out_zero = [n for n in sorted(comp) if not sub.out_arcs(n)]
            in_zero = [
                n
                for n in sorted(comp)
                if not any(a[1] == n for a in sub.arcs)
            ]
            sink = out_zero[0] if acyclic and len(out_zero) == 1 else None
            source = in_zero[0] if acyclic and len(in_zero) == 1 else None
            certified = False
            if acyclic:
                certified, _ = certify_distributive_lattice(g, fg, comp, orients)
            reports.append(
                ComponentReport(
                    component=tuple(sorted(comp)),
                    acyclic=acyclic,
                    sink=sink,
                    source=source,
                    lattice_certified=certified,
                    sink_in_O=sink is not None
                    and _no_face_outside(g, orients[sink], fg.forbidden, FaceState.CCW),
                    source_in_Ostar=source is not None
                    and _no_face_outside(
                        g, orients[source], fg.forbidden, FaceState.CW
                    ),
                )
            )
    return reports


def to_dot(
    g: SurfaceGraph,
    fg: FlipGraph,
    classes: Sequence[Sequence[int]],
    orients: Sequence[Orientation],
) -> str:
    """DOT text: one digraph per homology class.

    Arcs carry ``label=<face-id>``; within each component, the sink gets
    ``peripheries=2`` and the source ``style=bold``.
    """
    reports = component_reports(g, fg, classes, orients)
    sinks = {r.sink for r in reports if r.sink is not None}
    sources = {r.source for r in reports if r.source is not None}
    lines: list[str] = []
    for k, cls in enumerate(classes):
        lines.append(f"digraph class_{k} {{")
        for n in cls:
            attrs = [f'label="{n}:{orients[n].bitstring()}"']
            if n in sinks:
                attrs.append("peripheries=2")
            if n in sources:
                attrs.append("style=bold")
            lines.append(f"  n{n} [{', '.join(attrs)}];")
        members = set(cls)
        for frm, to, color in fg.arcs:
            if frm in members:
                lines.append(f"  n{frm} -> n{to} [label={color}];")
        lines.append("}")
    return "\n".join(lines) + "\n"
