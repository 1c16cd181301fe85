"""Seeded random embedding instances for property tests.

Each instance is a connected multigraph on 2-6 vertices with at most 12
edges and no loops, built around a random Hamiltonian cycle (so every edge
sits on a circuit and no bridge can collapse the two sides of an edge onto
one face), with uniformly shuffled rotations.  Instances are retried until
the embedding loads, hits the requested genus, and carries between 1 and
64 orientations for an out-degree vector sampled from a random orientation.
"""

from __future__ import annotations

import json
import random

from surfflip import (
    Orientation,
    OutDegreeSpec,
    SurfaceGraph,
    SurfflipError,
    enumerate_alpha,
    load_embedding,
)

DEFAULT_SEED = 20260818


def random_instances(
    sphere: int = 13, torus: int = 12, seed: int = DEFAULT_SEED
) -> list[tuple[SurfaceGraph, OutDegreeSpec, list[Orientation]]]:
    rng = random.Random(seed)
    instances = []
    for target_genus, quota in ((0, sphere), (1, torus)):
        made = 0
        while made < quota:
            result = _try_instance(rng, target_genus)
            if result is not None:
                instances.append(result)
                made += 1
    return instances


def _try_instance(
    rng: random.Random, target_genus: int
) -> tuple[SurfaceGraph, OutDegreeSpec, list[Orientation]] | None:
    n = rng.randint(2, 6)
    cycle = list(range(n))
    rng.shuffle(cycle)
    edges = [
        tuple(sorted((cycle[i], cycle[(i + 1) % n]))) for i in range(n)
    ]
    if n == 2:
        edges = [(0, 1), (0, 1)]
    for _ in range(rng.randint(0, 12 - n)):
        a, b = rng.sample(range(n), 2) if n > 2 else (0, 1)
        edges.append((a, b))
    rng.shuffle(edges)

    darts_at: dict[int, list[int]] = {v: [] for v in range(n)}
    for e, (tail, head) in enumerate(edges):
        darts_at[tail].append(2 * e)
        darts_at[head].append(2 * e + 1)
    rotations = []
    for v in range(n):
        order = darts_at[v][:]
        rng.shuffle(order)
        rotations.append(order)

    text = json.dumps(
        {"vertices": n, "edges": [list(e) for e in edges], "rotations": rotations}
    )
    try:
        g = load_embedding(text)
    except SurfflipError:
        return None
    if g.genus != target_genus:
        return None

    alpha = [0] * n
    for e, (tail, head) in enumerate(edges):
        alpha[tail if rng.random() < 0.5 else head] += 1
    spec = OutDegreeSpec(tuple(alpha))
    orients = enumerate_alpha(g, spec)
    if not 1 <= len(orients) <= 64:
        return None
    return g, spec, orients
