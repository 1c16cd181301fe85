from __future__ import annotations

import json
from pathlib import Path

import pytest

from surfflip import (
    Orientation,
    OutDegreeSpec,
    SurfaceGraph,
    enumerate_alpha,
    homology_classes,
    load_embedding,
)

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def torus() -> SurfaceGraph:
    """Two parallel edges around each handle direction: 4 vertices, 8 edges,
    4 quadrilateral faces, genus 1."""
    return load_embedding(fixture_text("torus_2x2.json"))


@pytest.fixture(scope="session")
def torus_orients(torus) -> list[Orientation]:
    return enumerate_alpha(torus, OutDegreeSpec((2, 2, 2, 2)))


@pytest.fixture(scope="session")
def torus_classes(torus, torus_orients) -> list[list[int]]:
    return homology_classes(torus, torus_orients)


@pytest.fixture(scope="session")
def torus_labels() -> dict:
    """Named orientations/faces pinned by structural properties."""
    return json.loads(fixture_text("torus_2x2_labels.json"))


@pytest.fixture(scope="session")
def named(torus_orients, torus_labels) -> dict[str, Orientation]:
    by_bits = {d.bitstring(): d for d in torus_orients}
    return {name: by_bits[bits] for name, bits in torus_labels["orientations"].items()}


@pytest.fixture(scope="session")
def digon() -> SurfaceGraph:
    return load_embedding(fixture_text("digon.json"))


@pytest.fixture(scope="session")
def cube() -> SurfaceGraph:
    return load_embedding(fixture_text("cube.json"))
