from __future__ import annotations

import itertools

import pytest

from surfflip import (
    ChainVector,
    DifferentOutDegrees,
    MismatchedGraph,
    chain_vector,
    difference_chain,
    face_vectors,
    homologous,
    homology_classes,
    is_vertex_balanced,
    reverse,
    signature,
    tree_cotree_basis,
)

from randgen import random_instances


def test_chain_vector_arithmetic():
    a = ChainVector((1, 0, -1))
    b = ChainVector((1, 1, 1))
    assert (a + b).entries == (2, 1, 0)
    assert (a - b).entries == (0, -1, -2)
    assert (-a).entries == (-1, 0, 1)
    assert a.scaled(3).entries == (3, 0, -3)
    assert not a.is_zero() and ChainVector((0, 0)).is_zero()
    assert a.support() == (0, 2)
    with pytest.raises(MismatchedGraph):
        a + ChainVector((1, 1))


def test_chain_vector_of_orientations(torus_orients):
    as_listed = torus_orients[17]  # bitstring 11111111
    assert chain_vector(as_listed).entries == (1,) * 8
    assert chain_vector(torus_orients[0]).entries == (-1,) * 8
    for d in (as_listed, torus_orients[9]):
        assert chain_vector(reverse(d), d).entries == (-1,) * 8
        assert chain_vector(d, reverse(d)).entries == (-1,) * 8
    partial = chain_vector({0: True, 3: False}, edge_count=8)
    assert partial.entries == (1, 0, 0, -1, 0, 0, 0, 0)


def test_difference_chain(torus_orients, named):
    d13, d14 = named["D13"], named["D14"]
    diff = difference_chain(d13, d14)
    assert diff.support() == tuple(range(8))
    assert diff.entries == tuple(1 if b == "1" else -1 for b in d13.bitstring())
    assert difference_chain(d14, d13).entries == tuple(-x for x in diff.entries)
    assert difference_chain(d13, d13).is_zero()
    with pytest.raises(MismatchedGraph):
        difference_chain(d13, (True, False))


def test_torus_face_vectors_frozen(torus):
    assert [v.entries for v in face_vectors(torus)] == [
        (1, 0, -1, 0, -1, 0, 1, 0),
        (-1, 0, 1, 0, 0, -1, 0, 1),
        (0, 1, 0, -1, 1, 0, -1, 0),
        (0, -1, 0, 1, 0, 1, 0, -1),
    ]


def test_face_vectors_sum_to_zero(torus, digon, cube):
    for g in (torus, digon, cube):
        total = [0] * g.edge_count
        for vec in face_vectors(g):
            total = [a + b for a, b in zip(total, vec.entries)]
        assert not any(total)


def test_face_vectors_are_vertex_balanced(torus, cube):
    for g in (torus, cube):
        for vec in face_vectors(g):
            assert is_vertex_balanced(g, vec)


def test_vertex_balance_of_differences(torus, torus_orients):
    for d1, d2 in itertools.combinations(torus_orients, 2):
        assert is_vertex_balanced(torus, difference_chain(d1, d2))
    lone_edge = ChainVector((1, 0, 0, 0, 0, 0, 0, 0))
    assert not is_vertex_balanced(torus, lone_edge)


def test_tree_cotree_basis_frozen(torus):
    basis = tree_cotree_basis(torus)
    assert basis.tree == frozenset({0, 4, 6})
    assert basis.cotree == frozenset({1, 2, 5})
    assert [c.entries for c in basis.cycles] == [
        (1, 0, 0, 1, -1, 0, 1, 0),
        (0, 0, 0, 0, 0, 0, 1, 1),
    ]


def test_basis_shape_and_balance(torus, cube):
    for g in (torus, cube):
        basis = tree_cotree_basis(g)
        assert len(basis.cycles) == 2 * g.genus
        assert len(basis.tree) == g.vertex_count - 1
        assert len(basis.cotree) == g.face_count - 1
        assert basis.tree.isdisjoint(basis.cotree)
        for cycle in basis.cycles:
            assert is_vertex_balanced(g, cycle)


def test_basis_cycles_traverse_their_edge_forward(torus):
    basis = tree_cotree_basis(torus)
    leftover = sorted(set(range(torus.edge_count)) - basis.tree - basis.cotree)
    assert leftover == [3, 7]
    for e, cycle in zip(leftover, basis.cycles):
        assert cycle.entries[e] == 1


def test_homologous_on_named_pairs(torus, named):
    assert homologous(torus, named["D13"], named["D14"])
    assert homologous(torus, named["D13"], named["D18"])
    assert not homologous(torus, named["D1"], named["D2"])
    assert not homologous(torus, named["D1"], named["D13"])
    assert homologous(torus, named["D1"], named["D1"])


def test_homologous_requires_same_out_degrees(torus, torus_orients):
    as_listed = torus_orients[17]
    tilted = type(as_listed)(forward=as_listed.forward[:7] + (False,))
    with pytest.raises(DifferentOutDegrees):
        homologous(torus, as_listed, tilted)


def test_signature_distinguishes_annulus_pair(torus, named):
    basis = tree_cotree_basis(torus)
    assert signature(torus, named["D1"], named["D1"], basis).mu == (0, 0)
    assert signature(torus, named["D1"], named["D2"], basis).mu == (0, -1)
    assert signature(torus, named["D2"], named["D1"], basis).mu == (0, 1)


def test_signature_agrees_with_labeling_on_all_pairs(torus, torus_orients):
    basis = tree_cotree_basis(torus)
    for d1, d2 in itertools.permutations(torus_orients, 2):
        mu = signature(torus, d1, d2, basis).mu
        assert (mu == (0, 0)) == homologous(torus, d1, d2)


def test_class_partition_matches_dual_route(torus, torus_orients):
    # Independently cross-checked: members share a class exactly when the
    # exact linear-algebra signature vanishes, and the partition below is
    # what both routes produce.
    classes = homology_classes(torus, torus_orients)
    assert classes == [
        [0],
        [1, 2],
        [3],
        [4, 10],
        [5, 6, 8, 9, 11, 12],
        [7, 13],
        [14],
        [15, 16],
        [17],
    ]


def test_fixture_partitions_into_thirteen_classes(torus, torus_orients):
    # The fixture is specified to split into 13 homology classes: 12
    # singletons plus one six-orientation class.  Both independent routes
    # (dual labeling and exact elimination) instead agree on the partition
    # asserted in test_class_partition_matches_dual_route: 9 classes with
    # size multiset {4 x 1, 4 x 2, 1 x 6}.  The pair with ids 1 and 2, for
    # example, differs by the boundary of the annulus between faces 1 and
    # 2, which is null-homologous, so they share a class; counting 13
    # requires treating them as separate, which no consistent notion of
    # the face-boundary span allows.  This test records the specified
    # count and fails honestly.
    classes = homology_classes(torus, torus_orients)
    sizes = sorted((len(c) for c in classes), reverse=True)
    assert len(classes) == 13, (
        f"expected 13 classes, library derives {len(classes)} with sizes {sizes}"
    )
    assert sizes == [6] + [1] * 12


def test_homology_classes_on_random_instances():
    for g, _, orients in random_instances(sphere=4, torus=4, seed=90125):
        classes = homology_classes(g, orients)
        assert sorted(i for cls in classes for i in cls) == list(range(len(orients)))
        if g.genus == 0:
            # Sphere: the face span is the whole cycle space, so a single class.
            assert len(classes) == 1
        basis = tree_cotree_basis(g)
        for cls in classes:
            rep = orients[cls[0]]
            for i in cls:
                assert signature(g, orients[i], rep, basis).mu == (0,) * len(basis.cycles)
