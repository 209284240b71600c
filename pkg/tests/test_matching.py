"""Unit tests for forest matchings and trees with eta = p - 1."""
from itertools import product

import networkx as nx
import pytest

from engine.generators import cycle, path
from engine.graph import build, disjoint_union
from engine.linalg import nullity
from engine.matching import (
    TWO_LEAF_NOTE,
    enumerate_maximum_matchings,
    is_covered,
    is_one_deficient_tree,
    matching_number,
    tree_nullity,
)


def spider(*legs):
    """Star-like tree: centre 0 with one path per leg length."""
    edges, n = [], 1
    for length in legs:
        chain = [0] + list(range(n, n + length))
        edges.extend((a, b, 1) for a, b in zip(chain, chain[1:]))
        n += length
    return build(n, edges)


def all_trees(max_n):
    for n in range(2, max_n + 1):
        for t in nx.nonisomorphic_trees(n):
            yield build(n, [(u, v, 1) for u, v in t.edges()])


@pytest.mark.parametrize(
    "g, expected",
    [(path(1), 0), (path(4), 2), (path(5), 2), (spider(1, 1, 1), 1), (disjoint_union(path(2), path(3)), 2)],
)
def test_matching_number(g, expected):
    """Test maximum matching sizes on small forests."""
    assert matching_number(g) == expected


def test_matching_number_matches_networkx():
    """Test the leaf-first matching against a general maximum matching."""
    for t in all_trees(9):
        shape = nx.Graph([(u, v) for u, v, _ in t.edges])
        assert matching_number(t) == len(nx.max_weight_matching(shape, maxcardinality=True))
        assert matching_number(disjoint_union(t, path(3))) == matching_number(t) + 1


def test_matching_number_rejects_cycles():
    """Test that a graph with a cycle is refused."""
    with pytest.raises(ValueError):
        matching_number(cycle(4))


def test_covered_vertices_on_small_trees():
    """Test covered vertices of P3, P4 and the claw."""
    assert [is_covered(path(3), u) for u in range(3)] == [False, True, False]
    assert all(is_covered(path(4), u) for u in range(4))
    claw = spider(1, 1, 1)
    assert is_covered(claw, 0)
    assert not any(is_covered(claw, u) for u in (1, 2, 3))


def test_is_covered_range_check():
    """Test that an out-of-range vertex is refused."""
    with pytest.raises(ValueError):
        is_covered(path(3), 3)


def test_covered_agrees_with_exhaustive_matchings():
    """Test is_covered against every maximum matching on all trees up to order 8."""
    for t in all_trees(8):
        matchings = enumerate_maximum_matchings(t)
        assert all(len(m) == matching_number(t) for m in matchings)
        for u in range(t.n):
            assert is_covered(t, u) == all(any(u in e for e in m) for m in matchings)


def test_tree_nullity_ignores_signs():
    """Test n - 2 mu against exact rank for every signing of small trees."""
    for t in all_trees(7):
        for signs in product((1, -1), repeat=t.edge_count):
            signed = build(t.n, [(u, v, s) for (u, v, _), s in zip(t.edges, signs)])
            assert tree_nullity(signed) == nullity(signed)


@pytest.mark.parametrize(
    "legs, eta, expected",
    [((1, 1, 2), 1, False), ((1, 1, 3), 2, True), ((3, 3, 3), 2, True), ((1, 1, 1), 2, True), ((2, 2, 2), 1, False)],
)
def test_spiders(legs, eta, expected):
    """Test the eta = p - 1 decision on spiders."""
    t = spider(*legs)
    assert nullity(t) == eta
    verdict, certificate = is_one_deficient_tree(t)
    assert verdict is expected
    assert certificate.agrees
    assert certificate.note is None


def test_failing_tree_records_even_leaf_path():
    """Test that a failure is explained by an even leaf path."""
    _, certificate = is_one_deficient_tree(spider(1, 1, 2))
    assert certificate.records[-1].parity == "even"
    assert certificate.records[-1].leaf == 4


def test_passing_tree_records_odd_paths():
    """Test that every recorded cut on a passing tree is odd with a covered major vertex."""
    verdict, certificate = is_one_deficient_tree(spider(3, 3, 3))
    assert verdict
    assert certificate.records
    assert all(r.parity == "odd" and r.covered for r in certificate.records)
    assert certificate.records[0].path == (3, 2, 1, 0)


@pytest.mark.parametrize("n, expected", [(2, False), (3, True), (5, True), (6, False)])
def test_two_leaf_trees_follow_order_parity(n, expected):
    """Test paths: odd order attains eta = p - 1."""
    verdict, certificate = is_one_deficient_tree(path(n))
    assert verdict is expected
    assert certificate.note == TWO_LEAF_NOTE


def test_recursion_agrees_on_all_small_trees():
    """Test the leaf-path recursion against exact rank on all trees up to order 9."""
    for t in all_trees(9):
        _, certificate = is_one_deficient_tree(t)
        assert certificate.agrees


@pytest.mark.slow
def test_recursion_agrees_up_to_twelve():
    """Test the leaf-path recursion on all trees up to order 12."""
    for t in all_trees(12):
        assert is_one_deficient_tree(t)[1].agrees


@pytest.mark.parametrize("g", [path(1), cycle(4), disjoint_union(path(2), path(2))])
def test_one_deficient_tree_rejects_non_trees(g):
    """Test the precondition of the tree decision."""
    with pytest.raises(ValueError):
        is_one_deficient_tree(g)
