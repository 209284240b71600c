"""Unit tests for blocks, cycles and vertex statistics."""
import pytest

from engine.generators import coalesce, cycle, infty, path, theta
from engine.graph import build, delete_vertices, disjoint_union
from engine.structure import (
    all_cycles,
    block_cycle_order,
    blocks,
    cut_vertex_stats,
    cut_vertices,
    cycle_disjoint,
    cycle_sign,
    cycles_touching,
    cyclomatic_number,
    fundamental_cycles,
    internal_path,
    is_forest,
    is_tree,
    leaf_path,
    major_vertices,
    pendant_cycles,
    pendant_vertices,
    spanning_forest_edges,
    summarize,
    vertices_on_cycles,
)

K4 = build(4, [(u, v, 1) for u in range(4) for v in range(u + 1, 4)])
CLAW = build(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)])


def test_basic_counts():
    """Test c, pendant and major vertices."""
    lollipop = coalesce(cycle(4), 0, path(2), 0)
    assert cyclomatic_number(K4) == 3
    assert cyclomatic_number(disjoint_union(cycle(3), path(2))) == 1
    assert pendant_vertices(lollipop) == (4,)
    assert major_vertices(lollipop) == (0,)


def test_summary_of_lollipop():
    """Test the structure summary of a quadrangle with a pendant edge."""
    s = summarize(coalesce(cycle(4), 0, path(2), 0))
    assert (s.omega, s.c, s.p) == (1, 1, 1)
    assert s.degrees == (3, 2, 2, 2, 1)
    assert s.cycle_disjoint
    assert sorted(b.kind for b in s.blocks) == ["bridge", "cycle"]


def test_block_kinds():
    """Test bridge, cycle and complex blocks."""
    assert [b.kind for b in blocks(path(3))] == ["bridge", "bridge"]
    assert [b.kind for b in blocks(cycle(5))] == ["cycle"]
    assert [b.kind for b in blocks(theta(2, 2, 2))] == ["complex"]
    assert blocks(build(2, [])) == []


@pytest.mark.parametrize(
    "g, expected",
    [
        (infty(4, 4, 1), False),
        (infty(4, 4, 2), True),
        (theta(2, 2, 2), False),
        (disjoint_union(cycle(3), cycle(4)), True),
        (path(4), True),
    ],
)
def test_cycle_disjoint(g, expected):
    """Test that shared cut-vertices and complex blocks break disjointness."""
    assert cycle_disjoint(g) is expected
    assert cycle_disjoint(g) == (not cycles_touching(all_cycles(g)))


def test_vertices_on_cycles():
    """Test which vertices lie on some cycle."""
    g = infty(4, 4, 3)
    assert vertices_on_cycles(g) == set(range(8))
    assert 8 not in vertices_on_cycles(g)


def test_cycle_sign_and_errors():
    """Test cycle signs and rejection of a non-cycle walk."""
    g = cycle(4, -1)
    assert cycle_sign(g, (0, 1, 2, 3)) == -1
    with pytest.raises(ValueError):
        cycle_sign(g, (0, 2, 1))


def test_fundamental_cycles():
    """Test the BFS basis has c cycles with correct signs."""
    assert [c.sign for c in fundamental_cycles(cycle(6, -1))] == [-1]
    basis = fundamental_cycles(K4)
    assert len(basis) == 3
    assert all(c.length == 3 for c in basis)
    assert fundamental_cycles(path(5)) == []


def test_spanning_forest_uses_lowest_ids():
    """Test the BFS forest and the tree path closing each basis cycle."""
    assert spanning_forest_edges(K4) == {(0, 1), (0, 2), (0, 3)}
    assert [c.vertices for c in fundamental_cycles(K4)] == [(1, 0, 2), (1, 0, 3), (2, 0, 3)]
    g = disjoint_union(cycle(3), cycle(4, -1))
    assert spanning_forest_edges(g) == {(0, 1), (0, 2), (3, 4), (3, 6), (4, 5)}
    basis = fundamental_cycles(g)
    assert [c.vertices for c in basis] == [(1, 0, 2), (5, 4, 3, 6)]
    assert [c.sign for c in basis] == [1, -1]


def test_all_cycles_of_theta():
    """Test simple cycle enumeration on theta(2, 2, 2)."""
    found = all_cycles(theta(2, 2, 2))
    assert len(found) == 3
    assert all(c.length == 4 and c.vertices[0] == 0 for c in found)
    assert len(all_cycles(K4)) == 7


def test_block_cycle_order():
    """Test cyclic order from a start vertex, lower neighbour first."""
    (block,) = blocks(cycle(5))
    assert block_cycle_order(cycle(5), block, 2) == (2, 1, 0, 4, 3)


def test_pendant_cycles():
    """Test pendant cycles of infinity graphs and their absence elsewhere."""
    found = pendant_cycles(infty(4, 6, 3))
    assert [c.vertices for c in found] == [(0, 1, 2, 3), (4, 5, 6, 7, 8, 9)]
    assert pendant_cycles(cycle(5)) == []
    assert pendant_cycles(theta(2, 2, 2)) == []
    assert len(pendant_cycles(infty(4, 4, 1))) == 2


def test_internal_and_leaf_paths():
    """Test walks through degree-2 vertices."""
    assert leaf_path(path(4), 0) == (0, 1, 2, 3)
    g = infty(4, 4, 4)
    assert internal_path(g, 0, 8) == (0, 8, 9, 4)
    with pytest.raises(ValueError):
        leaf_path(path(4), 1)


@pytest.mark.parametrize(
    "g, x, expected",
    [
        (CLAW, 0, (3, 0, 0, 3, False)),
        (cycle(4), 0, (2, 1, 2, 1, True)),
        (infty(4, 4, 1), 0, (4, 2, 4, 2, True)),
    ],
)
def test_cut_vertex_stats(g, x, expected):
    """Test d, r, m, s and the cycle flag at chosen vertices."""
    st = cut_vertex_stats(g, x)
    assert (st.d, st.r, st.m, st.s, st.on_cycle) == expected


def test_cut_vertex_stats_identities_on_k4_minus_edge():
    """Test the three counting identities at every vertex of a small graph."""
    g = build(5, [(0, 1, 1), (0, 2, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1), (3, 4, -1)])
    for x in range(g.n):
        st = cut_vertex_stats(g, x)
        assert st.d + st.r >= st.m + st.s
        if st.on_cycle:
            assert 2 * st.d + st.r >= st.m + 2 * st.s + 1
        assert cyclomatic_number(delete_vertices(g, [x])[0]) == cyclomatic_number(g) - st.d + st.s


def test_cut_vertex_stats_preconditions():
    """Test range and connectivity checks."""
    with pytest.raises(ValueError):
        cut_vertex_stats(cycle(4), 4)
    with pytest.raises(ValueError):
        cut_vertex_stats(disjoint_union(path(2), path(2)), 0)


def test_tree_predicates_and_cut_vertices():
    """Test forest and tree predicates and articulation points."""
    assert is_tree(path(3)) and is_forest(path(3))
    assert not is_tree(disjoint_union(path(2), path(2)))
    assert is_forest(disjoint_union(path(2), path(2)))
    assert not is_forest(cycle(3))
    assert cut_vertices(path(3)) == (1,)
    assert cut_vertices(cycle(5)) == ()
    assert cut_vertices(infty(4, 4, 1)) == (0,)
