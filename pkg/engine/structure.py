"""Structural invariants of signed graphs: blocks, cycles, pendant cycles and vertex statistics."""
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple
import logging

import networkx as nx

from engine.graph import SignedGraph, component_count, delete_vertices, to_networkx
from engine.schemas import Block, CutVertexStats, Cycle, StructureSummary

logger = logging.getLogger(__name__)


def cyclomatic_number(g: SignedGraph) -> int:
    return g.edge_count - g.n + component_count(g)


def pendant_vertices(g: SignedGraph) -> Tuple[int, ...]:
    return tuple(v for v, d in enumerate(g.degrees()) if d == 1)


def major_vertices(g: SignedGraph) -> Tuple[int, ...]:
    return tuple(v for v, d in enumerate(g.degrees()) if d >= 3)


def blocks(g: SignedGraph) -> List[Block]:
    """Biconnected-component decomposition; isolated vertices belong to no block."""
    found = []
    for edge_list in nx.biconnected_component_edges(to_networkx(g)):
        edges = tuple(sorted((min(u, v), max(u, v)) for u, v in edge_list))
        vertices = tuple(sorted({v for e in edges for v in e}))
        if len(edges) == 1:
            kind = "bridge"
        elif len(edges) == len(vertices):
            kind = "cycle"
        else:
            kind = "complex"
        found.append(Block(vertices=vertices, edges=edges, kind=kind))
    found.sort(key=lambda b: (b.vertices, b.edges))
    return found


def vertices_on_cycles(g: SignedGraph, found: Optional[List[Block]] = None) -> Set[int]:
    found = blocks(g) if found is None else found
    return {v for b in found if b.kind != "bridge" for v in b.vertices}


def cycle_disjoint(g: SignedGraph, found: Optional[List[Block]] = None) -> bool:
    found = blocks(g) if found is None else found
    seen: Set[int] = set()
    for b in found:
        if b.kind == "complex":
            return False
        if b.kind == "cycle":
            if seen.intersection(b.vertices):
                return False
            seen.update(b.vertices)
    return True


def summarize(g: SignedGraph) -> StructureSummary:
    found = blocks(g)
    omega = component_count(g)
    return StructureSummary(
        omega=omega,
        c=g.edge_count - g.n + omega,
        p=len(pendant_vertices(g)),
        degrees=g.degrees(),
        blocks=found,
        cycle_disjoint=cycle_disjoint(g, found),
    )


def cycle_sign(g: SignedGraph, vertices: Sequence[int]) -> int:
    """Product of edge signs around the closed walk v1..vk v1."""
    sign = 1
    for i, u in enumerate(vertices):
        s = g.sign(u, vertices[(i + 1) % len(vertices)])
        if s == 0:
            raise ValueError(f"{tuple(vertices)} is not a cycle of the graph")
        sign *= s
    return sign


def make_cycle(g: SignedGraph, vertices: Sequence[int]) -> Cycle:
    return Cycle(vertices=tuple(vertices), sign=cycle_sign(g, vertices))


def _bfs_forest(g: SignedGraph) -> nx.Graph:
    shape = to_networkx(g)
    forest = nx.Graph()
    forest.add_nodes_from(range(g.n))
    for part in nx.connected_components(shape):
        forest.add_edges_from(nx.bfs_edges(shape, min(part), sort_neighbors=sorted))
    return forest


def spanning_forest_edges(g: SignedGraph) -> Set[Tuple[int, int]]:
    """Edges of the BFS spanning forest rooted at the lowest id of each component."""
    return {(min(u, v), max(u, v)) for u, v in _bfs_forest(g).edges()}


def fundamental_cycles(g: SignedGraph) -> List[Cycle]:
    """One cycle per non-tree edge of the BFS spanning forest, in edge order."""
    forest = _bfs_forest(g)
    cycles = []
    for u, v, _ in g.edges:
        if forest.has_edge(u, v):
            continue
        cycles.append(make_cycle(g, nx.shortest_path(forest, u, v)))
    return cycles


def all_cycles(g: SignedGraph) -> List[Cycle]:
    """Every simple cycle, each listed once starting from its lowest vertex."""
    found = []
    for raw in nx.simple_cycles(to_networkx(g)):
        if len(raw) < 3:
            continue
        start = raw.index(min(raw))
        rotated = raw[start:] + raw[:start]
        if rotated[-1] < rotated[1]:
            rotated = [rotated[0]] + rotated[:0:-1]
        found.append(make_cycle(g, rotated))
    found.sort(key=lambda c: (c.length, c.vertices))
    return found


def block_cycle_order(g: SignedGraph, block: Block, start: int) -> Tuple[int, ...]:
    """Vertices of a cycle block in cyclic order from `start`, towards the lower neighbour first."""
    inside = set(block.vertices)
    order = [start]
    cur = min(w for w in g.neighbors(start) if w in inside)
    while cur != start:
        order.append(cur)
        cur = next(w for w in g.neighbors(cur) if w in inside and w != order[-2])
    return tuple(order)


def pendant_cycles(g: SignedGraph) -> List[Cycle]:
    """Cycle blocks holding exactly one vertex of degree at least 3, listed from that vertex."""
    found = []
    for b in blocks(g):
        if b.kind != "cycle":
            continue
        majors = [v for v in b.vertices if g.degree(v) >= 3]
        if len(majors) == 1:
            found.append(make_cycle(g, block_cycle_order(g, b, majors[0])))
    found.sort(key=lambda c: c.vertices)
    return found


def internal_path(g: SignedGraph, start: int, first: int) -> Tuple[int, ...]:
    """Walk start -> first and onwards through degree-2 vertices; stops at the first other vertex."""
    path = [start, first]
    while g.degree(path[-1]) == 2 and path[-1] != start:
        nxt = next(w for w in g.neighbors(path[-1]) if w != path[-2])
        path.append(nxt)
    return tuple(path)


def leaf_path(g: SignedGraph, u: int) -> Tuple[int, ...]:
    """Internal path from the leaf u to the nearest vertex whose degree is not 2."""
    if g.degree(u) != 1:
        raise ValueError(f"vertex {u} is not a leaf")
    (first,) = g.neighbors(u)
    return internal_path(g, u, first)


def cut_vertex_stats(g: SignedGraph, x: int) -> CutVertexStats:
    """Counts at x used by the vertex inequalities of connected graphs."""
    if not 0 <= x < g.n:
        raise ValueError(f"vertex {x} out of range for n={g.n}")
    if component_count(g) != 1:
        raise ValueError("cut-vertex statistics need a connected graph")
    two_degree = [w for w in g.neighbors(x) if g.degree(w) == 2]
    rest, mapping = delete_vertices(g, [x])
    labels = _component_labels(rest)
    return CutVertexStats(
        x=x,
        d=g.degree(x),
        r=len({labels[mapping[w]] for w in two_degree}),
        m=len(two_degree),
        s=len(set(labels.values())),
        on_cycle=x in vertices_on_cycles(g),
    )


def _component_labels(g: SignedGraph) -> Dict[int, int]:
    labels: Dict[int, int] = {}
    for i, part in enumerate(nx.connected_components(to_networkx(g))):
        for v in part:
            labels[v] = i
    return labels


def is_forest(g: SignedGraph) -> bool:
    return cyclomatic_number(g) == 0


def is_tree(g: SignedGraph) -> bool:
    return g.n > 0 and g.edge_count == g.n - 1 and component_count(g) == 1


def cut_vertices(g: SignedGraph) -> Tuple[int, ...]:
    return tuple(sorted(nx.articulation_points(to_networkx(g))))


def cycles_touching(cycles: Iterable[Cycle]) -> bool:
    seen: Set[int] = set()
    for c in cycles:
        if seen.intersection(c.vertices):
            return True
        seen.update(c.vertices)
    return False
