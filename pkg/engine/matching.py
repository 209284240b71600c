"""Maximum matchings on forests, covered vertices, and trees attaining eta = p - 1."""
from typing import Dict, FrozenSet, List, Set, Tuple
import logging

import networkx as nx

from engine.graph import SignedGraph, delete_vertices, induced_subgraph, to_networkx
from engine.linalg import nullity
from engine.schemas import TreeCertificate, TreeRecord
from engine.structure import is_forest, is_tree, leaf_path, pendant_vertices

logger = logging.getLogger(__name__)

MatchingEdges = FrozenSet[Tuple[int, int]]

TWO_LEAF_NOTE = (
    "tree with two leaves is a path; eta = p - 1 holds exactly when the order is odd"
)


def _require_forest(f: SignedGraph) -> None:
    if not is_forest(f):
        raise ValueError("graph is not a forest")


def matching_number(f: SignedGraph) -> int:
    """Size of a maximum matching, by matching leaves to their parents bottom-up."""
    _require_forest(f)
    shape = to_networkx(f)
    matched: Set[int] = set()
    size = 0
    for part in nx.connected_components(shape):
        root = min(part)
        parent = dict(nx.bfs_predecessors(shape, root))
        for v in nx.dfs_postorder_nodes(shape, root):
            p = parent.get(v)
            if p is not None and v not in matched and p not in matched:
                matched.update((v, p))
                size += 1
    return size


def is_covered(f: SignedGraph, u: int) -> bool:
    """True when every maximum matching of the forest covers u."""
    if not 0 <= u < f.n:
        raise ValueError(f"vertex {u} out of range for n={f.n}")
    rest, _ = delete_vertices(f, [u])
    return matching_number(rest) == matching_number(f) - 1


def tree_nullity(t: SignedGraph) -> int:
    return t.n - 2 * matching_number(t)


def enumerate_maximum_matchings(f: SignedGraph) -> List[MatchingEdges]:
    """All maximum matchings by exhaustive search; only for small forests."""
    _require_forest(f)
    edges = [(u, v) for u, v, _ in f.edges]
    best: List[MatchingEdges] = []
    best_size = 0

    def extend(i: int, used: Set[int], chosen: List[Tuple[int, int]]) -> None:
        nonlocal best, best_size
        if len(chosen) + (len(edges) - i) < best_size:
            return
        if i == len(edges):
            if len(chosen) > best_size:
                best, best_size = [], len(chosen)
            if len(chosen) == best_size:
                best.append(frozenset(chosen))
            return
        u, v = edges[i]
        if u not in used and v not in used:
            chosen.append((u, v))
            extend(i + 1, used | {u, v}, chosen)
            chosen.pop()
        extend(i + 1, used, chosen)

    extend(0, set(), [])
    return best


def is_one_deficient_tree(t: SignedGraph) -> Tuple[bool, TreeCertificate]:
    """Decide eta(T) = p(T) - 1.

    The verdict is the exact-rank comparison. Alongside it the leaf-path recursion runs:
    every internal path from a leaf to its major vertex must have odd length, and after
    cutting the path at the lowest leaf (keeping the major vertex v) the residual tree must
    again attain eta = p - 1 with v covered. Two-leaf trees are paths and fall back to the
    odd-order test.
    """
    if t.n < 2 or not is_tree(t):
        raise ValueError("expected a tree with at least two vertices")
    p = len(pendant_vertices(t))
    direct = nullity(t) == p - 1
    cache: Dict[FrozenSet[int], Tuple[bool, List[TreeRecord]]] = {}
    recursive, records = _recurse(t, frozenset(range(t.n)), cache)
    note = TWO_LEAF_NOTE if p == 2 else None
    if recursive != direct:
        note = "leaf-path recursion disagrees with exact rank"
        logger.warning(f"Leaf-path recursion disagrees with exact rank on tree with n={t.n}")
    certificate = TreeCertificate(
        records=records, direct_verdict=direct, recursive_verdict=recursive, note=note
    )
    return direct, certificate


def _recurse(
    t: SignedGraph,
    alive: FrozenSet[int],
    cache: Dict[FrozenSet[int], Tuple[bool, List[TreeRecord]]],
) -> Tuple[bool, List[TreeRecord]]:
    if alive in cache:
        return cache[alive]
    sub, mapping = induced_subgraph(t, alive)
    back = {new: old for old, new in mapping.items()}
    leaves = pendant_vertices(sub)
    if len(leaves) <= 2:
        result: Tuple[bool, List[TreeRecord]] = (sub.n % 2 == 1 and len(leaves) == 2, [])
        cache[alive] = result
        return result

    paths = {u: leaf_path(sub, u) for u in leaves}
    even = [u for u in leaves if (len(paths[u]) - 1) % 2 == 0]
    leaf = even[0] if even else leaves[0]
    path = paths[leaf]
    major = path[-1]
    residual = alive - {back[w] for w in path[:-1]}
    rest, rest_map = induced_subgraph(t, residual)
    covered = is_covered(rest, rest_map[back[major]])
    record = TreeRecord(
        leaf=back[leaf],
        major=back[major],
        path=tuple(back[w] for w in path),
        parity="even" if even else "odd",
        covered=covered,
    )
    if even:
        result = (False, [record])
    else:
        ok, tail = _recurse(t, residual, cache)
        result = (covered and ok, [record] + tail)
    cache[alive] = result
    return result
