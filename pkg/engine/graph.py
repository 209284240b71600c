"""Signed graph value type, construction, decomposition and the text format."""
import sys
from pathlib import Path
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union
import logging

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator

logger = logging.getLogger(__name__)

Edge = Tuple[int, int, int]
VertexSet = Tuple[int, ...]


class GraphError(ValueError):
    """Raised when a signed graph would violate the simple-graph model."""


class ParseError(GraphError):
    """Raised for malformed graph text."""


class SignedGraph(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(0, ge=0, description="Number of vertices, labelled 0..n-1")
    edges: Tuple[Edge, ...] = Field(default=(), description="Edges (u, v, sign) with u < v and sign in {+1, -1}")

    _adjacency: Tuple[Dict[int, int], ...] = PrivateAttr(default=())

    @field_validator("edges")
    @classmethod
    def _sort_edges(cls, edges: Tuple[Edge, ...]) -> Tuple[Edge, ...]:
        return tuple(sorted(edges))

    @model_validator(mode="after")
    def _check_edges(self) -> "SignedGraph":
        seen = set()
        for u, v, sign in self.edges:
            if not 0 <= u < v < self.n:
                raise GraphError(f"edge ({u}, {v}) must satisfy 0 <= u < v < n={self.n}")
            if sign not in (1, -1):
                raise GraphError(f"edge ({u}, {v}) has sign {sign}, expected +1 or -1")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        return self

    def model_post_init(self, __context) -> None:
        adjacency: List[Dict[int, int]] = [{} for _ in range(self.n)]
        for u, v, sign in self.edges:
            adjacency[u][v] = sign
            adjacency[v][u] = sign
        self._adjacency = tuple(adjacency)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> Mapping[int, int]:
        return MappingProxyType(self._adjacency[v])

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def degrees(self) -> Tuple[int, ...]:
        return tuple(len(nbrs) for nbrs in self._adjacency)

    def sign(self, u: int, v: int) -> int:
        """Sign of edge uv, 0 when u and v are not adjacent."""
        return self._adjacency[u].get(v, 0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjacency[u]


def _check_vertex(n: int, v: int) -> None:
    if not 0 <= v < n:
        raise GraphError(f"vertex {v} out of range for n={n}")


def vertex_set(g: SignedGraph, ids: Iterable[int]) -> VertexSet:
    out = tuple(sorted(set(ids)))
    for v in out:
        _check_vertex(g.n, v)
    return out


def build(n: int, edge_list: Iterable[Sequence[int]]) -> SignedGraph:
    """Build a normalized graph; repeated edges with equal signs collapse."""
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    signs: Dict[Tuple[int, int], int] = {}
    for u, v, sign in edge_list:
        _check_vertex(n, u)
        _check_vertex(n, v)
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        if sign not in (1, -1):
            raise GraphError(f"edge ({u}, {v}) has sign {sign}, expected +1 or -1")
        key = (min(u, v), max(u, v))
        if signs.get(key, sign) != sign:
            raise GraphError(f"edge {key} given with conflicting signs")
        signs[key] = sign
    return SignedGraph(n=n, edges=tuple((u, v, s) for (u, v), s in signs.items()))


def empty_graph(n: int = 0) -> SignedGraph:
    return SignedGraph(n=n)


def induced_subgraph(g: SignedGraph, keep: Iterable[int]) -> Tuple[SignedGraph, Dict[int, int]]:
    """Subgraph induced on `keep`, relabelled in increasing id order.

    Returns the graph and the old -> new vertex map.
    """
    kept = vertex_set(g, keep)
    mapping = {old: new for new, old in enumerate(kept)}
    edges = tuple(
        (mapping[u], mapping[v], s) for u, v, s in g.edges if u in mapping and v in mapping
    )
    return SignedGraph(n=len(kept), edges=edges), mapping


def delete_vertices(g: SignedGraph, removed: Iterable[int]) -> Tuple[SignedGraph, Dict[int, int]]:
    """G - U with contiguous relabelling; returns the graph and the old -> new map."""
    gone = set(vertex_set(g, removed))
    return induced_subgraph(g, (v for v in range(g.n) if v not in gone))


def disjoint_union(*graphs: SignedGraph) -> SignedGraph:
    """Union with the vertices of each operand shifted after the previous ones."""
    edges: List[Edge] = []
    offset = 0
    for h in graphs:
        edges.extend((u + offset, v + offset, s) for u, v, s in h.edges)
        offset += h.n
    return SignedGraph(n=offset, edges=tuple(edges))


def add_edges(g: SignedGraph, extra: Iterable[Sequence[int]], new_vertices: int = 0) -> SignedGraph:
    return build(g.n + new_vertices, list(g.edges) + [tuple(e) for e in extra])


def to_networkx(g: SignedGraph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(g.n))
    graph.add_edges_from((u, v, {"sign": s}) for u, v, s in g.edges)
    return graph


def components(g: SignedGraph) -> List[Tuple[SignedGraph, VertexSet]]:
    """Connected components ordered by lowest vertex id.

    Each entry is the relabelled component and the original ids of its vertices
    (position i holds the original id of new vertex i).
    """
    parts = sorted(tuple(sorted(c)) for c in nx.connected_components(to_networkx(g)))
    return [(induced_subgraph(g, part)[0], part) for part in parts]


def component_count(g: SignedGraph) -> int:
    return nx.number_connected_components(to_networkx(g)) if g.n else 0


def is_connected(g: SignedGraph) -> bool:
    return g.n > 0 and component_count(g) == 1


def relabel(g: SignedGraph, order: Sequence[int]) -> SignedGraph:
    if sorted(order) != list(range(g.n)):
        raise GraphError("relabelling must be a permutation of the vertex ids")
    position = {old: new for new, old in enumerate(order)}
    return build(g.n, ((position[u], position[v], s) for u, v, s in g.edges))


def parse(text: str) -> SignedGraph:
    """Parse the line format: `n <int>` then `e <u> <v> <+|->` lines, `#` comments."""
    n = None
    edges: List[Edge] = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 2 or tokens[0] != "n":
                raise ParseError(f"line {lineno}: expected 'n <int>' header, got {line!r}")
            try:
                n = int(tokens[1])
            except ValueError:
                raise ParseError(f"line {lineno}: vertex count {tokens[1]!r} is not an integer") from None
            if n < 0:
                raise ParseError(f"line {lineno}: vertex count must be non-negative")
            continue
        if len(tokens) != 4 or tokens[0] != "e":
            raise ParseError(f"line {lineno}: expected 'e <u> <v> <+|->', got {line!r}")
        try:
            u, v = int(tokens[1]), int(tokens[2])
        except ValueError:
            raise ParseError(f"line {lineno}: vertex ids must be integers") from None
        if tokens[3] not in ("+", "-"):
            raise ParseError(f"line {lineno}: bad sign token {tokens[3]!r}")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {lineno}: vertex id out of range for n={n}")
        if u == v:
            raise ParseError(f"line {lineno}: loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"line {lineno}: duplicate edge {key}")
        seen.add(key)
        edges.append((key[0], key[1], 1 if tokens[3] == "+" else -1))
    if n is None:
        raise ParseError("missing 'n <int>' header")
    return SignedGraph(n=n, edges=tuple(edges))


def serialize(g: SignedGraph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"e {u} {v} {'+' if s > 0 else '-'}" for u, v, s in g.edges)
    return "\n".join(lines) + "\n"


def one_line(g: SignedGraph) -> str:
    return serialize(g).strip().replace("\n", "; ")


def read_graph(path: Union[str, Path]) -> SignedGraph:
    if str(path) == "-":
        return parse(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as f:
        return parse(f.read())


def write_graph(g: SignedGraph, path: Union[str, Path]) -> None:
    text = serialize(g)
    if str(path) == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    logger.info(f"Wrote graph with n={g.n}, |E|={g.edge_count} to {path}")
