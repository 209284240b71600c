"""Constructive builders for paths, cycles, bicyclic shapes, compositions and random instances."""
from typing import Dict, List, Optional, Sequence, Tuple, Union
import logging
import re

import networkx as nx
import numpy as np

from engine.graph import Edge, SignedGraph, add_edges, build, disjoint_union, vertex_set
from engine.linalg import cycle_nullity_closed_form
from engine.matching import is_covered, is_one_deficient_tree
from engine.schemas import FamilySpec
from engine.structure import is_tree, pendant_vertices

logger = logging.getLogger(__name__)

Seed = Union[int, np.random.Generator, None]
CycleSpec = Tuple[int, int]

NULLITY_TWO_CYCLES: Tuple[CycleSpec, ...] = ((4, 1), (6, -1), (8, 1))

_NAMED = re.compile(r"^([PC])(\d+)([+-]?)$")


def _sign_token(token: str) -> int:
    if token not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {token!r}")
    return 1 if token == "+" else -1


def path(n: int, signs: Optional[Sequence[int]] = None) -> SignedGraph:
    """Signed path on vertices 0..n-1; all edges positive unless signs are given."""
    if n < 1:
        raise ValueError(f"a path needs at least one vertex, got n={n}")
    signs = [1] * (n - 1) if signs is None else list(signs)
    if len(signs) != n - 1:
        raise ValueError(f"a path on {n} vertices has {n - 1} edges, got {len(signs)} signs")
    return build(n, [(i, i + 1, s) for i, s in enumerate(signs)])


def cycle(n: int, sign: int = 1) -> SignedGraph:
    """Signed cycle whose only possibly negative edge is (n-1, 0)."""
    if n < 3:
        raise ValueError(f"a cycle needs at least three vertices, got n={n}")
    if sign not in (1, -1):
        raise ValueError(f"cycle sign must be +1 or -1, got {sign}")
    return build(n, [(i, i + 1, 1) for i in range(n - 1)] + [(n - 1, 0, sign)])


def coalesce(h: SignedGraph, v: int, k: SignedGraph, u: int) -> SignedGraph:
    """Identify vertex v of h with vertex u of k.

    Vertices of h keep their ids; the remaining vertices of k follow in increasing order.
    """
    if not 0 <= v < h.n or not 0 <= u < k.n:
        raise ValueError(f"coalescence vertices ({v}, {u}) out of range")
    mapping: Dict[int, int] = {u: v}
    for w in range(k.n):
        if w != u:
            mapping[w] = h.n + len(mapping) - 1
    return add_edges(h, [(mapping[a], mapping[b], s) for a, b, s in k.edges], new_vertices=k.n - 1)


def path_join(h: SignedGraph, v: int, k: SignedGraph, u: int, m: int) -> SignedGraph:
    """Join v in h and u in k by a positive path of order m (m - 2 new inner vertices)."""
    if m < 2:
        raise ValueError(f"a joining path needs order at least 2, got m={m}")
    if not 0 <= v < h.n or not 0 <= u < k.n:
        raise ValueError(f"joining vertices ({v}, {u}) out of range")
    base = disjoint_union(h, k)
    inner = list(range(base.n, base.n + m - 2))
    chain = [v] + inner + [h.n + u]
    return add_edges(base, [(a, b, 1) for a, b in zip(chain, chain[1:])], new_vertices=m - 2)


def attach_ear(
    h: SignedGraph, a: int, b: int, m: int, signs: Optional[Sequence[int]] = None
) -> SignedGraph:
    """Identify the two ends of a path of order m with distinct vertices a and b of h."""
    if a == b or not (0 <= a < h.n and 0 <= b < h.n):
        raise ValueError(f"ear ends ({a}, {b}) must be distinct vertices of h")
    if m < 2:
        raise ValueError(f"an ear needs order at least 2, got m={m}")
    if m == 2 and h.has_edge(a, b):
        raise ValueError(f"vertices {a} and {b} are already adjacent")
    signs = [1] * (m - 1) if signs is None else list(signs)
    if len(signs) != m - 1:
        raise ValueError(f"an ear of order {m} has {m - 1} edges, got {len(signs)} signs")
    chain = [a] + list(range(h.n, h.n + m - 2)) + [b]
    return add_edges(h, [(x, y, s) for (x, y), s in zip(zip(chain, chain[1:]), signs)], new_vertices=m - 2)


def infty(p: int, q: int, l: int, sign_p: int = 1, sign_q: int = 1) -> SignedGraph:
    """Cycles C_p and C_q joined by a positive path of order l; l = 1 shares a vertex."""
    if p < 3 or q < 3 or l < 1:
        raise ValueError(f"infty needs p, q >= 3 and l >= 1, got ({p}, {q}, {l})")
    if l == 1:
        return coalesce(cycle(p, sign_p), 0, cycle(q, sign_q), 0)
    return path_join(cycle(p, sign_p), 0, cycle(q, sign_q), 0, l)


def theta(p: int, q: int, l: int, signs: Tuple[int, int] = (1, 1)) -> SignedGraph:
    """Three internally disjoint paths of lengths p, q, l between vertices 0 and 1.

    The first edge of the p-path carries signs[0] and the first edge of the l-path carries
    signs[1], so the cycle through the p- and q-paths has sign signs[0] and the cycle
    through the q- and l-paths has sign signs[1].
    """
    lengths = (p, q, l)
    if min(lengths) < 1 or sum(1 for x in lengths if x == 1) > 1:
        raise ValueError(f"theta needs lengths >= 1 with at most one equal to 1, got {lengths}")
    first_signs = (signs[0], 1, signs[1])
    edges: List[Edge] = []
    n = 2
    for length, first in zip(lengths, first_signs):
        chain = [0] + list(range(n, n + length - 1)) + [1]
        n += length - 1
        edges.extend((a, b, first if i == 0 else 1) for i, (a, b) in enumerate(zip(chain, chain[1:])))
    return build(n, edges)


def tree_join(t: SignedGraph, u: int, g: SignedGraph, targets: Sequence[int]) -> SignedGraph:
    if not is_tree(t):
        raise ValueError("tree join needs a tree as first operand")
    if not 0 <= u < t.n:
        raise ValueError(f"vertex {u} out of range for the tree")
    chosen = vertex_set(g, targets)
    if not chosen:
        raise ValueError("tree join needs at least one target vertex")
    return add_edges(disjoint_union(t, g), [(u, t.n + x, 1) for x in chosen])


def form1(t: SignedGraph, leaves: Sequence[int], cycle_specs: Sequence[CycleSpec]) -> SignedGraph:
    """Attach one nullity-2 cycle at each listed leaf of a tree with eta(T) = p(T) - 1."""
    if not is_tree(t):
        raise ValueError("form1 needs a tree")
    if len(leaves) != len(cycle_specs):
        raise ValueError("need exactly one cycle spec per attachment leaf")
    if len(set(leaves)) != len(leaves):
        raise ValueError("attachment leaves must be distinct")
    tree_leaves = set(pendant_vertices(t))
    for leaf in leaves:
        if leaf not in tree_leaves:
            raise ValueError(f"vertex {leaf} is not a leaf of the tree")
    for length, sign in cycle_specs:
        if cycle_nullity_closed_form(length, sign) != 2:
            raise ValueError(f"cycle of length {length} and sign {sign:+d} does not have nullity 2")
    if not is_one_deficient_tree(t)[0]:
        raise ValueError("tree does not satisfy eta(T) = p(T) - 1")
    g = t
    for leaf, (length, sign) in zip(leaves, cycle_specs):
        g = coalesce(g, leaf, cycle(length, sign), 0)
    return g


def random_signed(n: int, edge_prob: float, seed: Seed = None) -> SignedGraph:
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {edge_prob}")
    rng = np.random.default_rng(seed)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < edge_prob:
                edges.append((u, v, 1 if rng.random() < 0.5 else -1))
    return build(n, edges)


def _random_signs(rng: np.random.Generator, count: int) -> List[int]:
    return [int(s) for s in rng.choice((1, -1), size=count)]


def random_tree(n: int, seed: Seed = None, signed: bool = True) -> SignedGraph:
    """Uniform labelled tree from a random Pruefer sequence."""
    if n < 1:
        raise ValueError(f"a tree needs at least one vertex, got n={n}")
    rng = np.random.default_rng(seed)
    if n == 1:
        return build(1, [])
    if n == 2:
        pairs = [(0, 1)]
    else:
        sequence = [int(x) for x in rng.integers(0, n, size=n - 2)]
        pairs = sorted(tuple(sorted(e)) for e in nx.from_prufer_sequence(sequence).edges())
    signs = _random_signs(rng, len(pairs)) if signed else [1] * len(pairs)
    return build(n, [(u, v, s) for (u, v), s in zip(pairs, signs)])


def random_connected_signed(n: int, extra_prob: float, seed: Seed = None) -> SignedGraph:
    """Random tree on n vertices plus each remaining pair with probability extra_prob."""
    rng = np.random.default_rng(seed)
    t = random_tree(n, rng)
    extra = [
        (u, v, 1 if rng.random() < 0.5 else -1)
        for u in range(n)
        for v in range(u + 1, n)
        if not t.has_edge(u, v) and rng.random() < extra_prob
    ]
    return add_edges(t, extra)


def grow_one_deficient_tree(leaves: int, seed: Seed = None, max_order: Optional[int] = None) -> SignedGraph:
    """Random tree with eta = p - 1 and the given number of leaves.

    Starts from P3 and repeatedly grafts a pendant path of odd order (1 or 3) at a random
    covered non-leaf vertex; each graft adds one leaf and keeps eta = p - 1.
    """
    if leaves < 2:
        raise ValueError(f"need at least two leaves, got {leaves}")
    rng = np.random.default_rng(seed)
    t = path(3)
    while len(pendant_vertices(t)) < leaves:
        room = None if max_order is None else max_order - t.n - (leaves - len(pendant_vertices(t)) - 1)
        if room is not None and room < 1:
            raise ValueError(f"cannot grow a tree with {leaves} leaves within order {max_order}")
        hosts = [v for v in range(t.n) if t.degree(v) >= 2 and is_covered(t, v)]
        host = int(rng.choice(hosts))
        size = 3 if (room is None or room >= 3) and rng.random() < 0.5 else 1
        chain = [host] + list(range(t.n, t.n + size))
        t = add_edges(t, [(a, b, 1) for a, b in zip(chain, chain[1:])], new_vertices=size)
    signs = _random_signs(rng, t.edge_count)
    return build(t.n, [(u, v, s) for (u, v, _), s in zip(t.edges, signs)])


def random_form1(c: int, seed: Seed = None, max_order: int = 30, leaf_free: bool = False) -> SignedGraph:
    """Seeded instance of a 1-deficient tree with c nullity-2 cycles hung on its leaves.

    With leaf_free every leaf of the tree receives a cycle.
    """
    if c < 1:
        raise ValueError(f"need at least one cycle, got c={c}")
    if c == 1 and leaf_free:
        raise ValueError("a leaf-free graph from a tree needs at least two cycles")
    rng = np.random.default_rng(seed)
    tree_leaves = c if leaf_free else c + int(rng.integers(0, 2))
    budget = max_order - 3 * c
    t = grow_one_deficient_tree(max(tree_leaves, 2), rng, max_order=budget)
    chosen = sorted(int(x) for x in rng.choice(pendant_vertices(t), size=c, replace=False))
    spare = max_order - t.n - 3 * c
    specs: List[CycleSpec] = []
    for _ in chosen:
        length, sign = NULLITY_TWO_CYCLES[int(rng.integers(0, len(NULLITY_TWO_CYCLES)))]
        if length - 4 > spare:
            length, sign = 4, 1
        spare -= length - 4
        specs.append((length, sign))
    return form1(t, chosen, specs)


def named_graph(text: str) -> SignedGraph:
    """Small operand syntax: `P<n>` for a positive path, `C<n>+` or `C<n>-` for a cycle."""
    match = _NAMED.match(text.strip())
    if not match:
        raise ValueError(f"{text!r} is not of the form P<n>, C<n>+ or C<n>-")
    kind, n, sign = match.group(1), int(match.group(2)), match.group(3) or "+"
    return path(n) if kind == "P" else cycle(n, _sign_token(sign))


def parse_family_spec(tokens: Sequence[str]) -> FamilySpec:
    if not tokens:
        raise ValueError("missing family name")
    params: Dict[str, str] = {}
    for token in tokens[1:]:
        key, sep, value = token.partition("=")
        if not sep or not key:
            raise ValueError(f"expected key=value, got {token!r}")
        params[key] = value
    return FamilySpec(family=tokens[0], params=params)


def _int(params: Dict[str, str], key: str, default: Optional[int] = None) -> int:
    if key not in params:
        if default is None:
            raise ValueError(f"missing parameter {key}")
        return default
    try:
        return int(params[key])
    except ValueError:
        raise ValueError(f"parameter {key} must be an integer, got {params[key]!r}") from None


def _signs(params: Dict[str, str], key: str, count: int) -> List[int]:
    text = params.get(key, "+" * count)
    if len(text) != count:
        raise ValueError(f"parameter {key} needs {count} sign characters, got {text!r}")
    return [_sign_token(ch) for ch in text]


def generate(spec: FamilySpec) -> SignedGraph:
    params = spec.params
    family = spec.family
    logger.info(f"Generating {family} with {params}")
    if family == "path":
        n = _int(params, "n")
        return path(n, _signs(params, "signs", n - 1) if n >= 1 else None)
    if family == "cycle":
        return cycle(_int(params, "n"), _sign_token(params.get("sign", "+")))
    if family == "infty":
        s = _signs(params, "signs", 2)
        return infty(_int(params, "p"), _int(params, "q"), _int(params, "l"), s[0], s[1])
    if family == "theta":
        s = _signs(params, "signs", 2)
        return theta(_int(params, "p"), _int(params, "q"), _int(params, "l"), (s[0], s[1]))
    if family == "coalesce":
        return coalesce(
            named_graph(params.get("h", "C4+")), _int(params, "v", 0),
            named_graph(params.get("k", "C4+")), _int(params, "u", 0),
        )
    if family == "path_join":
        return path_join(
            named_graph(params.get("h", "C4+")), _int(params, "v", 0),
            named_graph(params.get("k", "C4+")), _int(params, "u", 0), _int(params, "m"),
        )
    if family == "tree_join":
        targets = [int(x) for x in params.get("targets", "0").split(",") if x]
        return tree_join(
            named_graph(params.get("t", "P3")), _int(params, "u", 0), named_graph(params.get("g", "C4+")), targets
        )
    if family == "form1":
        return random_form1(
            _int(params, "c"), _int(params, "seed", 0), _int(params, "max_order", 30),
            leaf_free=params.get("leaf_free", "0") in ("1", "true", "yes"),
        )
    if family == "random":
        try:
            prob = float(params.get("prob", "0.5"))
        except ValueError:
            raise ValueError(f"parameter prob must be a number, got {params['prob']!r}") from None
        return random_signed(_int(params, "n"), prob, _int(params, "seed", 0))
    raise ValueError(f"unknown family {family!r}")
