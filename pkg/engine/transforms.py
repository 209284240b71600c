"""Nullity- and rank-preserving rewrites, and the reduce-to-fixpoint driver."""
from typing import Iterable, List, Optional, Sequence, Tuple
import logging

from engine.graph import SignedGraph, add_edges, build, delete_vertices, vertex_set
from engine.linalg import cycle_nullity_closed_form, nullity
from engine.schemas import Cycle, ReductionStep, ReductionTrace
from engine.structure import make_cycle, pendant_cycles, pendant_vertices

logger = logging.getLogger(__name__)


def switch(g: SignedGraph, subset: Iterable[int]) -> SignedGraph:
    inside = set(vertex_set(g, subset))
    return SignedGraph(
        n=g.n,
        edges=tuple((u, v, -s if (u in inside) != (v in inside) else s) for u, v, s in g.edges),
    )


def delete_pendant_pair(g: SignedGraph, v: int) -> SignedGraph:
    if not 0 <= v < g.n or g.degree(v) != 1:
        raise ValueError(f"vertex {v} is not a pendant vertex")
    (u,) = g.neighbors(v)
    return delete_vertices(g, [v, u])[0]


def contract_p6(g: SignedGraph, path: Sequence[int]) -> SignedGraph:
    """Replace the path v1..v6 by the edge v1v6 carrying the sign of the path."""
    path = tuple(path)
    if len(path) != 6 or len(set(path)) != 6:
        raise ValueError("P6 contraction needs six distinct vertices")
    for v in path:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    sign = 1
    for a, b in zip(path, path[1:]):
        s = g.sign(a, b)
        if s == 0:
            raise ValueError(f"({a}, {b}) is not an edge")
        sign *= s
    for v in path[1:5]:
        if g.degree(v) != 2:
            raise ValueError(f"internal vertex {v} has degree {g.degree(v)}, expected 2")
    if g.has_edge(path[0], path[5]):
        raise ValueError(f"end vertices {path[0]} and {path[5]} are already adjacent")
    rest, mapping = delete_vertices(g, path[1:5])
    return add_edges(rest, [(mapping[path[0]], mapping[path[5]], sign)])


def pendant_cycle_to_c4(g: SignedGraph, cycle: Cycle) -> SignedGraph:
    """Swap a nullity-2 pendant cycle for an all-positive quadrangle at the same major vertex."""
    match = next((c for c in pendant_cycles(g) if set(c.vertices) == set(cycle.vertices)), None)
    if match is None:
        raise ValueError(f"{cycle.vertices} is not a pendant cycle")
    if cycle_nullity_closed_form(match.length, match.sign) != 2:
        raise ValueError(f"pendant cycle {match.vertices} does not have nullity 2")
    major = match.vertices[0]
    rest, mapping = delete_vertices(g, match.vertices[1:])
    m, k = mapping[major], rest.n
    return add_edges(rest, [(m, k, 1), (k, k + 1, 1), (k + 1, k + 2, 1), (k + 2, m, 1)], new_vertices=3)


def blow_up(g: SignedGraph, multiplicities: Sequence[int]) -> SignedGraph:
    """Replace vertex i by an independent set of multiplicities[i] copies."""
    if len(multiplicities) != g.n:
        raise ValueError(f"expected {g.n} multiplicities, got {len(multiplicities)}")
    if any(m < 1 for m in multiplicities):
        raise ValueError("every multiplicity must be at least 1")
    offsets = [0]
    for m in multiplicities:
        offsets.append(offsets[-1] + m)
    edges = [
        (offsets[u] + i, offsets[v] + j, s)
        for u, v, s in g.edges
        for i in range(multiplicities[u])
        for j in range(multiplicities[v])
    ]
    return build(offsets[-1], edges)


def p6_candidates(g: SignedGraph) -> List[Tuple[int, ...]]:
    """Every path v1..v6 eligible for contraction, in lexicographic order."""
    found = []
    for start in range(g.n):
        for first in sorted(g.neighbors(start)):
            path = [start, first]
            while len(path) < 6 and g.degree(path[-1]) == 2:
                path.append(next(w for w in g.neighbors(path[-1]) if w != path[-2]))
            if len(path) == 6 and len(set(path)) == 6 and not g.has_edge(path[0], path[5]):
                found.append(tuple(path))
    return sorted(found)


def _reducible_cycle(g: SignedGraph) -> Optional[Cycle]:
    eligible = [
        c
        for c in pendant_cycles(g)
        if c.length != 4 and cycle_nullity_closed_form(c.length, c.sign) == 2
    ]
    return min(eligible, key=lambda c: (c.vertices[0], c.vertices), default=None)


def apply_step(g: SignedGraph, step: ReductionStep) -> SignedGraph:
    if step.rule == "pendant_pair_delete":
        return delete_pendant_pair(g, step.vertices[0])
    if step.rule == "p6_contract":
        return contract_p6(g, step.vertices)
    if step.rule == "pendant_cycle_to_c4":
        return pendant_cycle_to_c4(g, make_cycle(g, step.vertices))
    return switch(g, step.vertices)


def _next_step(g: SignedGraph) -> Optional[Tuple[str, Tuple[int, ...]]]:
    leaves = pendant_vertices(g)
    if leaves:
        v = leaves[0]
        (u,) = g.neighbors(v)
        return "pendant_pair_delete", (v, u)
    candidates = p6_candidates(g)
    if candidates:
        return "p6_contract", candidates[0]
    cycle = _reducible_cycle(g)
    if cycle is not None:
        return "pendant_cycle_to_c4", cycle.vertices
    return None


def reduce(g: SignedGraph) -> ReductionTrace:
    """Apply pendant-pair deletion, P6 contraction and pendant-cycle normalisation until none applies."""
    current, eta = g, nullity(g)
    steps: List[ReductionStep] = []
    while True:
        chosen = _next_step(current)
        if chosen is None:
            break
        rule, vertices = chosen
        step = ReductionStep(rule=rule, vertices=vertices, eta_before=eta, eta_after=eta)
        current = apply_step(current, step)
        after = nullity(current)
        step = step.model_copy(update={"eta_after": after})
        logger.debug(f"{rule} at {vertices}: eta {eta} -> {after}, n={current.n}")
        if after != eta:
            logger.warning(f"Nullity changed by {rule} at {vertices}: {eta} -> {after}")
        steps.append(step)
        eta = after
    logger.info(f"Reduced n={g.n} to n={current.n} in {len(steps)} steps")
    return ReductionTrace(initial=g, steps=steps, final=current)


def replay(trace: ReductionTrace) -> SignedGraph:
    current = trace.initial
    for step in trace.steps:
        current = apply_step(current, step)
    return current


def format_trace(trace: ReductionTrace) -> str:
    return "".join(
        f"{step.rule} {' '.join(str(v) for v in step.vertices)} {step.eta_after}\n"
        for step in trace.steps
    )
