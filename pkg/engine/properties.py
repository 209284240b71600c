"""Registry of the machine-checked properties run by the verification harness.

A property either runs over every graph of the enumerated universe (no `instances`) or
over its own seeded suite of cases. A check returns None when it does not apply, a bool,
or a (holds, equality_case) pair.
"""
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union
import math

import networkx as nx
import numpy as np

from engine.classify import (
    bound,
    recognize_bicyclic_extremal,
    recognize_cycle_extremal,
    recognize_leaf_free_extremal,
    recognize_one_deficient,
)
from engine.config import VerifySettings
from engine.generators import (
    NULLITY_TWO_CYCLES,
    attach_ear,
    coalesce,
    cycle,
    grow_one_deficient_tree,
    infty,
    path,
    path_join,
    random_connected_signed,
    random_form1,
    random_signed,
    random_tree,
    theta,
    tree_join,
)
from engine.graph import (
    SignedGraph,
    add_edges,
    build,
    components,
    delete_vertices,
    disjoint_union,
    induced_subgraph,
    is_connected,
    one_line,
    parse,
    relabel,
    serialize,
)
from engine.linalg import (
    adjacency,
    cycle_nullity_closed_form,
    integer_rank,
    multiplicity,
    nullity,
    parse_rational,
    path_nullity_closed_form,
    rank,
)
from engine.matching import (
    enumerate_maximum_matchings,
    is_covered,
    is_one_deficient_tree,
    tree_nullity,
)
from engine.structure import (
    all_cycles,
    cut_vertex_stats,
    cut_vertices,
    cycles_touching,
    cyclomatic_number,
    fundamental_cycles,
    internal_path,
    pendant_cycles,
    pendant_vertices,
    summarize,
    vertices_on_cycles,
)
from engine.transforms import (
    blow_up,
    contract_p6,
    delete_pendant_pair,
    p6_candidates,
    pendant_cycle_to_c4,
    reduce,
    replay,
    switch,
)

Outcome = Union[None, bool, Tuple[bool, bool]]

# cycle enumeration for the oracles stays below this order
ORACLE_MAX_ORDER = 10


class Instance:
    """A universe graph with invariants computed once and shared by every check."""

    def __init__(self, g: SignedGraph) -> None:
        self.g = g

    @cached_property
    def eta(self) -> int:
        return nullity(self.g)

    @cached_property
    def summary(self):
        return summarize(self.g)

    @cached_property
    def connected(self) -> bool:
        return is_connected(self.g)

    @cached_property
    def has_isolated(self) -> bool:
        return any(d == 0 for d in self.g.degrees())

    def __str__(self) -> str:
        return one_line(self.g)


@dataclass(frozen=True)
class Case:
    """One suite instance: the graph under test plus whatever the check needs."""

    label: str
    graph: SignedGraph
    extra: Tuple[Any, ...] = ()

    def __str__(self) -> str:
        tail = f" {self.extra}" if self.extra else ""
        return f"{self.label}{tail}: {one_line(self.graph)}"


@dataclass(frozen=True)
class Property:
    name: str
    description: str
    check: Callable[[Any, VerifySettings], Outcome]
    instances: Optional[Callable[[VerifySettings], Iterable[Any]]] = None

    @property
    def over_universe(self) -> bool:
        return self.instances is None


REGISTRY: Dict[str, Property] = {}


def register(name: str, description: str, instances: Optional[Callable[[VerifySettings], Iterable[Any]]] = None):
    def decorator(check: Callable[[Any, VerifySettings], Outcome]):
        if name in REGISTRY:
            raise ValueError(f"property {name} registered twice")
        REGISTRY[name] = Property(name=name, description=description, check=check, instances=instances)
        return check

    return decorator


def _rng(settings: VerifySettings, tag: int, index: int) -> np.random.Generator:
    return np.random.default_rng([settings.seed, tag, index])


def _graph_seed(settings: VerifySettings, g: SignedGraph) -> List[int]:
    return [settings.seed, g.n] + [2 * (u * g.n + v) + (s < 0) for u, v, s in g.edges]


def _lambdas(settings: VerifySettings):
    return [parse_rational(x) for x in settings.lambdas]


def _pick(rng: np.random.Generator, n: int) -> int:
    return int(rng.integers(0, n))


def _small_connected(rng: np.random.Generator, low: int, high: int) -> SignedGraph:
    return random_connected_signed(int(rng.integers(low, high + 1)), 0.35, rng)


# ---------------------------------------------------------------- graph model


@register("parse_serialize_roundtrip", "parsing the serialized text gives the same graph")
def check_roundtrip(inst: Instance, settings: VerifySettings) -> Outcome:
    return parse(serialize(inst.g)) == inst.g


@register("components_partition", "components partition the vertex and edge sets")
def check_components_partition(inst: Instance, settings: VerifySettings) -> Outcome:
    parts = components(inst.g)
    ids = sorted(v for _, part in parts for v in part)
    edges = sum(part.edge_count for part, _ in parts)
    return ids == list(range(inst.g.n)) and edges == inst.g.edge_count and all(is_connected(p) for p, _ in parts)


@register("empty_deletion_identity", "deleting no vertices returns the graph unchanged")
def check_empty_deletion(inst: Instance, settings: VerifySettings) -> Outcome:
    rest, mapping = delete_vertices(inst.g, [])
    return rest == inst.g and all(k == v for k, v in mapping.items())


# ---------------------------------------------------------------- linear algebra


@register("rank_permutation_invariance", "rank is unchanged by relabelling and by a different pivot order")
def check_rank_permutation(inst: Instance, settings: VerifySettings) -> Outcome:
    g = inst.g
    expected = g.n - inst.eta
    orders = [list(reversed(range(g.n))), list(range(1, g.n)) + [0]] if g.n else []
    if any(rank(adjacency(relabel(g, order))) != expected for order in orders):
        return False
    # reversed columns force a different pivot sequence on the same matrix
    entries = adjacency(g).entries
    return integer_rank([row[::-1] for row in entries]) == expected


@register("componentwise_nullity", "nullity is the sum of component nullities")
def check_componentwise(inst: Instance, settings: VerifySettings) -> Outcome:
    return inst.eta == sum(nullity(part) for part, _ in components(inst.g))


@register("vertex_deletion_step", "deleting a vertex changes the nullity by at most one")
def check_vertex_deletion(inst: Instance, settings: VerifySettings) -> Outcome:
    if inst.g.n == 0:
        return None
    return all(abs(inst.eta - nullity(delete_vertices(inst.g, [v])[0])) <= 1 for v in range(inst.g.n))


@register("multiplicity_at_zero", "multiplicity of 0 equals the nullity")
def check_multiplicity_zero(inst: Instance, settings: VerifySettings) -> Outcome:
    return multiplicity(inst.g, 0) == inst.eta


def _path_cases(settings: VerifySettings) -> Iterator[Case]:
    for n in range(1, settings.path_max_order + 1):
        for signs in product((1, -1), repeat=n - 1):
            yield Case("path", path(n, signs))


@register("closed_form_paths", "every signed path has nullity n mod 2", instances=_path_cases)
def check_closed_form_paths(case: Case, settings: VerifySettings) -> Outcome:
    return nullity(case.graph) == path_nullity_closed_form(case.graph.n)


def _cycle_cases(settings: VerifySettings) -> Iterator[Case]:
    for n in range(3, settings.cycle_max_order + 1):
        for sign in (1, -1):
            yield Case("cycle", cycle(n, sign), (sign,))
        rng = _rng(settings, 2, n)
        for _ in range(4):
            signs = [int(s) for s in rng.choice((1, -1), size=n)]
            g = build(n, [(i, (i + 1) % n, s) for i, s in enumerate(signs)])
            yield Case("random_cycle", g, (math.prod(signs),))


@register("closed_form_cycles", "signed cycle nullity follows length mod 4 and sign", instances=_cycle_cases)
def check_closed_form_cycles(case: Case, settings: VerifySettings) -> Outcome:
    (sign,) = case.extra
    (basis,) = fundamental_cycles(case.graph)
    expected = cycle_nullity_closed_form(case.graph.n, sign)
    return basis.sign == sign and nullity(case.graph) == expected, expected == 2


# ---------------------------------------------------------------- structure


@register("summary_identities", "cyclomatic number, pendant count, degree sum and block kinds are consistent")
def check_summary(inst: Instance, settings: VerifySettings) -> Outcome:
    g, s = inst.g, inst.summary
    if s.c != g.edge_count - g.n + s.omega or sum(s.degrees) != 2 * g.edge_count:
        return False
    if s.p != sum(1 for d in s.degrees if d == 1):
        return False
    block_edges = sorted(e for b in s.blocks for e in b.edges)
    if block_edges != [(u, v) for u, v, _ in g.edges]:
        return False
    for b in s.blocks:
        ev, vv = len(b.edges), len(b.vertices)
        kind = "bridge" if ev == 1 else ("cycle" if ev == vv and vv >= 3 else "complex")
        if kind != b.kind or (kind == "complex" and ev <= vv):
            return False
    for i, a in enumerate(s.blocks):
        for b in s.blocks[i + 1:]:
            if len(set(a.vertices) & set(b.vertices)) > 1:
                return False
    return True


@register("vertex_statistics", "degree and component counts at a vertex satisfy the three counting identities")
def check_vertex_statistics(inst: Instance, settings: VerifySettings) -> Outcome:
    if not inst.connected or inst.g.n < 2:
        return None
    c = inst.summary.c
    for x in range(inst.g.n):
        st = cut_vertex_stats(inst.g, x)
        if st.d + st.r < st.m + st.s:
            return False
        if st.on_cycle and 2 * st.d + st.r < st.m + 2 * st.s + 1:
            return False
        if cyclomatic_number(delete_vertices(inst.g, [x])[0]) != c - st.d + st.s:
            return False
    return True


@register("cyclomatic_deletion", "deleting a vertex off every cycle keeps c, on a cycle lowers it")
def check_cyclomatic_deletion(inst: Instance, settings: VerifySettings) -> Outcome:
    on_cycle = vertices_on_cycles(inst.g, inst.summary.blocks)
    for v in range(inst.g.n):
        after = cyclomatic_number(delete_vertices(inst.g, [v])[0])
        if (v in on_cycle and after > inst.summary.c - 1) or (v not in on_cycle and after != inst.summary.c):
            return False
    return True


@register("cycle_disjoint_oracle", "block-based cycle-disjointness matches pairwise comparison of all cycles")
def check_cycle_disjoint(inst: Instance, settings: VerifySettings) -> Outcome:
    if inst.g.n > ORACLE_MAX_ORDER:
        return None
    return inst.summary.cycle_disjoint == (not cycles_touching(all_cycles(inst.g)))


@register("fundamental_cycle_signs", "the fundamental basis has c cycles with correctly recomputed signs")
def check_fundamental_cycles(inst: Instance, settings: VerifySettings) -> Outcome:
    g = inst.g
    basis = fundamental_cycles(g)
    if len(basis) != inst.summary.c:
        return False
    for c in basis:
        closing = list(zip(c.vertices, c.vertices[1:] + c.vertices[:1]))
        if any(not g.has_edge(a, b) for a, b in closing):
            return False
        if math.prod(g.sign(a, b) for a, b in closing) != c.sign:
            return False
    return True


# ---------------------------------------------------------------- trees and matchings


def _trees(low: int, high: int) -> Iterator[SignedGraph]:
    for n in range(max(low, 2), high + 1):
        for t in nx.nonisomorphic_trees(n):
            yield build(n, [(u, v, 1) for u, v in t.edges()])


def _forest_cases(settings: VerifySettings) -> Iterator[Case]:
    for t in _trees(2, settings.tree_max_order):
        for signs in product((1, -1), repeat=t.edge_count):
            yield Case("tree", build(t.n, [(u, v, s) for (u, v, _), s in zip(t.edges, signs)]))
    for t in _trees(2, settings.tree_max_order - 2):
        for small in (path(1), path(2), path(3)):
            if t.n + small.n <= settings.tree_max_order:
                yield Case("forest", disjoint_union(t, small))


@register("tree_nullity_matching", "forest nullity equals n - 2 mu for every signing", instances=_forest_cases)
def check_tree_nullity(case: Case, settings: VerifySettings) -> Outcome:
    return tree_nullity(case.graph) == nullity(case.graph)


def _matching_cases(settings: VerifySettings) -> Iterator[Case]:
    for t in _trees(2, settings.recursion_max_order):
        yield Case("tree", t)
    for t in _trees(2, settings.tree_max_order - 2):
        yield Case("forest", disjoint_union(t, path(3)))


@register("covered_vertex_oracle", "covered vertices match exhaustive maximum matchings", instances=_matching_cases)
def check_covered(case: Case, settings: VerifySettings) -> Outcome:
    matchings = enumerate_maximum_matchings(case.graph)
    for u in range(case.graph.n):
        every = all(any(u in e for e in m) for m in matchings)
        if is_covered(case.graph, u) != every:
            return False
    return True


def _recursion_cases(settings: VerifySettings) -> Iterator[Case]:
    for t in _trees(3, settings.recursion_max_order):
        yield Case("tree", t)


@register(
    "one_deficient_tree_recursion",
    "the leaf-path recursion and exact rank agree on eta(T) = p(T) - 1",
    instances=_recursion_cases,
)
def check_tree_recursion(case: Case, settings: VerifySettings) -> Outcome:
    verdict, certificate = is_one_deficient_tree(case.graph)
    if len(pendant_vertices(case.graph)) == 2:
        return verdict == (case.graph.n % 2 == 1), verdict
    if verdict and any(r.parity != "odd" for r in certificate.records):
        return False
    return certificate.agrees, verdict


def _tree_join_cases(settings: VerifySettings) -> Iterator[Case]:
    for i in range(settings.suite_samples):
        rng = _rng(settings, 3, i)
        t = random_tree(int(rng.integers(2, 9)), rng)
        g = random_signed(int(rng.integers(1, 7)), 0.5, rng)
        u = _pick(rng, t.n)
        k = int(rng.integers(1, g.n + 1))
        targets = tuple(sorted(int(x) for x in rng.choice(g.n, size=k, replace=False)))
        yield Case("tree_join", tree_join(t, u, g, targets), (t, u, g, targets))


@register("tree_join_formula", "joining a tree vertex to a graph follows the covered-vertex formula", instances=_tree_join_cases)
def check_tree_join(case: Case, settings: VerifySettings) -> Outcome:
    t, u, g, _ = case.extra
    covered = is_covered(t, u)
    if covered:
        expected = nullity(t) + nullity(g)
    else:
        with_u, _ = induced_subgraph(case.graph, [u] + [t.n + x for x in range(g.n)])
        expected = nullity(t) - 1 + nullity(with_u)
    return nullity(case.graph) == expected, covered


def _deficient_tree_cases(settings: VerifySettings) -> Iterator[Case]:
    for i in range(settings.suite_samples):
        rng = _rng(settings, 4, i)
        t = grow_one_deficient_tree(int(rng.integers(2, 5)), rng, max_order=12)
        leaves = pendant_vertices(t)
        v = leaves[_pick(rng, len(leaves))]
        h = _small_connected(rng, 1, 5)
        u = _pick(rng, h.n)
        yield Case("tree_coalescence", coalesce(t, v, h, u), (t, h))


@register(
    "deficient_tree_coalescence",
    "gluing a graph at a leaf of a tree with eta = p - 1 gives eta(H) + p(T) - 2",
    instances=_deficient_tree_cases,
)
def check_deficient_tree_coalescence(case: Case, settings: VerifySettings) -> Outcome:
    t, h = case.extra
    return nullity(case.graph) == nullity(h) + len(pendant_vertices(t)) - 2


# ---------------------------------------------------------------- rewrites


def _switching_cases(settings: VerifySettings) -> Iterator[Case]:
    for i in range(settings.suite_samples):
        rng = _rng(settings, 1, i)
        yield Case("switching", random_signed(int(rng.integers(1, settings.switching_max_order + 1)), 0.5, rng))


@register("switching_invariance", "switching at random vertex sets keeps the nullity", instances=_switching_cases)
def check_switching(case: Case, settings: VerifySettings) -> Outcome:
    g = case.graph
    eta = nullity(g)
    rng = np.random.default_rng(_graph_seed(settings, g))
    for _ in range(settings.switching_subsets):
        subset = [v for v in range(g.n) if rng.random() < 0.5]
        switched = switch(g, subset)
        if nullity(switched) != eta:
            return False
        if [(u, v) for u, v, _ in switched.edges] != [(u, v) for u, v, _ in g.edges]:
            return False
    return True


@register("pendant_pair_invariance", "removing a pendant vertex and its neighbour keeps the nullity")
def check_pendant_pair(inst: Instance, settings: VerifySettings) -> Outcome:
    leaves = pendant_vertices(inst.g)
    if not leaves:
        return None
    return all(nullity(delete_pendant_pair(inst.g, v)) == inst.eta for v in leaves)


@register("p6_contraction_invariance", "contracting an internal P6 to an edge keeps the nullity")
def check_p6(inst: Instance, settings: VerifySettings) -> Outcome:
    candidates = p6_candidates(inst.g)
    if not candidates:
        return None
    return all(nullity(contract_p6(inst.g, p)) == inst.eta for p in candidates)


def _subdivided_cases(settings: VerifySettings) -> Iterator[Instance]:
    for n in range(7, 13):
        for sign in (1, -1):
            yield Instance(cycle(n, sign))
    for i in range(settings.suite_samples):
        rng = _rng(settings, 15, i)
        g = _small_connected(rng, 2, 7)
        u, v, _ = g.edges[_pick(rng, g.edge_count)]
        inner = int(rng.integers(4, 7))
        signs = [int(s) for s in rng.choice((1, -1), size=inner + 1)]
        rest = build(g.n, [e for e in g.edges if e[:2] != (u, v)])
        yield Instance(attach_ear(rest, u, v, inner + 2, signs))


register(
    "p6_contraction_samples",
    "contracting an internal P6 keeps the nullity on long cycles and subdivided graphs",
    instances=_subdivided_cases,
)(check_p6)


@register("pendant_cycle_invariance", "normalising a nullity-2 pendant cycle to a positive C4 keeps the nullity")
def check_pendant_cycle(inst: Instance, settings: VerifySettings) -> Outcome:
    eligible = [c for c in pendant_cycles(inst.g) if cycle_nullity_closed_form(c.length, c.sign) == 2]
    if not eligible:
        return None
    return all(nullity(pendant_cycle_to_c4(inst.g, c)) == inst.eta for c in eligible)


def _blow_up_cases(settings: VerifySettings) -> Iterator[Case]:
    for i in range(settings.suite_samples):
        rng = _rng(settings, 5, i)
        g = random_signed(int(rng.integers(1, 7)), 0.5, rng)
        counts = tuple(int(x) for x in rng.integers(1, 4, size=g.n))
        yield Case("blow_up", g, counts)


@register("blow_up_rank", "replacing vertices by independent copies keeps the rank", instances=_blow_up_cases)
def check_blow_up(case: Case, settings: VerifySettings) -> Outcome:
    grown = blow_up(case.graph, case.extra)
    return rank(adjacency(grown)) == rank(adjacency(case.graph))


def _reduction_cases(settings: VerifySettings) -> Iterator[Case]:
    for i in range(settings.reduction_samples):
        rng = _rng(settings, 6, i)
        n = int(rng.integers(2, settings.reduction_max_order + 1))
        base = random_connected_signed(n, float(rng.uniform(0.0, 0.25)), rng)
        # hang a pendant cycle now and then so the cycle rule fires
        if rng.random() < 0.3:
            length, sign = NULLITY_TWO_CYCLES[_pick(rng, len(NULLITY_TWO_CYCLES))]
            base = coalesce(base, _pick(rng, base.n), cycle(length, sign), 0)
        yield Case("reduce", base)


@register("reduction_trace", "every reduction step keeps the nullity and the trace replays", instances=_reduction_cases)
def check_reduction(case: Case, settings: VerifySettings) -> Outcome:
    g = case.graph
    trace = reduce(g)
    eta = nullity(g)
    if any(s.eta_before != eta or s.eta_after != eta for s in trace.steps):
        return False
    if nullity(trace.final) != eta or replay(trace) != trace.final:
        return False
    if len(trace.steps) > g.n + cyclomatic_number(g):
        return False
    return reduce(g) == trace


# ---------------------------------------------------------------- bound and extremal graphs


@register("nullity_upper_bound", "nullity never exceeds the three-case bound")
def check_bound(inst: Instance, settings: VerifySettings) -> Outcome:
    if inst.has_isolated:
        return None
    verdict = bound(inst.g)
    return verdict.slack >= 0, verdict.slack == 0


@register("cycle_extremal_iff", "eta = 2c + p exactly when every component is a nullity-2 cycle")
def check_cycle_extremal(inst: Instance, settings: VerifySettings) -> Outcome:
    if inst.has_isolated:
        return None
    recognized = recognize_cycle_extremal(inst.g)
    return recognized == (inst.eta == 2 * inst.summary.c + inst.summary.p), recognized


@register("one_deficient_iff", "the shape recognizer agrees with eta = 2c + p - 1 on connected graphs with cycles")
def check_one_deficient(inst: Instance, settings: VerifySettings) -> Outcome:
    if not inst.connected or inst.g.n < 2 or inst.summary.c < 1:
        return None
    found = recognize_one_deficient(inst.g).extremal_form != "none"
    spectral = inst.eta == 2 * inst.summary.c + inst.summary.p - 1
    return found == spectral, spectral


@register("bicyclic_extremal_iff", "leaf-free bicyclic graphs reach eta = 3 exactly in the recognised shapes")
def check_bicyclic(inst: Instance, settings: VerifySettings) -> Outcome:
    if not inst.connected or inst.summary.p != 0 or inst.summary.c != 2:
        return None
    return _bicyclic_agreement(inst.g, inst.eta)


def _bicyclic_agreement(g: SignedGraph, eta: int) -> Tuple[bool, bool]:
    bicyclic = recognize_bicyclic_extremal(g).extremal_form != "none"
    general = recognize_one_deficient(g).extremal_form != "none"
    spectral = eta == 3
    return bicyclic == spectral and general == spectral, spectral


def _bicyclic_cases(settings: VerifySettings) -> Iterator[Case]:
    top = settings.bicyclic_max_order
    signs = list(product((1, -1), repeat=2))
    for p in range(3, top):
        for q in range(p, top):
            for l in range(1, top - p - q + 3):
                for sp, sq in signs:
                    yield Case("infty", infty(p, q, l, sp, sq), (p, q, l))
    for a in range(1, top):
        for b in range(max(a, 2), top):
            for c in range(b, top - a - b + 2):
                for s in signs:
                    yield Case("theta", theta(a, b, c, s), (a, b, c))


@register(
    "bicyclic_family_iff",
    "both recognizers agree with eta = 3 on every infinity and theta graph up to the order limit",
    instances=_bicyclic_cases,
)
def check_bicyclic_family(case: Case, settings: VerifySettings) -> Outcome:
    return _bicyclic_agreement(case.graph, nullity(case.graph))


@register("bicyclic_generator_shape", "infinity and theta generators give c = 2 with the expected degrees", instances=_bicyclic_cases)
def check_bicyclic_shape(case: Case, settings: VerifySettings) -> Outcome:
    g = case.graph
    s = summarize(g)
    degrees = sorted(s.degrees, reverse=True)
    a, b, c = case.extra
    if case.label == "infty":
        order = a + b + c - 2
        top = [4] if c == 1 else [3, 3]
    else:
        order = a + b + c - 1
        top = [3, 3]
    return (
        s.c == 2
        and s.p == 0
        and g.n == order
        and degrees[: len(top)] == top
        and all(d == 2 for d in degrees[len(top):])
    )


def _theta_even_cases(settings: VerifySettings) -> Iterator[Case]:
    top = settings.bicyclic_max_order
    for a in range(2, top, 2):
        for b in range(a, top, 2):
            for c in range(b, top - a - b + 2, 2):
                for s in product((1, -1), repeat=2):
                    g = theta(a, b, c, s)
                    if all(cycle_nullity_closed_form(x.length, x.sign) == 2 for x in all_cycles(g)):
                        yield Case("theta", g, (a, b, c))


@register(
    "theta_vertex_deletion",
    "even theta graphs with nullity-2 cycles keep nullity 2 after deleting any vertex",
    instances=_theta_even_cases,
)
def check_theta_deletion(case: Case, settings: VerifySettings) -> Outcome:
    g = case.graph
    return all(nullity(delete_vertices(g, [v])[0]) == 2 for v in range(g.n))


def _leaf_free_cases(settings: VerifySettings) -> Iterator[Case]:
    for i in range(settings.form1_samples):
        rng = _rng(settings, 7, i)
        c = int(rng.integers(3, 6))
        g = random_form1(c, rng, settings.form1_max_order, leaf_free=True)
        yield Case("leaf_free", g, (c,))
        roll = rng.random()
        if roll < 0.4:
            u, v, s = g.edges[_pick(rng, g.edge_count)]
            flipped = build(g.n, [(a, b, -x if (a, b) == (u, v) else x) for a, b, x in g.edges])
            yield Case("leaf_free_flipped", flipped, (c,))
        elif roll < 0.8:
            missing = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]
            u, v = missing[_pick(rng, len(missing))]
            yield Case("leaf_free_chord", add_edges(g, [(u, v, 1)]), (c + 1,))


@register(
    "leaf_free_extremal_iff",
    "leaf-free graphs with c >= 3 reach eta = 2c - 1 exactly as cycles hung on every leaf of a 1-deficient tree",
    instances=_leaf_free_cases,
)
def check_leaf_free(case: Case, settings: VerifySettings) -> Outcome:
    g = case.graph
    s = summarize(g)
    if s.p != 0 or s.c < 3 or not is_connected(g):
        return None
    found = recognize_leaf_free_extremal(g).extremal_form != "none"
    spectral = nullity(g) == 2 * s.c - 1
    return found == spectral, spectral


@register(
    "leaf_free_extremal_structure",
    "leaf-free extremal graphs have a cut-vertex and odd-linked nullity-2 pendant cycles",
    instances=_leaf_free_cases,
)
def check_leaf_free_structure(case: Case, settings: VerifySettings) -> Outcome:
    g = case.graph
    s = summarize(g)
    if s.p != 0 or s.c < 3 or nullity(g) != 2 * s.c - 1:
        return None
    hanging = pendant_cycles(g)
    if not cut_vertices(g) or not hanging:
        return False
    for c in hanging:
        if cycle_nullity_closed_form(c.length, c.sign) != 2:
            return False
        major = c.vertices[0]
        (first,) = [w for w in g.neighbors(major) if w not in c.vertices]
        if (len(internal_path(g, major, first)) - 1) % 2 == 0:
            return False
    return True


@register("one_deficient_cycle_nullity", "every cycle of a connected 1-deficient graph has nullity 2")
def check_deficient_cycles(inst: Instance, settings: VerifySettings) -> Outcome:
    s = inst.summary
    if not inst.connected or s.c < 1 or inst.g.n > ORACLE_MAX_ORDER or inst.eta != 2 * s.c + s.p - 1:
        return None
    return all(cycle_nullity_closed_form(c.length, c.sign) == 2 for c in all_cycles(inst.g))


@register(
    "one_deficient_cycle_blocks",
    "cycle blocks of a connected 1-deficient graph have nullity 2 and a single major vertex",
)
def check_deficient_blocks(inst: Instance, settings: VerifySettings) -> Outcome:
    s = inst.summary
    if not inst.connected or s.c < 1 or inst.eta != 2 * s.c + s.p - 1:
        return None
    cycle_blocks = [b for b in s.blocks if b.kind == "cycle"]
    if not cycle_blocks:
        return None
    hanging = {tuple(sorted(c.vertices)) for c in pendant_cycles(inst.g)}
    for b in cycle_blocks:
        sign = math.prod(inst.g.sign(u, v) for u, v in b.edges)
        if cycle_nullity_closed_form(len(b.vertices), sign) != 2:
            return False
        if b.vertices not in hanging:
            return False
    return True


def _deficient_block_cases(settings: VerifySettings) -> Iterator[Instance]:
    for p, q in ((4, 4), (4, 6), (6, 8)):
        for l in (1, 3, 5):
            yield Instance(infty(p, q, l, 1 if p % 4 == 0 else -1, 1 if q % 4 == 0 else -1))
    for i in range(settings.form1_samples):
        rng = _rng(settings, 16, i)
        yield Instance(random_form1(int(rng.integers(1, 5)), rng, settings.form1_sufficiency_order))


register(
    "one_deficient_block_samples",
    "cycle blocks of sampled 1-deficient graphs have nullity 2 and a single major vertex",
    instances=_deficient_block_cases,
)(check_deficient_blocks)


@register("cut_vertex_rules", "nullity at a cut-vertex follows the two component rules")
def check_cut_vertex_rules(inst: Instance, settings: VerifySettings) -> Outcome:
    g = inst.g
    if not inst.connected:
        return None
    cuts = cut_vertices(g)
    if not cuts:
        return None
    fired = False
    for v in cuts:
        rest, mapping = delete_vertices(g, [v])
        back = {new: old for old, new in mapping.items()}
        without_v = nullity(rest)
        for _, part in components(rest):
            ids = [back[w] for w in part]
            alone = nullity(induced_subgraph(g, ids)[0])
            with_v = nullity(induced_subgraph(g, ids + [v])[0])
            if alone == with_v - 1:
                fired = True
                if inst.eta != alone + nullity(delete_vertices(g, ids)[0]):
                    return False
            elif alone == with_v + 1:
                fired = True
                if inst.eta != without_v - 1:
                    return False
    return True, fired


def _composed_pairs(settings: VerifySettings, tag: int) -> Iterator[Tuple[np.random.Generator, SignedGraph, SignedGraph]]:
    for i in range(settings.suite_samples):
        rng = _rng(settings, tag, i)
        yield rng, _small_connected(rng, 1, 5), _small_connected(rng, 1, 5)


def _coalescence_cases(settings: VerifySettings) -> Iterator[Case]:
    for rng, h, k in _composed_pairs(settings, 8):
        v, u = _pick(rng, h.n), _pick(rng, k.n)
        yield Case("coalesce", coalesce(h, v, k, u), (h, v, k))


@register("coalescence_bound", "eta((H,v;K,u)) <= eta(K) + eta(H - v) + 1", instances=_coalescence_cases)
def check_coalescence(case: Case, settings: VerifySettings) -> Outcome:
    h, v, k = case.extra
    slack = nullity(k) + nullity(delete_vertices(h, [v])[0]) + 1 - nullity(case.graph)
    return slack >= 0, slack == 0


def _path_join_cases(settings: VerifySettings) -> Iterator[Case]:
    for rng, h, k in _composed_pairs(settings, 9):
        m = int(rng.integers(2, 5))
        yield Case("path_join", path_join(h, _pick(rng, h.n), k, _pick(rng, k.n), m), (h, k, m))


@register("path_join_bound", "joining two graphs by a path gives eta <= eta(H) + eta(K) + 1", instances=_path_join_cases)
def check_path_join(case: Case, settings: VerifySettings) -> Outcome:
    h, k, _ = case.extra
    slack = nullity(h) + nullity(k) + 1 - nullity(case.graph)
    return slack >= 0, slack == 0


def _signed_path(rng: np.random.Generator, m: int) -> SignedGraph:
    return path(m, [int(s) for s in rng.choice((1, -1), size=m - 1)])


def _pendant_path_cases(settings: VerifySettings) -> Iterator[Case]:
    for i in range(settings.suite_samples):
        rng = _rng(settings, 10, i)
        h = _small_connected(rng, 1, 6)
        m = int(rng.integers(2, 6))
        yield Case("pendant_path", coalesce(h, _pick(rng, h.n), _signed_path(rng, m), 0), (h, m))


def _multiplicity_growth(case: Case, settings: VerifySettings, allowed: int) -> Outcome:
    h = case.extra[0]
    growth = [multiplicity(case.graph, lam) - multiplicity(h, lam) for lam in _lambdas(settings)]
    return all(x <= allowed for x in growth), any(x == allowed for x in growth)


@register(
    "pendant_path_multiplicity",
    "hanging a path on a vertex raises any rational eigenvalue multiplicity by at most one",
    instances=_pendant_path_cases,
)
def check_pendant_path(case: Case, settings: VerifySettings) -> Outcome:
    return _multiplicity_growth(case, settings, 1)


def _cycle_path_cases(settings: VerifySettings) -> Iterator[Case]:
    for i in range(settings.suite_samples):
        rng = _rng(settings, 11, i)
        h = _small_connected(rng, 1, 5)
        ring = cycle(int(rng.integers(3, 7)), 1 if rng.random() < 0.5 else -1)
        m = int(rng.integers(1, 4))
        v, u = _pick(rng, h.n), _pick(rng, ring.n)
        g = coalesce(h, v, ring, u) if m == 1 else path_join(h, v, ring, u, m)
        yield Case("cycle_path", g, (h, ring.n, m))


@register(
    "cycle_path_multiplicity",
    "joining a cycle through a path raises any rational eigenvalue multiplicity by at most two",
    instances=_cycle_path_cases,
)
def check_cycle_path(case: Case, settings: VerifySettings) -> Outcome:
    return _multiplicity_growth(case, settings, 2)


def _ear_cases(settings: VerifySettings) -> Iterator[Case]:
    for i in range(settings.suite_samples):
        rng = _rng(settings, 12, i)
        h = _small_connected(rng, 2, 6)
        a, b = (int(x) for x in rng.choice(h.n, size=2, replace=False))
        m = int(rng.integers(2, 6))
        if m == 2 and h.has_edge(a, b):
            m = 3
        signs = [int(s) for s in rng.choice((1, -1), size=m - 1)]
        yield Case("ear", attach_ear(h, a, b, m, signs), (h, a, b, m))


@register(
    "two_point_path_multiplicity",
    "gluing both ends of a path to a graph raises any rational eigenvalue multiplicity by at most two",
    instances=_ear_cases,
)
def check_two_point_path(case: Case, settings: VerifySettings) -> Outcome:
    return _multiplicity_growth(case, settings, 2)


def _form1_cases(settings: VerifySettings) -> Iterator[Case]:
    for i in range(settings.form1_samples):
        rng = _rng(settings, 13, i)
        c = int(rng.integers(1, 5))
        yield Case("form1", random_form1(c, rng, settings.form1_sufficiency_order), (c,))


@register("form1_soundness", "cycles hung on leaves of a 1-deficient tree give eta = 2c + p - 1", instances=_form1_cases)
def check_form1(case: Case, settings: VerifySettings) -> Outcome:
    s = summarize(case.graph)
    return s.c == case.extra[0] and nullity(case.graph) == 2 * s.c + s.p - 1


def _leaf_free_form1_cases(settings: VerifySettings) -> Iterator[Case]:
    for i in range(settings.form1_samples):
        rng = _rng(settings, 14, i)
        c = int(rng.integers(3, 6))
        yield Case("leaf_free_form1", random_form1(c, rng, settings.form1_max_order, leaf_free=True), (c,))


@register(
    "leaf_free_form1_soundness",
    "a nullity-2 cycle on every leaf of a 1-deficient tree gives eta = 2c - 1",
    instances=_leaf_free_form1_cases,
)
def check_leaf_free_form1(case: Case, settings: VerifySettings) -> Outcome:
    (c,) = case.extra
    g = case.graph
    return (
        g.n <= settings.form1_max_order
        and cyclomatic_number(g) == c
        and not pendant_vertices(g)
        and nullity(g) == 2 * c - 1
    )


def _coverage_cases(settings: VerifySettings) -> Iterator[Case]:
    from engine.harness import underlying_graphs

    for _, g in underlying_graphs(2, settings.coverage_max_order, connected=True):
        yield Case("underlying", g)


@register(
    "switching_class_coverage",
    "switching-class representatives reach the same nullity values as all signings",
    instances=_coverage_cases,
)
def check_coverage(case: Case, settings: VerifySettings) -> Outcome:
    from engine.harness import all_signings, switching_signings

    every = {nullity(g) for g in all_signings(case.graph)}
    classes = {nullity(g) for g in switching_signings(case.graph)}
    return every == classes
