"""The nullity upper bound and structural recognition of the graphs that attain it."""
import math
from typing import List, Optional, Sequence, Tuple
import logging

from engine.graph import SignedGraph, components, delete_vertices, is_connected, one_line
from engine.linalg import cycle_nullity_closed_form, nullity
from engine.matching import is_one_deficient_tree
from engine.schemas import (
    BoundVerdict,
    ClassificationResult,
    Cycle,
    InftyShape,
    StructureSummary,
    ThetaShape,
    Witness,
)
from engine.structure import block_cycle_order, internal_path, make_cycle, summarize

logger = logging.getLogger(__name__)


def _require_no_small_components(g: SignedGraph) -> None:
    for part, ids in components(g):
        if part.n < 2:
            raise ValueError(f"component {ids} has fewer than two vertices")


def _bound_from(summary: StructureSummary) -> Tuple[str, int]:
    if summary.p >= 1:
        return "p_ge_1", 2 * summary.c + summary.p - 1
    if summary.cycle_disjoint:
        return "p0_cycle_disjoint", 2 * summary.c
    return "p0_shared_cycles", 2 * summary.c - 1


def bound(g: SignedGraph) -> BoundVerdict:
    """Upper bound on the nullity, chosen by pendant count and cycle-disjointness."""
    _require_no_small_components(g)
    case, value = _bound_from(summarize(g))
    eta = nullity(g)
    if eta > value:
        logger.warning(f"Nullity {eta} exceeds bound {value} on {one_line(g)}")
    return BoundVerdict(case=case, bound=value, eta=eta, slack=value - eta)


def deficiency(g: SignedGraph) -> int:
    """2c + p - eta: 0 for the all-cycle extremes, 1 for graphs attaining the bound with c, p."""
    summary = summarize(g)
    return 2 * summary.c + summary.p - nullity(g)


def is_one_deficient(g: SignedGraph) -> bool:
    return deficiency(g) == 1


def is_two_plus_deficient(g: SignedGraph) -> bool:
    return deficiency(g) >= 2


def has_nullity_two(c: Cycle) -> bool:
    return cycle_nullity_closed_form(c.length, c.sign) == 2


def recognize_cycle_extremal(g: SignedGraph) -> bool:
    _require_no_small_components(g)
    for part, _ in components(g):
        if part.edge_count != part.n or any(d != 2 for d in part.degrees()):
            return False
        sign = math.prod(s for _, _, s in part.edges)
        if cycle_nullity_closed_form(part.n, sign) != 2:
            return False
    return True


def match_infty(g: SignedGraph, summary: StructureSummary) -> Optional[InftyShape]:
    """Two cycle blocks joined by a bridge path (or sharing a vertex), nothing else."""
    if summary.omega != 1 or summary.p != 0 or summary.c != 2:
        return None
    cycle_blocks = [b for b in summary.blocks if b.kind == "cycle"]
    if len(cycle_blocks) != 2 or any(b.kind == "complex" for b in summary.blocks):
        return None
    shared = set(cycle_blocks[0].vertices) & set(cycle_blocks[1].vertices)
    ends = []
    for b in cycle_blocks:
        attach = [v for v in b.vertices if g.degree(v) >= 3]
        if len(attach) != 1:
            return None
        ends.append(attach[0])
    if shared:
        l = 1
    else:
        # the only non-cycle edge at an attachment vertex starts the connecting path
        inside = set(cycle_blocks[0].vertices)
        outside = [w for w in g.neighbors(ends[0]) if w not in inside]
        if len(outside) != 1:
            return None
        link = internal_path(g, ends[0], outside[0])
        if link[-1] != ends[1]:
            return None
        l = len(link)
    order = sorted(range(2), key=lambda i: ends[i])
    cycles = tuple(make_cycle(g, block_cycle_order(g, cycle_blocks[i], ends[i])) for i in order)
    return InftyShape(p=cycles[0].length, q=cycles[1].length, l=l, cycles=cycles)


def match_theta(g: SignedGraph, summary: StructureSummary) -> Optional[ThetaShape]:
    """A single block with two degree-3 vertices, every other vertex of degree 2."""
    if summary.omega != 1 or summary.p != 0 or summary.c != 2:
        return None
    if len(summary.blocks) != 1 or summary.blocks[0].kind != "complex":
        return None
    ends = [v for v, d in enumerate(summary.degrees) if d == 3]
    if len(ends) != 2 or any(d not in (2, 3) for d in summary.degrees):
        return None
    a, b = ends
    paths = sorted((internal_path(g, a, w) for w in g.neighbors(a)), key=lambda p: (len(p), p))
    if any(p[-1] != b for p in paths):
        return None
    pairs = ((0, 1), (1, 2), (0, 2))
    cycles = tuple(make_cycle(g, paths[i] + paths[j][-2:0:-1]) for i, j in pairs)
    return ThetaShape(lengths=tuple(len(p) - 1 for p in paths), ends=(a, b), cycles=cycles)


def match_tree_with_cycles(g: SignedGraph, summary: StructureSummary, every_leaf: bool = False) -> Optional[Witness]:
    """Pendant nullity-2 cycles hung on distinct leaves of a tree with eta(T) = p(T) - 1.

    With every_leaf the tree must carry a cycle on each of its leaves.
    """
    if summary.omega != 1 or summary.c < 1:
        return None
    if any(b.kind == "complex" for b in summary.blocks):
        return None
    cycle_blocks = [b for b in summary.blocks if b.kind == "cycle"]
    seen = set()
    majors: List[int] = []
    for b in cycle_blocks:
        if seen.intersection(b.vertices):
            return None
        seen.update(b.vertices)
        attach = [v for v in b.vertices if g.degree(v) >= 3]
        if len(attach) != 1:
            return None
        majors.append(attach[0])
    cycles = [make_cycle(g, block_cycle_order(g, b, m)) for b, m in zip(cycle_blocks, majors)]
    if not all(has_nullity_two(c) for c in cycles):
        return None
    removed = [v for c in cycles for v in c.vertices[1:]]
    tree, mapping = delete_vertices(g, removed)
    if any(tree.degree(mapping[m]) != 1 for m in majors):
        return None
    if every_leaf and sum(1 for d in tree.degrees() if d == 1) != len(majors):
        return None
    if not is_one_deficient_tree(tree)[0]:
        return None
    order = sorted(range(len(majors)), key=lambda i: majors[i])
    return Witness(
        tree=tree,
        attachments=tuple(majors[i] for i in order),
        cycles=tuple(cycles[i] for i in order),
    )


def _require_connected_with_cycles(g: SignedGraph, summary: StructureSummary) -> None:
    _require_no_small_components(g)
    if not is_connected(g):
        raise ValueError("graph must be connected")
    if summary.c < 1:
        raise ValueError("graph must contain a cycle")


def recognize_one_deficient(g: SignedGraph) -> ClassificationResult:
    """Connected graphs with a cycle and eta = 2c + p - 1, recognised by shape.

    Forms: a 1-deficient tree with nullity-2 cycles hung on leaves, two nullity-2 cycles
    sharing one vertex, or a theta graph all of whose cycles have nullity 2.
    """
    summary = summarize(g)
    _require_connected_with_cycles(g, summary)
    verdict = bound(g)
    shape = match_theta(g, summary)
    if shape is not None:
        if all(has_nullity_two(c) for c in shape.cycles):
            return ClassificationResult(verdict=verdict, extremal_form="theta", witness=Witness(theta=shape))
        return ClassificationResult(verdict=verdict)
    infty = match_infty(g, summary)
    if infty is not None and infty.l == 1:
        if all(has_nullity_two(c) for c in infty.cycles):
            return ClassificationResult(
                verdict=verdict, extremal_form="infty_shared_vertex", witness=Witness(infty=infty)
            )
        return ClassificationResult(verdict=verdict)
    witness = match_tree_with_cycles(g, summary)
    if witness is not None:
        return ClassificationResult(verdict=verdict, extremal_form="tree_with_cycles", witness=witness)
    return ClassificationResult(verdict=verdict)


def recognize_bicyclic_extremal(g: SignedGraph) -> ClassificationResult:
    """Leaf-free connected graphs with c = 2 and eta = 3.

    Either two nullity-2 cycles joined by a path of odd order (order 1 meaning a shared
    vertex), or a theta graph with three even path lengths whose two cycles through the
    middle path have nullity 2. The third theta cycle's nullity goes into the witness.
    """
    summary = summarize(g)
    _require_connected_with_cycles(g, summary)
    if summary.p != 0 or summary.c != 2:
        raise ValueError("graph must be leaf-free with cyclomatic number 2")
    verdict = bound(g)
    infty = match_infty(g, summary)
    if infty is not None:
        if infty.l % 2 == 1 and all(has_nullity_two(c) for c in infty.cycles):
            return ClassificationResult(verdict=verdict, extremal_form="bicyclic", witness=Witness(infty=infty))
        return ClassificationResult(verdict=verdict)
    theta = match_theta(g, summary)
    if theta is not None:
        named, third = theta.cycles[:2], theta.cycles[2]
        if all(x % 2 == 0 for x in theta.lengths) and all(has_nullity_two(c) for c in named):
            witness = Witness(
                theta=theta, third_cycle_nullity=cycle_nullity_closed_form(third.length, third.sign)
            )
            return ClassificationResult(verdict=verdict, extremal_form="bicyclic", witness=witness)
    return ClassificationResult(verdict=verdict)


def recognize_leaf_free_extremal(g: SignedGraph) -> ClassificationResult:
    """Leaf-free connected graphs with c >= 3 and eta = 2c - 1.

    Exactly the 1-deficient trees with one nullity-2 pendant cycle on every leaf.
    """
    summary = summarize(g)
    _require_connected_with_cycles(g, summary)
    if summary.p != 0 or summary.c < 3:
        raise ValueError("graph must be leaf-free with cyclomatic number at least 3")
    verdict = bound(g)
    witness = match_tree_with_cycles(g, summary, every_leaf=True)
    if witness is None:
        return ClassificationResult(verdict=verdict)
    return ClassificationResult(verdict=verdict, extremal_form="leaf_free_tree_with_cycles", witness=witness)


def classify(g: SignedGraph) -> ClassificationResult:
    """Bound verdict plus the most specific extremal form that applies."""
    verdict = bound(g)
    if g.n and recognize_cycle_extremal(g):
        cycles = tuple(
            make_cycle(g, block_cycle_order(g, b, b.vertices[0])) for b in summarize(g).blocks
        )
        return ClassificationResult(verdict=verdict, extremal_form="cycles", witness=Witness(cycles=cycles))
    if not is_connected(g):
        return ClassificationResult(verdict=verdict)
    summary = summarize(g)
    if summary.c == 0:
        return ClassificationResult(verdict=verdict)
    if summary.p == 0 and summary.c == 2:
        return recognize_bicyclic_extremal(g)
    if summary.p == 0 and summary.c >= 3:
        return recognize_leaf_free_extremal(g)
    return recognize_one_deficient(g)


def _ids(values: Sequence[int]) -> str:
    return " ".join(str(v) for v in values)


def format_verdict(verdict: BoundVerdict) -> str:
    return f"case {verdict.case}\nbound {verdict.bound}\neta {verdict.eta}\nslack {verdict.slack}\n"


def format_classification(result: ClassificationResult) -> str:
    lines = [format_verdict(result.verdict).rstrip("\n"), f"form {result.extremal_form}"]
    w = result.witness
    if w is not None:
        if w.tree is not None:
            lines.append(f"tree {one_line(w.tree)}")
        if w.attachments:
            lines.append(f"attachments {_ids(w.attachments)}")
        for c in w.cycles:
            lines.append(f"cycle {c.sign:+d} {_ids(c.vertices)}")
        if w.infty is not None:
            lines.append(f"infty {w.infty.p} {w.infty.q} {w.infty.l}")
        if w.theta is not None:
            lines.append(f"theta {_ids(w.theta.lengths)}")
        if w.third_cycle_nullity is not None:
            lines.append(f"third_cycle_nullity {w.third_cycle_nullity}")
    return "\n".join(lines) + "\n"
