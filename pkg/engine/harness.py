"""Enumeration of small signed-graph universes and the property runner."""
from itertools import combinations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple
import logging
import multiprocessing as mp
import time

import networkx as nx
import numpy as np

from engine.config import VerifySettings
from engine.generators import random_connected_signed, random_signed
from engine.graph import SignedGraph, build, is_connected, to_networkx
from engine.properties import REGISTRY, Instance
from engine.schemas import PropertyResult, Universe, VerificationReport
from engine.structure import spanning_forest_edges

logger = logging.getLogger(__name__)


def underlying_graphs(
    min_n: int, max_n: int, connected: bool = True, dedupe: bool = False
) -> Iterator[Tuple[int, SignedGraph]]:
    """All-positive simple graphs by upper-triangular bitmask, numbered in enumeration order."""
    index = 0
    for n in range(min_n, max_n + 1):
        pairs = list(combinations(range(n), 2))
        buckets: Dict[str, List[nx.Graph]] = {}
        for mask in range(1 << len(pairs)):
            g = build(n, [(u, v, 1) for bit, (u, v) in enumerate(pairs) if mask >> bit & 1])
            if connected and not is_connected(g):
                continue
            if dedupe:
                shape = to_networkx(g)
                key = nx.weisfeiler_lehman_graph_hash(shape)
                seen = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(shape, other) for other in seen):
                    continue
                seen.append(shape)
            yield index, g
            index += 1


def all_signings(g: SignedGraph) -> Iterator[SignedGraph]:
    for signs in product((1, -1), repeat=g.edge_count):
        yield build(g.n, [(u, v, s) for (u, v, _), s in zip(g.edges, signs)])


def switching_signings(g: SignedGraph) -> Iterator[SignedGraph]:
    """One signing per switching class: spanning-forest edges positive, the rest free."""
    tree = spanning_forest_edges(g)
    free = [(u, v) for u, v, _ in g.edges if (u, v) not in tree]
    for signs in product((1, -1), repeat=len(free)):
        chosen = dict(zip(free, signs))
        yield build(g.n, [(u, v, chosen.get((u, v), 1)) for u, v, _ in g.edges])


def _random_stream(universe: Universe) -> Iterator[Tuple[int, SignedGraph]]:
    for i in range(universe.samples):
        rng = np.random.default_rng([universe.seed, i])
        n = int(rng.integers(universe.min_n, universe.max_n + 1))
        if universe.connected:
            g = random_connected_signed(n, float(rng.uniform(0.0, 0.5)), rng)
        else:
            g = random_signed(n, float(rng.uniform(0.2, 0.8)), rng)
        yield i, g


def _signed_stream(universe: Universe, shard: int = 0, jobs: int = 1) -> Iterator[SignedGraph]:
    if universe.sign_mode == "random":
        for i, g in _random_stream(universe):
            if i % jobs == shard:
                yield g
        return
    signings = all_signings if universe.sign_mode == "all_signings" else switching_signings
    for i, base in underlying_graphs(universe.min_n, universe.max_n, universe.connected, universe.dedupe):
        if i % jobs == shard:
            yield from signings(base)


def enumerate_graphs(universe: Universe) -> Iterator[SignedGraph]:
    return _signed_stream(universe)


class _Tally:
    def __init__(self, name: str, cap: Optional[int]) -> None:
        self.result = PropertyResult(name=name)
        self.cap = cap

    def record(self, item, settings: VerifySettings) -> None:
        prop = REGISTRY[self.result.name]
        try:
            outcome = prop.check(item, settings)
        except Exception as e:
            self._violation(f"{item} raised {type(e).__name__}: {e}")
            return
        if outcome is None:
            return
        holds, equality = outcome if isinstance(outcome, tuple) else (outcome, False)
        self.result.checked += 1
        if equality:
            self.result.equality_cases += 1
        if not holds:
            self._violation(str(item))

    def _violation(self, text: str) -> None:
        self.result.checked += 1
        self.result.violations += 1
        kept = sorted(self.result.counterexamples + [text])
        self.result.counterexamples = kept if self.cap is None else kept[: self.cap]


def run_shard(
    universe: Universe, names: Sequence[str], settings: VerifySettings, shard: int = 0, jobs: int = 1,
    full_dump: bool = False,
) -> List[PropertyResult]:
    """Run the named properties on one slice of the universe and of every suite."""
    cap = None if full_dump else settings.counterexample_cap
    tallies = {name: _Tally(name, cap) for name in names}
    on_universe = [n for n in names if REGISTRY[n].over_universe]
    if on_universe:
        for g in _signed_stream(universe, shard, jobs):
            inst = Instance(g)
            for name in on_universe:
                tallies[name].record(inst, settings)
    for name in names:
        prop = REGISTRY[name]
        if prop.over_universe:
            continue
        for i, case in enumerate(prop.instances(settings)):
            if i % jobs == shard:
                tallies[name].record(case, settings)
    return [tallies[name].result for name in names]


def _merge(parts: List[List[PropertyResult]], cap: Optional[int]) -> List[PropertyResult]:
    merged = []
    for results in zip(*parts):
        found = sorted(x for r in results for x in r.counterexamples)
        merged.append(
            PropertyResult(
                name=results[0].name,
                checked=sum(r.checked for r in results),
                violations=sum(r.violations for r in results),
                equality_cases=sum(r.equality_cases for r in results),
                counterexamples=found if cap is None else found[:cap],
            )
        )
    return merged


def verify(
    universe: Universe,
    properties: Optional[Sequence[str]] = None,
    settings: Optional[VerifySettings] = None,
    jobs: Optional[int] = None,
    full_dump: bool = False,
) -> VerificationReport:
    """Run the selected properties (all when None) and aggregate a report."""
    settings = settings or VerifySettings()
    names = list(REGISTRY) if properties is None else list(properties)
    unknown = [n for n in names if n not in REGISTRY]
    if unknown:
        raise ValueError(f"unknown properties: {', '.join(unknown)}")
    jobs = jobs or settings.jobs
    logger.info(f"Verifying {len(names)} properties on max_n={universe.max_n} ({universe.sign_mode}) with {jobs} jobs")
    start = time.perf_counter()
    if jobs > 1:
        with mp.Pool(processes=jobs) as pool:
            parts = pool.starmap(
                run_shard, [(universe, names, settings, shard, jobs, full_dump) for shard in range(jobs)]
            )
    else:
        parts = [run_shard(universe, names, settings, 0, 1, full_dump)]
    results = _merge(parts, None if full_dump else settings.counterexample_cap)
    report = VerificationReport(
        universe=universe,
        properties=results,
        total_checked=sum(r.checked for r in results),
        total_violations=sum(r.violations for r in results),
        wall_time=time.perf_counter() - start,
    )
    logger.info(f"Checked {report.total_checked} instances, {report.total_violations} violations in {report.wall_time:.1f}s")
    for r in results:
        if r.violations:
            logger.warning(f"Property {r.name} failed on {r.violations} of {r.checked} instances")
    return report


def format_report(report: VerificationReport) -> str:
    u = report.universe
    lines = [
        f"universe min_n {u.min_n} max_n {u.max_n} connected {str(u.connected).lower()} "
        f"sign_mode {u.sign_mode} dedupe {str(u.dedupe).lower()}"
    ]
    for r in report.properties:
        lines.append(f"property {r.name} checked {r.checked} violations {r.violations} equality {r.equality_cases}")
        lines.extend(f"  counterexample {c}" for c in r.counterexamples)
    lines.append(f"total checked {report.total_checked} violations {report.total_violations}")
    lines.append(f"wall_time {report.wall_time:.3f}")
    return "\n".join(lines) + "\n"


def report_to_keyvalue(report: VerificationReport) -> str:
    """Flat key=value lines; wall time last so runs can be diffed without it."""
    lines = [f"universe.{k}={v}" for k, v in report.universe.model_dump(mode="json").items()]
    for r in report.properties:
        lines.append(f"property.{r.name}.checked={r.checked}")
        lines.append(f"property.{r.name}.violations={r.violations}")
        lines.append(f"property.{r.name}.equality_cases={r.equality_cases}")
        lines.extend(f"property.{r.name}.counterexample.{i}={c}" for i, c in enumerate(r.counterexamples))
    lines.append(f"total.checked={report.total_checked}")
    lines.append(f"total.violations={report.total_violations}")
    lines.append(f"wall_time={report.wall_time:.3f}")
    return "\n".join(lines) + "\n"
