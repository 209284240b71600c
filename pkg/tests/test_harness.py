"""Tests for universe enumeration and the verification runner."""
import pytest

from engine.config import VerifySettings
from engine.harness import (
    all_signings,
    enumerate_graphs,
    format_report,
    report_to_keyvalue,
    run_shard,
    switching_signings,
    underlying_graphs,
    verify,
)
from engine.linalg import nullity
from engine.properties import REGISTRY, Property
from engine.schemas import Universe
from engine.structure import cyclomatic_number


def _count(min_n, max_n, **kwargs):
    return sum(1 for _ in underlying_graphs(min_n, max_n, **kwargs))


def test_underlying_graph_counts():
    """Test labelled and unlabelled connected graph counts."""
    assert _count(2, 2) == 1
    assert _count(3, 3) == 4
    assert _count(4, 4) == 38
    assert _count(4, 4, dedupe=True) == 6
    assert _count(2, 5, dedupe=True) == 1 + 2 + 6 + 21
    assert _count(3, 3, connected=False) == 8


def test_underlying_graphs_are_numbered():
    """Test the running index used for sharding."""
    assert [i for i, _ in underlying_graphs(2, 3)] == list(range(5))


def test_signing_counts():
    """Test 2^c switching classes against 2^|E| signings."""
    g = next(g for _, g in underlying_graphs(4, 4) if g.edge_count == 6)
    assert sum(1 for _ in switching_signings(g)) == 2 ** cyclomatic_number(g) == 8
    assert sum(1 for _ in all_signings(g)) == 64


def test_switching_classes_cover_all_nullities():
    """Test that the transversal reaches every nullity all signings reach."""
    for _, g in underlying_graphs(2, 4, dedupe=True):
        assert {nullity(s) for s in all_signings(g)} == {nullity(s) for s in switching_signings(g)}


def test_enumerate_small_universe():
    """Test the signed stream for max_n = 3."""
    graphs = list(enumerate_graphs(Universe(max_n=3)))
    assert len(graphs) == 1 + 3 + 2
    assert sum(1 for _ in enumerate_graphs(Universe(max_n=3, sign_mode="all_signings"))) == 2 + 3 * 4 + 8


def test_random_universe_is_seeded():
    """Test random mode gives the same sample for the same seed."""
    u = Universe(max_n=8, sign_mode="random", samples=12, seed=5)
    first = list(enumerate_graphs(u))
    assert len(first) == 12
    assert first == list(enumerate_graphs(u))
    assert all(2 <= g.n <= 8 for g in first)


def test_universe_validation():
    """Test universe preconditions."""
    with pytest.raises(ValueError):
        Universe(max_n=1)
    with pytest.raises(ValueError):
        Universe(max_n=5, sign_mode="random")
    with pytest.raises(ValueError):
        Universe(max_n=3, min_n=4)


def test_verify_is_deterministic():
    """Test identical universes give identical reports apart from wall time."""
    u = Universe(max_n=4)
    names = ["nullity_upper_bound", "one_deficient_iff", "cycle_extremal_iff"]
    a = verify(u, names)
    b = verify(u, names)
    assert a.model_dump(exclude={"wall_time"}) == b.model_dump(exclude={"wall_time"})
    assert a.total_violations == 0
    assert [r.name for r in a.properties] == names
    bound = a.properties[0]
    assert bound.checked == sum(1 for _ in enumerate_graphs(u))
    assert bound.equality_cases > 0


def test_verify_rejects_unknown_property():
    """Test that unknown names are refused."""
    with pytest.raises(ValueError):
        verify(Universe(max_n=3), ["no_such_property"])


def test_violations_and_exceptions_are_data(monkeypatch):
    """Test that failing and raising checks become capped, sorted counterexamples."""

    def fails(inst, settings):
        return inst.g.n < 3

    def raises(inst, settings):
        raise RuntimeError("boom")

    monkeypatch.setitem(REGISTRY, "fails_at_three", Property("fails_at_three", "test", fails))
    monkeypatch.setitem(REGISTRY, "raises", Property("raises", "test", raises))
    settings = VerifySettings(counterexample_cap=2)
    report = verify(Universe(max_n=3), ["fails_at_three", "raises"], settings)
    failing, raising = report.properties
    assert failing.violations == 5 and failing.checked == 6
    assert len(failing.counterexamples) == 2
    assert failing.counterexamples == sorted(failing.counterexamples)
    assert raising.violations == 6
    assert "RuntimeError: boom" in raising.counterexamples[0]
    full = verify(Universe(max_n=3), ["fails_at_three"], settings, full_dump=True)
    assert len(full.properties[0].counterexamples) == 5


def test_shards_partition_the_universe():
    """Test that shard counts add up to the single-process count."""
    u = Universe(max_n=4)
    settings = VerifySettings()
    whole = run_shard(u, ["summary_identities"], settings)[0].checked
    parts = sum(run_shard(u, ["summary_identities"], settings, s, 3)[0].checked for s in range(3))
    assert parts == whole


@pytest.mark.integration
def test_parallel_run_matches_serial():
    """Test that worker processes merge to the serial report."""
    u = Universe(max_n=4)
    names = ["nullity_upper_bound", "vertex_deletion_step"]
    serial = verify(u, names, jobs=1)
    parallel = verify(u, names, jobs=2)
    assert serial.model_dump(exclude={"wall_time"}) == parallel.model_dump(exclude={"wall_time"})


@pytest.mark.integration
def test_every_universe_property_holds_to_order_four():
    """Test all universe properties on connected graphs up to order 4."""
    names = [n for n, p in REGISTRY.items() if p.over_universe]
    report = verify(Universe(max_n=4), names)
    assert report.total_violations == 0, format_report(report)


@pytest.mark.slow
def test_bound_exhaustive_to_order_six():
    """Test the nullity bound on every connected switching class up to order 6."""
    report = verify(Universe(max_n=6, dedupe=True), ["nullity_upper_bound", "one_deficient_iff", "cycle_extremal_iff"])
    assert report.total_violations == 0


@pytest.mark.slow
def test_all_signings_to_order_five():
    """Test the bound over all signings up to order 5."""
    report = verify(Universe(max_n=5, sign_mode="all_signings", dedupe=True), ["nullity_upper_bound"])
    assert report.total_violations == 0


def test_report_formats():
    """Test the text and key-value report renderings."""
    report = verify(Universe(max_n=3), ["multiplicity_at_zero"])
    text = format_report(report).splitlines()
    assert text[0] == "universe min_n 2 max_n 3 connected true sign_mode switching_classes dedupe false"
    assert text[1] == "property multiplicity_at_zero checked 6 violations 0 equality 0"
    assert text[2] == "total checked 6 violations 0"
    kv = report_to_keyvalue(report).splitlines()
    assert "property.multiplicity_at_zero.checked=6" in kv
    assert "total.violations=0" in kv
    assert kv[-1].startswith("wall_time=")
