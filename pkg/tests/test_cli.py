"""Tests for the command-line entry point."""
import io

import pytest

from engine.graph import read_graph
from engine.memory import get_reports
from engine.properties import REGISTRY, Property
from main import EXIT_INPUT, EXIT_OK, EXIT_USAGE, EXIT_VIOLATIONS, main


@pytest.fixture
def c4_file(tmp_path):
    target = tmp_path / "c4.txt"
    target.write_text("n 4\ne 0 1 +\ne 1 2 +\ne 2 3 +\ne 0 3 +\n", encoding="utf-8")
    return str(target)


def _run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out.splitlines(), err


def test_nullity(capsys, c4_file):
    """Test the nullity command on a positive quadrangle."""
    code, out, _ = _run(capsys, ["nullity", c4_file])
    assert code == EXIT_OK
    assert out == ["n 4", "rank 2", "eta 2"]


def test_nullity_from_stdin(capsys, monkeypatch):
    """Test reading the graph from standard input."""
    monkeypatch.setattr("sys.stdin", io.StringIO("n 3\ne 0 1 +\ne 1 2 -\n"))
    code, out, _ = _run(capsys, ["nullity", "-"])
    assert code == EXIT_OK
    assert out[-1] == "eta 1"


def test_multiplicity(capsys, c4_file):
    """Test eigenvalue multiplicities of C4."""
    assert _run(capsys, ["multiplicity", c4_file, "2"])[1] == ["lambda 2", "multiplicity 1"]
    assert _run(capsys, ["multiplicity", c4_file, "1/2"])[1] == ["lambda 1/2", "multiplicity 0"]


def test_invariants(capsys, c4_file):
    """Test the invariant listing."""
    code, out, _ = _run(capsys, ["invariants", c4_file])
    assert code == EXIT_OK
    assert out == ["omega 1", "c 1", "p 0", "degrees 2 2 2 2", "cycle_disjoint true", "block cycle 0 1 2 3"]


def test_bound(capsys, c4_file):
    """Test the bound verdict of a cycle."""
    _, out, _ = _run(capsys, ["bound", c4_file])
    assert out == ["case p0_cycle_disjoint", "bound 2", "eta 2", "slack 0"]


def test_gen_then_classify(capsys, tmp_path):
    """Test generating a theta graph to a file and classifying it."""
    target = tmp_path / "theta.txt"
    assert main(["gen", "theta", "p=4", "q=4", "l=4", "signs=++", "-o", str(target)]) == EXIT_OK
    assert read_graph(target).n == 11
    code, out, _ = _run(capsys, ["classify", str(target)])
    assert code == EXIT_OK
    assert out[:4] == ["case p0_shared_cycles", "bound 3", "eta 3", "slack 0"]
    assert "form bicyclic" in out


def test_gen_to_stdout(capsys):
    """Test that gen writes the text format when no output is given."""
    code, out, _ = _run(capsys, ["gen", "path", "n=3", "signs=+-"])
    assert code == EXIT_OK
    assert out == ["n 3", "e 0 1 +", "e 1 2 -"]


def test_reduce_writes_final_graph(capsys, tmp_path):
    """Test the reduce trace and the -o output."""
    source = tmp_path / "p7.txt"
    main(["gen", "path", "n=7", "-o", str(source)])
    target = tmp_path / "reduced.txt"
    code, out, _ = _run(capsys, ["reduce", str(source), "-o", str(target)])
    assert code == EXIT_OK
    assert out == ["pendant_pair_delete 0 1 1"] + out[1:]
    assert len(out) == 3
    assert read_graph(target).n == 1


@pytest.mark.parametrize(
    "argv",
    [[], ["frobnicate"], ["nullity"], ["verify", "--max-n", "three"]],
)
def test_usage_errors(capsys, argv):
    """Test that malformed command lines exit with the usage code."""
    code, _, err = _run(capsys, argv)
    assert code == EXIT_USAGE
    assert err.startswith("usage error:")


def test_input_errors(capsys, tmp_path, c4_file):
    """Test missing files, malformed graphs and bad rationals."""
    bad = tmp_path / "bad.txt"
    bad.write_text("n 2\ne 0 5 +\n", encoding="utf-8")
    for argv in (
        ["nullity", str(tmp_path / "missing.txt")],
        ["nullity", str(bad)],
        ["multiplicity", c4_file, "0.5"],
        ["gen", "cycle", "n=2"],
    ):
        code, _, err = _run(capsys, argv)
        assert code == EXIT_INPUT
        assert err.startswith("error:")


def test_verify_passes(capsys, tmp_path):
    """Test a small verify run and the history file."""
    history = tmp_path / "history.json"
    argv = [
        "verify", "--max-n", "4", "--props", "nullity_upper_bound,one_deficient_iff",
        "--config", str(tmp_path / "none.yaml"), "--history", str(history),
    ]
    code, out, _ = _run(capsys, argv)
    assert code == EXIT_OK
    assert out[0].startswith("universe min_n 2 max_n 4")
    assert out[-2].endswith("violations 0")
    reports = get_reports(history)
    assert len(reports) == 1
    assert reports[0]["universe"]["max_n"] == 4


def test_verify_random_keyvalue(capsys, tmp_path):
    """Test random mode with key=value output."""
    argv = [
        "verify", "--max-n", "7", "--samples", "10", "--seed", "3", "--props", "multiplicity_at_zero",
        "--keyvalue", "--config", str(tmp_path / "none.yaml"),
    ]
    code, out, _ = _run(capsys, argv)
    assert code == EXIT_OK
    assert "universe.sign_mode=random" in out
    assert "property.multiplicity_at_zero.checked=10" in out


def test_verify_reports_violations(capsys, monkeypatch, tmp_path):
    """Test the violation exit code and the printed counterexample."""
    monkeypatch.setitem(REGISTRY, "never", Property("never", "test", lambda inst, settings: False))
    code, out, _ = _run(capsys, ["verify", "--max-n", "2", "--props", "never", "--config", str(tmp_path / "none.yaml")])
    assert code == EXIT_VIOLATIONS
    assert "  counterexample n 2; e 0 1 +" in out


def test_verify_unknown_property(capsys, tmp_path):
    """Test that an unknown property name is an input error."""
    code, _, err = _run(capsys, ["verify", "--props", "nope", "--config", str(tmp_path / "none.yaml")])
    assert code == EXIT_INPUT
    assert "nope" in err
