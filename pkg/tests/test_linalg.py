"""Unit tests for exact rank, nullity and multiplicity."""
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from engine.generators import cycle, path, random_signed
from engine.graph import build, empty_graph
from engine.linalg import (
    SymIntMatrix,
    adjacency,
    cycle_nullity_closed_form,
    integer_rank,
    multiplicity,
    nullity,
    parse_rational,
    path_nullity_closed_form,
    rank,
    shifted,
)


def test_adjacency_carries_signs():
    """Test the signed adjacency matrix."""
    m = adjacency(build(3, [(0, 1, 1), (1, 2, -1)]))
    assert m.entries == ((0, 1, 0), (1, 0, -1), (0, -1, 0))


def test_matrix_must_be_symmetric():
    """Test that an asymmetric matrix is refused."""
    with pytest.raises(ValueError):
        SymIntMatrix(order=2, entries=((0, 1), (0, 0)))


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([], 0),
        ([[0, 0], [0, 0]], 0),
        ([[1, 2], [2, 4]], 1),
        ([[0, 1], [1, 0]], 2),
        ([[2, 3, 5], [4, 6, 10], [1, 1, 1]], 2),
    ],
)
def test_integer_rank(rows, expected):
    """Test fraction-free elimination on small integer matrices."""
    assert integer_rank(rows) == expected


def test_rank_matches_float_oracle():
    """Test exact rank against numpy on seeded random signed graphs."""
    rng = np.random.default_rng(7)
    for _ in range(60):
        g = random_signed(int(rng.integers(1, 9)), 0.5, rng)
        expected = np.linalg.matrix_rank(np.array(adjacency(g).entries, dtype=float)) if g.n else 0
        assert rank(adjacency(g)) == expected


def test_empty_graph_nullity():
    """Test the zero-vertex and edgeless cases."""
    assert nullity(empty_graph()) == 0
    assert nullity(empty_graph(3)) == 3


@pytest.mark.parametrize("n", range(1, 10))
def test_path_closed_form_all_signings(n):
    """Test every signed path against n mod 2."""
    for signs in product((1, -1), repeat=n - 1):
        assert nullity(path(n, signs)) == path_nullity_closed_form(n) == n % 2


@pytest.mark.parametrize("n", range(3, 11))
@pytest.mark.parametrize("sign", [1, -1])
def test_cycle_closed_form(n, sign):
    """Test signed cycles against the length mod 4 rule."""
    assert nullity(cycle(n, sign)) == cycle_nullity_closed_form(n, sign)


@pytest.mark.slow
@pytest.mark.parametrize("n", range(3, 17))
def test_cycle_closed_form_to_sixteen(n):
    """Test both switching classes of every cycle up to order 16."""
    for sign in (1, -1):
        assert nullity(cycle(n, sign)) == cycle_nullity_closed_form(n, sign)


@pytest.mark.parametrize(
    "length, sign, expected",
    [(4, 1, 2), (4, -1, 0), (6, -1, 2), (6, 1, 0), (8, 1, 2), (5, 1, 0), (5, -1, 0), (3, 1, 0)],
)
def test_cycle_nullity_closed_form_values(length, sign, expected):
    """Test the closed form at representative lengths."""
    assert cycle_nullity_closed_form(length, sign) == expected


@pytest.mark.parametrize(
    "value, expected",
    [("1/2", Fraction(1, 2)), ("-3", Fraction(-3)), (" 4 / 6 ", Fraction(2, 3)), (5, Fraction(5)), (Fraction(1, 3), Fraction(1, 3))],
)
def test_parse_rational(value, expected):
    """Test accepted rational syntaxes."""
    assert parse_rational(value) == expected


@pytest.mark.parametrize("value", ["0.5", "1/0", "a", "1/-2", ""])
def test_parse_rational_rejects(value):
    """Test that decimals and malformed text are refused."""
    with pytest.raises(ValueError):
        parse_rational(value)


def test_shifted_uses_integer_scaling():
    """Test that den*A - num*I stays integral."""
    m = shifted(adjacency(path(2)), "1/2")
    assert m.entries == ((-1, 2), (2, -1))


def test_multiplicity_values():
    """Test multiplicities of known spectra."""
    assert multiplicity(path(2), 1) == 1
    assert multiplicity(path(2), -1) == 1
    assert multiplicity(path(2), "1/2") == 0
    assert multiplicity(cycle(4, 1), 2) == 1
    assert multiplicity(cycle(4, 1), -2) == 1
    assert multiplicity(cycle(4, -1), 2) == 0


def test_multiplicity_at_zero_is_nullity():
    """Test m(G, 0) = eta(G) on a few graphs."""
    for g in (cycle(4, 1), cycle(6, -1), path(5), build(4, [(0, 1, 1), (0, 2, -1), (0, 3, 1)])):
        assert multiplicity(g, 0) == nullity(g)
