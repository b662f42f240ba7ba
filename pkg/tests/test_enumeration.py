import math

import pytest

from asymlab.enumeration import (
    count_one_factors,
    enumerate_latin,
    enumerate_one_factorizations,
    enumerate_sts,
    extension_rows,
)
from asymlab.errors import CapExceeded, InadmissibleOrder, OddOrder, VisitorAbort
from asymlab.structures import (
    graph_from_edges,
    validate_latin,
    validate_one_factorization,
    validate_rectangle,
    validate_sts,
)

from oracles import brute_latin_squares, brute_of_sets, brute_perfect_matchings, brute_sts_sets


def complete_graph(n):
    return graph_from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 12), (4, 576), (5, 161280)])
def test_latin_counts(n, count):
    assert enumerate_latin(n, count_only=True) == count


@pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 1), (4, 4), (5, 56)])
def test_latin_reduced_counts(n, count):
    assert enumerate_latin(n, count_only=True, reduced_only=True) == count


def test_latin_reduced_times_factorials():
    for n in range(1, 6):
        reduced = enumerate_latin(n, count_only=True, reduced_only=True)
        labeled = enumerate_latin(n, count_only=True)
        assert labeled == reduced * math.factorial(n) * math.factorial(n - 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_latin_visitor_completeness(n):
    visited = set()
    enumerate_latin(n, lambda sq: visited.add(sq.grid))
    assert visited == brute_latin_squares(n)


def test_latin_visited_are_valid_and_unique():
    seen = []
    enumerate_latin(4, lambda sq: seen.append(sq))
    assert len(seen) == len({s.grid for s in seen}) == 576
    for sq in seen[::97]:
        validate_latin(sq.n, [list(r) for r in sq.grid])


def test_latin_reduced_visitor():
    seen = []
    enumerate_latin(5, lambda sq: seen.append(sq), reduced_only=True)
    assert len(seen) == 56
    for sq in seen:
        assert sq.grid[0] == tuple(range(5))
        assert tuple(sq.grid[r][0] for r in range(5)) == tuple(range(5))


@pytest.mark.parametrize("n,count", [(3, 1), (7, 30), (9, 840)])
def test_sts_counts(n, count):
    assert enumerate_sts(n, count_only=True) == count


def test_sts_visitor_completeness():
    visited = set()
    enumerate_sts(7, lambda s: visited.add(s.blocks))
    assert visited == brute_sts_sets(7)


def test_sts_visited_are_canonical():
    seen = []
    enumerate_sts(9, lambda s: seen.append(s))
    assert len(seen) == 840
    sample = seen[::117]
    for s in sample:
        validate_sts(s.n, [list(b) for b in s.blocks])
        assert s.blocks == tuple(sorted(s.blocks))


@pytest.mark.parametrize("n,count", [(2, 1), (4, 1), (6, 6), (8, 6240)])
def test_of_counts(n, count):
    assert enumerate_one_factorizations(n, count_only=True) == count


@pytest.mark.parametrize("n", [2, 4, 6])
def test_of_visitor_completeness(n):
    visited = set()
    enumerate_one_factorizations(n, lambda f: visited.add(f.factors))
    assert visited == brute_of_sets(n)


def test_of_visited_are_valid():
    seen = []
    enumerate_one_factorizations(6, lambda f: seen.append(f))
    for f in seen:
        validate_one_factorization(f.n, [[list(e) for e in fac] for fac in f.factors])


def test_parallel_counts_match():
    for jobs in (2, 8):
        assert enumerate_latin(4, count_only=True, jobs=jobs) == 576
        assert enumerate_sts(9, count_only=True, jobs=jobs) == 840
        assert enumerate_one_factorizations(6, count_only=True, jobs=jobs) == 6


def test_caps():
    with pytest.raises(CapExceeded):
        enumerate_latin(7, count_only=True)
    assert enumerate_latin(6, count_only=True, reduced_only=True) == 9408
    with pytest.raises(CapExceeded):
        enumerate_sts(13, count_only=True)
    with pytest.raises(CapExceeded):
        enumerate_sts(15, count_only=True, budget=True)
    with pytest.raises(CapExceeded):
        enumerate_one_factorizations(10, count_only=True)


def test_inadmissible_orders():
    with pytest.raises(InadmissibleOrder):
        enumerate_sts(5, count_only=True)
    with pytest.raises(OddOrder):
        enumerate_one_factorizations(5, count_only=True)
    with pytest.raises(InadmissibleOrder):
        enumerate_latin(0, count_only=True)


def test_visitor_abort_propagates():
    def stop_after_three(_):
        stop_after_three.count += 1
        if stop_after_three.count == 3:
            raise VisitorAbort("enough")

    stop_after_three.count = 0
    with pytest.raises(VisitorAbort):
        enumerate_latin(4, stop_after_three)
    assert stop_after_three.count == 3


def test_extension_rows_match_rectangle():
    r = validate_rectangle(3, [[0, 1, 2]])
    assert extension_rows(r) == ((1, 2, 0), (2, 0, 1))


def test_count_one_factors_examples():
    assert count_one_factors(complete_graph(4)) == 3
    assert count_one_factors(graph_from_edges(6, [(i, (i + 1) % 6) for i in range(6)])) == 2
    assert count_one_factors(complete_graph(6)) == 15
    # no perfect matching: odd order and a disconnected-pair case
    assert count_one_factors(complete_graph(5)) == 0
    assert count_one_factors(graph_from_edges(4, [(0, 1), (1, 2), (0, 2)])) == 0


def test_count_one_factors_against_brute():
    graphs = [
        complete_graph(6),
        graph_from_edges(8, [(i, (i + 1) % 8) for i in range(8)] + [(i, (i + 4) % 8) for i in range(4)]),
        graph_from_edges(6, [(0, 1), (2, 3), (4, 5), (0, 2), (1, 4), (3, 5)]),
    ]
    for g in graphs:
        assert count_one_factors(g) == len(brute_perfect_matchings(g))


def test_one_factor_bound_on_regular_graphs():
    # at most k^(n/2) perfect matchings in a k-valent graph
    graphs = [complete_graph(n) for n in (4, 6)] + [
        graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)]) for n in (4, 6, 8, 10)
    ]
    for g in graphs:
        k = g.valency()
        assert count_one_factors(g) <= k ** (g.v // 2)
