import math

import pytest

from asymlab.errors import InvalidStructure, KindMismatch, NotRegular, NotStronglyRegular
from asymlab.srg import (
    aut_comparison,
    classical_graph,
    complete_multipartite,
    graph_from_json,
    graph_to_json,
    latin_square_graph,
    least_eigenvalue,
    srg_params,
    steiner_graph,
)
from asymlab.structures import graph_from_edges, validate_latin

from conftest import cyclic_square

TOL = 1e-9


def complete_graph(n):
    return graph_from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(i + 5, ((i + 2) % 5) + 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return graph_from_edges(10, outer + inner + spokes)


def test_srg_params_examples():
    c5 = graph_from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    assert srg_params(c5).as_tuple() == (5, 2, 0, 1)
    assert srg_params(petersen()).as_tuple() == (10, 3, 0, 1)


def test_srg_params_not_regular():
    with pytest.raises(NotRegular):
        srg_params(graph_from_edges(3, [(0, 1), (1, 2)]))


def test_srg_params_not_strongly_regular():
    hexagon = graph_from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    with pytest.raises(NotStronglyRegular) as exc:
        srg_params(hexagon)
    assert exc.value.witness is not None


def test_latin_square_graph_k4():
    sq = validate_latin(2, [[0, 1], [1, 0]])
    g = latin_square_graph(sq)
    assert g.v == 4 and len(g.edges) == 6  # K4: every pair of cells agrees somewhere


def test_latin_square_graph_parameters():
    for n in (3, 4, 5):
        g = latin_square_graph(cyclic_square(n))
        params = srg_params(g)
        assert params.v == n * n and params.k == 3 * (n - 1)
        assert params.k * (params.k - params.lmbda - 1) == (params.v - params.k - 1) * params.mu
        assert least_eigenvalue(g) == pytest.approx(-3.0, abs=TOL)
        assert params.least_eigenvalue_root() == pytest.approx(-3.0, abs=TOL)


def test_latin_square_graph_z4_valency(z4):
    g = latin_square_graph(z4)
    assert g.v == 16
    assert g.valency() == 9


def test_steiner_graph_fano_is_k7(fano):
    g = steiner_graph(fano)
    assert g.v == 7 and len(g.edges) == 21
    params = srg_params(g)
    assert params.as_tuple() == (7, 6, 5, 0)
    assert least_eigenvalue(g) == pytest.approx(-1.0, abs=TOL)
    assert params.least_eigenvalue_root() == pytest.approx(-1.0, abs=TOL)


def test_steiner_graph_ag23(ag):
    g = steiner_graph(ag)
    params = srg_params(g)
    assert params.v == 12 and params.k == 9
    assert least_eigenvalue(g) == pytest.approx(-3.0, abs=TOL)
    assert params.least_eigenvalue_root() == pytest.approx(-3.0, abs=TOL)


def test_steiner_graph_ag23_is_multipartite(ag):
    a = steiner_graph(ag)
    b = complete_multipartite(4, 3)
    assert srg_params(a) == srg_params(b)
    from asymlab.permgroup import ColoredGraph, colored_graph_aut

    aut_a = colored_graph_aut(ColoredGraph(a, (0,) * a.v)).order
    aut_b = colored_graph_aut(ColoredGraph(b, (0,) * b.v)).order
    assert aut_a == aut_b == math.factorial(4) * math.factorial(3) ** 4


def test_complete_multipartite():
    k2 = complete_multipartite(2, 1)
    assert k2.v == 2 and len(k2.edges) == 1
    k333 = complete_multipartite(3, 3)
    assert k333.v == 9 and k333.valency() == 6
    assert least_eigenvalue(k333) == pytest.approx(-3.0, abs=TOL)


def test_triangular_graphs():
    t4 = classical_graph("triangular", 4)
    assert t4.v == 6 and t4.valency() == 4
    # octahedron = K6 minus a perfect matching
    missing = {(a, b) for a in range(6) for b in range(a + 1, 6)} - t4.edges
    assert len(missing) == 3 and len({v for e in missing for v in e}) == 6
    t5 = classical_graph("triangular", 5)
    assert srg_params(t5).as_tuple() == (10, 6, 3, 4)
    assert least_eigenvalue(t5) == pytest.approx(-2.0, abs=TOL)
    # T(5) is the Petersen complement
    comp_edges = {(a, b) for a in range(10) for b in range(a + 1, 10)} - t5.edges
    from oracles import graph_aut_order_backtracking

    comp = graph_from_edges(10, comp_edges)
    assert srg_params(comp).as_tuple() == (10, 3, 0, 1)
    assert graph_aut_order_backtracking(comp) == 120


def test_square_lattice():
    l2 = classical_graph("square_lattice", 2)
    assert l2.v == 4 and l2.valency() == 2 and len(l2.edges) == 4
    l3 = classical_graph("square_lattice", 3)
    assert srg_params(l3).as_tuple() == (9, 4, 1, 2)


def test_classical_graph_preconditions():
    with pytest.raises(InvalidStructure):
        classical_graph("triangular", 3)
    with pytest.raises(InvalidStructure):
        classical_graph("square_lattice", 1)


def test_closed_form_root_cross_check():
    graphs = (
        latin_square_graph(cyclic_square(4)),
        complete_multipartite(5, 3),
        classical_graph("triangular", 6),
        petersen(),
    )
    for g in graphs:
        params = srg_params(g)
        assert least_eigenvalue(g) == pytest.approx(params.least_eigenvalue_root(), abs=TOL)


def test_steiner_graph_sts13_sample():
    # cyclic STS(13) from the base blocks {0,1,4} and {0,2,7}
    from asymlab.structures import validate_sts

    blocks = []
    for i in range(13):
        blocks.append([i, (i + 1) % 13, (i + 4) % 13])
        blocks.append([i, (i + 2) % 13, (i + 7) % 13])
    sts13 = validate_sts(13, blocks)
    g = steiner_graph(sts13)
    params = srg_params(g)
    assert params.v == 13 * 12 // 6 == 26
    assert params.k == 3 * (13 - 3) // 2 == 15
    le = least_eigenvalue(g)
    assert le >= -3 - TOL
    assert le == pytest.approx(params.least_eigenvalue_root(), abs=TOL)


def test_aut_comparison_sts7(fano):
    g = steiner_graph(fano)
    cmp = aut_comparison(fano, g)
    assert cmp.graph_aut_order == 5040
    assert cmp.structure_aut_order == 168
    assert not cmp.induced_equal


def test_aut_comparison_z3(z3):
    cmp = aut_comparison(z3, latin_square_graph(z3))
    assert cmp.structure_aut_order == 108
    assert cmp.graph_aut_order == 1296
    assert not cmp.induced_equal


def test_aut_comparison_kind_mismatch(fano, z3):
    with pytest.raises(KindMismatch):
        aut_comparison(fano, latin_square_graph(z3))


def test_graph_json_round_trip():
    g = petersen()
    assert graph_from_json(graph_to_json(g)) == g
