import itertools
import math
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from incidence_ldpc.analysis import (
    check_biregular,
    density,
    format_density,
    girth,
    girth_upper_bound,
    graph_stats,
    has_four_cycle,
)
from incidence_ldpc.code import HAMMING_7_4, parity_check_from_graph
from incidence_ldpc.graph import IncidenceGraph, restrict_lines

from conftest import cached_graph


def four_cycle_oracle(dense):
    rows = [set(np.flatnonzero(r)) for r in np.asarray(dense)]
    return any(len(a & b) >= 2 for a, b in itertools.combinations(rows, 2))


def nx_girth(g):
    G = nx.Graph()
    P = g.num_points
    for i in range(P):
        for j in g.point_neighbors(i):
            G.add_edge(i, P + int(j))
    return nx.girth(G)


def test_girth_six_cycle():
    # points 0..2, lines 0..2, p0-l0-p1-l1-p2-l2-p0
    g = IncidenceGraph.from_biadjacency(np.array([[1, 0, 1], [1, 1, 0], [0, 1, 1]]))
    assert girth(g) == 6


def test_girth_tree_is_acyclic():
    g = IncidenceGraph.from_biadjacency(np.array([[1, 1, 0], [0, 1, 1]]))
    assert girth(g) == math.inf
    assert graph_stats(g).as_dict()["girth"] == "acyclic"


@pytest.mark.parametrize("family, base", [("ring", 2), ("ring", 3), ("ring", 4), ("field", 2), ("field", 3)])
def test_girth_matches_networkx(family, base):
    g = cached_graph(family, base)
    assert girth(g) == nx_girth(g)


def test_girth_f3_exact():
    g = cached_graph("field", 3)
    ctx = g.context
    t = ctx.encode([0, 1])
    t2 = ctx.encode([0, 2])
    # explicit 6-cycle; t^3 = -t makes every trace term vanish
    cycle = [(0, 0, 0), (t, 0, 0), (1, t2, 0), (t2, t, 0), (2, 0, 0), (0, 0, 0)]
    from incidence_ldpc.graph import incident
    pts, lns = cycle[0::2], cycle[1::2]
    for k in range(3):
        assert incident(ctx, pts[k], lns[k])
        assert incident(ctx, pts[(k + 1) % 3], lns[k])
    assert girth(g) == 6


@pytest.mark.parametrize("family, base", [("ring", 2), ("ring", 3), ("ring", 4), ("field", 2), ("field", 3)])
def test_girth_agrees_with_four_cycle_test(family, base):
    g = cached_graph(family, base)
    assert (girth(g) >= 6) == (not has_four_cycle(parity_check_from_graph(g)))


def test_girth_upper_bound_is_bound():
    g = cached_graph("field", 3)
    assert girth_upper_bound(g, [0, 5]) >= girth(g)


def test_density_examples():
    assert format_density(density(cached_graph("field", 3))) == "0.0139"
    assert round(float(density(cached_graph("field", 3))), 3) == 0.014
    assert round(float(density(cached_graph("field", 7))), 4) == 0.0006
    k11 = IncidenceGraph.from_biadjacency(np.array([[1]]))
    assert density(k11) == 1
    lone = IncidenceGraph.from_biadjacency(np.zeros((1, 0)))
    with pytest.raises(ValueError):
        density(lone)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_density_closed_form(q):
    # |E| = q^6, |V| = q^4 (q + 1)
    v = q ** 4 * (q + 1)
    assert density(cached_graph("field", q)) == Fraction(2 * q ** 6, v * (v - 1))


def test_biregular_examples():
    assert check_biregular(cached_graph("ring", 4)).bidegree == (4, 16)
    from incidence_ldpc.algebra import build_ring
    from incidence_ldpc.graph import canonical_restriction
    g = cached_graph("ring", 5, canonical_restriction(build_ring(5), 16))
    assert check_biregular(g).bidegree == (5, 16)


def test_biregular_failure_names_endpoints():
    g = cached_graph("ring", 3)
    j = int(g.point_neighbors(10)[0])
    report = check_biregular(g.without_edge(10, j))
    assert not report.ok
    assert report.offending_points == [10] and report.offending_lines == [j]


def test_four_cycle_examples(hamming):
    assert has_four_cycle(np.ones((2, 2)))
    assert has_four_cycle(hamming)
    # rows 1 and 2 of the Hamming matrix share columns 1 and 3
    assert {0, 2} <= set(np.flatnonzero(HAMMING_7_4[0])) & set(np.flatnonzero(HAMMING_7_4[1]))
    assert not has_four_cycle(parity_check_from_graph(cached_graph("field", 3)))


@pytest.mark.parametrize("family, base", [("ring", 2), ("ring", 3), ("ring", 4), ("field", 2), ("field", 3)])
def test_four_cycle_matches_oracle(family, base):
    H = parity_check_from_graph(cached_graph(family, base))
    assert has_four_cycle(H) == four_cycle_oracle(H.to_dense())


@pytest.mark.parametrize("R", [(0, 1), (0, 1, 2, 3), (2, 5, 7)])
def test_restriction_does_not_lower_girth(R):
    full = cached_graph("ring", 3)
    assert girth(restrict_lines(full, R)) >= girth(full)


def test_graph_stats_render():
    s = graph_stats(cached_graph("ring", 3))
    assert s.num_vertices == 324 and s.bidegree == (3, 9) and s.girth == 6
    assert "bidegree  (3, 9)" in s.render()
