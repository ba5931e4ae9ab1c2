import json

import pytest

import diophgraph as dg


def test_square_and_factor():
    assert dg.is_square(25)
    assert not dg.is_square(3)
    assert dg.is_square(10**40)
    assert dg.factorize(840) == {2: 3, 3: 1, 5: 1, 7: 1}
    assert dg.square_free_part(12) == 3
    assert dg.unit_roots_mod(24) == [1, 5, 7, 11, 13, 17, 19, 23]
    assert dg.count_unit_roots(15) == 4


def test_pell():
    assert dg.fundamental_unit(2) == (3, 2)
    assert dg.fundamental_unit(61) == (1766319049, 226153980)
    assert dg.unit_order_mod(2, 7) == 3


def test_build_and_stats():
    g = dg.build_range(8)
    assert g.edges() == [(1, 3), (1, 8), (2, 4), (3, 5), (3, 8), (4, 6), (5, 7), (6, 8)]
    s = g.stats()
    assert (s["n"], s["e"], s["components"]) == (8, 8, 1)
    assert dg.build_set([1, 3, 8, 120]).stats()["clique_number"] == 4
    assert dg.build_range(2000, threads=1) == dg.build_range(2000, threads=4)
    doc = g.to_json()
    assert json.loads(doc)["schema_version"] == 1
    assert dg.graph_from_json(doc) == g
    with pytest.raises(ValueError):
        dg.build_set([1, 1])


def test_big_edge_test():
    assert dg.edge_test(120, 11781)
    assert not dg.edge_test(1, 11781)


def test_coloring():
    v = dg.NON_FOUR_COLORABLE_80
    g = dg.build_set(v)
    assert not dg.k_colorable(g, 4, v)["colorable"]
    five = dg.k_colorable(g, 5, v)
    assert five["colorable"]
    for a, b in g.edges():
        assert five["coloring"][a] != five["coloring"][b]
    assert dg.chromatic_number(g, v) == 5
    minimal, critical = dg.minimality_check(g, 4, v)
    assert minimal and len(critical) == 80


def test_extensions():
    assert dg.extend_double([1, 3], 0, 1, 3)["values"] == [8, 120, 1680]
    iso = dg.extend_isolated([1], 1)
    assert iso["values"] == [21] and iso["modulus"] == 36
    pen = dg.extend_pendant([1, 3, 8, 120], 0, 2)
    for w in pen["values"]:
        assert dg.edge_test(1, w)
        assert not any(dg.edge_test(v, w) for v in (3, 8, 120))
    assert dg.common_neighbors_bounded([1, 3, 8], 10**6) == [120]
    assert dg.common_neighbors_equal_sqfree(1, 16) == [3]
    assert dg.regular_extensions(1, 3, 8) == (0, 120)
    values, missing = dg.family_k5_minus_edge(2)
    assert values == [1, 3, 8, 120, 11781]
    with pytest.raises(ValueError):
        dg.extend_double([2, 8], 0, 1, 1)


def test_represent():
    anti_c6 = [(0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (1, 5), (2, 4), (2, 5), (3, 5)]
    r = dg.represent_graph(6, anti_c6)
    assert r["found"]
    w = r["witness"]
    for a in range(6):
        for b in range(a + 1, 6):
            assert dg.edge_test(w[a], w[b]) == ((a, b) in anti_c6)


def test_analysis():
    assert dg.heuristic_top(10**4, 1) == [24]
    assert dg.omega_distribution(100)[:2] == [1, 35]
    assert dg.near_hamiltonian_path(8) == [7, 5, 3, 1, 8, 6, 4, 2]
    assert dg.hamiltonian_path_16k2(1)[:3] == [3, 1, 15]
    assert dg.hamiltonian_path(dg.build_range(17))[0] == "no"
    assert dg.hamiltonian_path(dg.build_range(16))[0] == "yes"
    assert dg.hamiltonian_cycle(dg.build_range(12))[0] == "no"
    pruned, steps = dg.prune_low_degree(dg.build_range(1000))
    assert len(steps) > 0
    assert pruned.edge_count() / len(pruned) > 3.776
