import numpy as np
import pytest

from sl2cert import orbit_graph
from sl2cert.orbit_graph import build_graph, flavor_of, homology_ranks, y0_word


def test_flavor_of():
    assert flavor_of(13) == "13mod24"
    assert flavor_of(37) == "13mod24"
    assert flavor_of(29) == "5mod24"
    assert flavor_of(53) == "5mod24"


def test_flavor_mismatch_rejected():
    with pytest.raises(ValueError):
        build_graph(13, "5mod24")


def test_cell_counts_q13(graph13):
    assert graph13.n_vertices == 14 + 91 + 78 + 91
    assert graph13.n_edges == 182 + 546 + 273 + 364


def test_free_orbits_add_regular_edges():
    g = build_graph(13, "13mod24", k=2)
    assert g.n_edges == 1365 + 2 * 1092


def test_edge_pattern_13mod24(graph13):
    eo = graph13.edge_orbits
    assert (eo["eta0"].source, eo["eta0"].target) == ("v0", "v1")
    assert (eo["eta1"].source, eo["eta1"].target) == ("v1", "v2")
    assert (eo["eta2"].source, eo["eta2"].target) == ("v1", "v3")
    assert (eo["eta3"].source, eo["eta3"].target) == ("v3", "v0")


def test_twist_containment(graph13):
    sl = graph13.sl
    for name, eo in graph13.edge_orbits.items():
        src_stab = graph13.vertex_stabs[eo.source]
        tgt_stab = graph13.vertex_stabs[eo.target]
        g = eo.twist
        for s in eo.stabilizer.elements[:8]:
            assert s in src_stab
            assert sl.mul(sl.mul(sl.inv(g), s), g) in tgt_stab


def test_homology_ranks_q13(graph13):
    assert homology_ranks(graph13) == (1, 1092)


def test_spanning_tree(graph13):
    parent, in_tree, non_tree = orbit_graph.spanning_tree(graph13)
    assert in_tree.sum() == graph13.n_vertices - 1
    assert len(non_tree) == graph13.n_edges - in_tree.sum()
    assert (parent < 0).sum() == 1    # single root


def test_edge_endpoints_consistent(graph13):
    # expanded endpoints agree with orbit-level incidence via cosets
    for e in (0, 200, 800, 1300):
        orbit, rep = graph13.edge_rep[e]
        eo = graph13.edge_orbits[orbit]
        src = graph13.vertex_of(eo.source, rep)
        assert int(graph13.edge_src[e]) == src


def test_dump_format(graph13):
    lines = graph13.dumps().splitlines()
    v_lines = [l for l in lines if l.startswith("V ")]
    e_lines = [l for l in lines if l.startswith("E ")]
    assert len(v_lines) == graph13.n_vertices
    assert len(e_lines) == graph13.n_edges
    assert len(e_lines[0].split()) == 6    # E orbit rep src tgt twist


def test_y0_word_13mod24(graph13):
    data = y0_word(graph13)
    assert [o for o, _ in data["word"]] == ["eta0", "eta2", "eta3"]
    assert all(sign == -1 for _, sign in data["word"])
    assert data["non_tree_edge"] == "eta3"
    assert data["tree_edges"] == ("eta0", "eta1", "eta2")
    # constant resolves to a concrete matrix with determinant 1 mod q
    a, b, c, d = data["constant"]
    assert (a * d - b * c) % 13 == 1


def test_translate_edge_action(graph13):
    # g.(h.e) == (gh).e on expanded edges
    psl = graph13.psl
    rng = np.random.default_rng(2)
    for _ in range(20):
        g, h = (int(x) for x in rng.integers(psl.n, size=2))
        e = int(rng.integers(graph13.n_edges))
        lhs = graph13.translate_edge(g, graph13.translate_edge(h, e))
        rhs = graph13.translate_edge(psl.mul(g, h), e)
        assert lhs == rhs
