import json

import numpy as np
import pytest

from sl2cert import acyclic
from sl2cert.acyclic import CycleSpace, EdgePath, NoPathFound


@pytest.fixture(scope="module")
def cyc(graph13):
    return CycleSpace(graph13)


def test_edgepath_roundtrip():
    path = EdgePath(0, [("eta0", 3, 1), ("eta2", 17, -1)])
    assert EdgePath.parse(path.dumps(), 0) == path


def test_validate_rejects_broken_walk(graph13):
    bad = EdgePath(0, [("eta1", 0, 1)])      # eta1 does not start at vertex 0
    with pytest.raises(ValueError):
        acyclic.validate_path(graph13, bad)


def test_fundamental_cycles_are_cycles(graph13, cyc):
    # signed endpoint sums vanish
    for pos in (0, 5, 400, 1000):
        vec = cyc.fundamental_cycle(int(cyc.non_tree[pos]))
        sums = np.zeros(graph13.n_vertices, dtype=np.int64)
        for e, c in enumerate(vec):
            if c:
                sums[int(graph13.edge_tgt[e])] += c
                sums[int(graph13.edge_src[e])] -= c
        assert not sums.any()


def test_class_of_fundamental_cycle_is_basis_vector(cyc):
    vec = cyc.fundamental_cycle(int(cyc.non_tree[7]))
    cls = cyc.class_of(vec)
    want = np.zeros(len(cyc.non_tree), dtype=np.int64)
    want[7] = 1
    assert np.array_equal(cls, want)


def test_translate_is_module_action(graph13, cyc):
    rng = np.random.default_rng(0)
    vec = cyc.fundamental_cycle(int(cyc.non_tree[3]))
    for _ in range(10):
        g, h = (int(x) for x in rng.integers(graph13.psl.n, size=2))
        lhs = cyc.translate(g, cyc.translate(h, vec))
        rhs = cyc.translate(graph13.psl.mul(g, h), vec)
        assert np.array_equal(lhs, rhs)


def test_pairing_matrix_identity_row(graph13, cyc):
    vec = cyc.fundamental_cycle(int(cyc.non_tree[2]))
    mat = cyc.pairing_matrix(vec)
    ident = graph13.psl.identity
    assert np.array_equal(mat[ident], cyc.class_of(vec))


def test_realize_matches_class(graph13, cyc):
    rng = np.random.default_rng(1)
    cls = np.zeros(len(cyc.non_tree), dtype=np.int64)
    for pos in rng.integers(len(cls), size=4):
        cls[pos] += int(rng.integers(-2, 3))
    path = cyc.realize(cls)
    vec = acyclic.path_edge_vector(graph13, path)
    assert np.array_equal(cyc.class_of(vec), cls)


def test_zero_budget_raises(graph13):
    with pytest.raises(NoPathFound):
        acyclic.search_attaching_path(graph13, budget=0)


def test_certificate_json_shape(graph13):
    path = EdgePath(0, [])
    cert = acyclic.AcyclicityCertificate(
        path, b0=1, b1=1092, determinant=-1, hadamard_bound=10, primes=[7])
    doc = json.loads(cert.to_json())
    assert doc["verdict"] == "acyclic-over-Z"
    assert doc["determinant"] == "-1"
    cert2 = acyclic.AcyclicityCertificate(
        path, b0=1, b1=1092, determinant=6, hadamard_bound=10, primes=[7])
    assert cert2.verdict == "not-acyclic"
