import pytest

from tricert.edge3 import (
    Edge3Certificate,
    EdgeCutWitness,
    WheelMapping,
    certify_edge3,
    format_edge3,
    parse_edge3,
    verify_edge3,
    verify_edge_cut,
    wheel_reduce,
)
from tricert.graph_core import Graph, count_components
from tricert.oracle import K4_EDGES, brute_edge_3conn, gen_erdos_renyi_min3, gen_random_3connected, rng_for
from tricert.verifier import verify_certificate

from _support import corpus, cycle, k4


def two_k4s(bridges):
    edges = list(K4_EDGES) + [(u + 4, v + 4) for u, v in K4_EDGES] + list(bridges)
    return Graph.from_edges(8, edges)


def test_k4_expansion_sizes():
    gp, phi = wheel_reduce(k4())
    assert (gp.n, gp.m) == (16, 30)
    for v in range(4):
        block = [phi.hub[v], *phi.rim[v]]
        inside = sum(1 for a, b in gp.edges if a in block and b in block)
        assert inside == 6  # a wheel on three rim vertices is a K4
        assert gp.degree(phi.hub[v]) == 3
        assert all(gp.degree(r) == 4 for r in phi.rim[v])


def test_count_identities():
    for g in list(corpus()[:200]) + [gen_random_3connected(30, 5)]:
        if g.min_degree() < 3:
            continue
        gp, _ = wheel_reduce(g)
        assert gp.n == g.n + 2 * g.m and gp.m == 5 * g.m


def test_low_degree_short_circuits():
    w = certify_edge3(cycle(4))
    assert isinstance(w, EdgeCutWitness) and len(w.edges) == 2
    assert verify_edge_cut(cycle(4), w)
    with pytest.raises(ValueError):
        wheel_reduce(cycle(4))


def test_k4_positive_roundtrip():
    res = certify_edge3(k4())
    assert isinstance(res, Edge3Certificate)
    assert verify_edge3(k4(), res)
    again = parse_edge3(format_edge3(res))
    assert again.phi == res.phi and verify_edge3(k4(), again)


def test_two_k4s_with_two_bridges():
    g = two_k4s([(0, 4), (1, 5)])
    w = certify_edge3(g)
    assert isinstance(w, EdgeCutWitness)
    assert sorted(w.edges) == [(0, 4), (1, 5)]
    assert not brute_edge_3conn(g)[0]


def test_bridge_gives_single_edge():
    g = two_k4s([(0, 4)])
    w = certify_edge3(g)
    assert w.edges == ((0, 4),)


def test_redirected_rim_is_phi_reject():
    res = certify_edge3(k4())
    rim = list(res.phi.rim)
    a = rim[0]
    rim[0] = (a[1], a[0]) + a[2:]
    bad = Edge3Certificate(WheelMapping(res.phi.hub, tuple(rim)), res.inner)
    v = verify_edge3(k4(), bad)
    assert not v and v.reason == "phi"


def test_empty_certificate_rejected():
    assert not verify_edge3(k4(), None)
    assert not verify_edge3(k4(), Edge3Certificate(WheelMapping((), ()), None))


def test_inner_certificate_is_checked():
    res = certify_edge3(k4())
    inner = res.inner
    paths = list(inner.paths)
    paths[0], paths[1] = paths[1], paths[0]
    bad = Edge3Certificate(res.phi, type(inner)(inner.n, inner.m, inner.s3, paths))
    gp, _ = wheel_reduce(k4())
    assert bool(verify_edge3(k4(), bad)) == bool(verify_certificate(gp, bad.inner))


def test_negative_file_roundtrip():
    w = EdgeCutWitness(((0, 4), (1, 5)))
    assert format_edge3(w) == "tricert 1 edge3-negative\nwitness edgecut 1-5 2-6\n"
    assert parse_edge3(format_edge3(w)) == w


def _joined(seed):
    rng = rng_for(seed, 11)
    a = gen_random_3connected(int(rng.integers(0, 3)), seed, 12)
    b = gen_random_3connected(int(rng.integers(0, 3)), seed, 13)
    k = 1 + seed % 3
    us = rng.choice(a.n, k, replace=False)
    vs = rng.choice(b.n, k, replace=True)
    edges = list(a.edges) + [(u + a.n, v + a.n) for u, v in b.edges]
    edges += [(int(u), int(v) + a.n) for u, v in zip(us, vs)]
    return Graph.from_edges(a.n + b.n, edges)


def edge_corpus():
    out = [g for g in corpus() if g.n <= 9]
    out += [_joined(s) for s in range(60)]
    out += [g for s in range(60) for g in [gen_erdos_renyi_min3(8, 0.4, s, 21)] if g is not None]
    return out


def test_oracle_equivalence_small():
    negatives = 0
    for g in edge_corpus():
        truth, _ = brute_edge_3conn(g)
        res = certify_edge3(g)
        assert isinstance(res, Edge3Certificate) == truth
        if truth:
            assert verify_edge3(g, res)
        else:
            negatives += 1
            assert verify_edge_cut(g, res)
            ids = [g.edge_index()[tuple(sorted(e))] for e in res.edges]
            assert count_components(g, removed_edges=ids) > 1
    assert negatives >= 30
