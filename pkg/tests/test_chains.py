import collections

from tricert.chains import T1, T2A, T2B, T3A, T3B, classify, decompose
from tricert.dfs import run_dfs
from tricert.graph_core import NegativeWitness, precheck
from tricert.oracle import gen_random_3connected

from _support import corpus, glued_k4, k4, wheel


def chains_of(g, root=0):
    d = decompose(g, run_dfs(g, root))
    assert not isinstance(d, NegativeWitness)
    return classify(d)


def test_k4_decomposition():
    d = chains_of(k4())
    assert (d.r, d.x) == (0, 2)
    assert [c.vertices for c in d.chains] == [[2, 1, 0], [0, 2], [0, 3, 2], [1, 3]]
    assert [c.type for c in d.chains[1:]] == [T1, T1, T3A]
    assert [c.parent for c in d.chains] == [-1, 0, 0, 2]


def test_chain_count_identity_on_corpus():
    for g in corpus():
        if precheck(g) is not None:
            continue
        f = run_dfs(g, 0)
        d = decompose(g, f)
        if isinstance(d, NegativeWitness):
            continue
        assert len(d.chains) == g.m - g.n + 2
        # every edge lies in exactly one chain
        assert all(c >= 0 for c in d.edge_chain)


def test_eighteen_chains_at_n18_m34():
    g = next(h for h in (gen_random_3connected(14, s) for s in range(500)) if (h.n, h.m) == (18, 34))
    assert len(chains_of(g).chains) == 18


def test_glued_k4_decomposes():
    d = chains_of(glued_k4())
    assert len(d.chains) == 11 - 6 + 2


def test_wheel_has_type2_and_caterpillar():
    d = chains_of(wheel(5))
    types = [c.type for c in d.chains[1:]]
    assert T2B in types and T3B in types
    assert d.caterpillars == {5: d.caterpillars[5]}
    assert d.caterpillars[5].members == [5, 4, 3]
    assert d.caterpillars[5].parent == 2


def test_all_five_types_occur_in_corpus():
    seen = collections.Counter()
    for g in corpus():
        if precheck(g) is None:
            d = decompose(g, run_dfs(g, 0))
            if not isinstance(d, NegativeWitness):
                seen.update(c.type for c in classify(d).chains[1:])
    assert {T1, T2A, T2B, T3A, T3B} <= set(seen)


def test_type1_when_parent_is_c0():
    d = chains_of(k4())
    c1 = d.chains[1]
    assert c1.parent == 0 and c1.type == T1


def test_caterpillar_members_are_marked_2b():
    for g in corpus()[:300]:
        if precheck(g) is not None:
            continue
        d = decompose(g, run_dfs(g, 0))
        if isinstance(d, NegativeWitness):
            continue
        classify(d)
        for cid, cat in d.caterpillars.items():
            assert d.chains[cid].type == T3B and cat.members[0] == cid
            assert len(cat.members) >= 2
            assert all(d.chains[c].type == T2B for c in cat.members[1:])
            assert all(d.chains[c].caterpillar == cid for c in cat.members)
