import pytest

from tricert.certificate import BgPath, ConstructionCertificate
from tricert.construction import certify
from tricert.oracle import brute_vertex_3conn
from tricert.transforms import (
    ADD,
    SUB1,
    SUB2,
    CertificateRejected,
    format_edge_ops,
    format_removals,
    kind_counts,
    simplify_certificate,
    to_edge_representation,
    to_removal_sequence,
)
from tricert.verifier import verify_certificate

from _support import corpus, k4, k5


def positives(limit=None):
    out = [(g, c) for g in corpus() for c in [certify(g)] if isinstance(c, ConstructionCertificate)]
    return out[:limit]


def test_k4_base_path_is_sub2():
    ops = to_edge_representation(k4(), certify(k4()), include_base=True)
    assert [(o.kind, o.path) for o in ops] == [(SUB2, (1, 3))]
    assert [e.link for e in ops[0].ends] == [(2, 0), (0, 2)]


def test_k4_has_no_operations_above_k4():
    assert to_edge_representation(k4(), certify(k4())) == []
    assert to_removal_sequence(k4(), certify(k4())) == []


def test_k5_kind_bookkeeping():
    g = k5()
    ops = to_edge_representation(g, certify(g))
    a, b, c = kind_counts(ops)
    assert len(ops) == g.m - g.n - 2 == 3
    assert b + 2 * c == g.n - 4
    assert a + 2 * b + 3 * c == g.m - 6


def test_add_between_real_vertices():
    ops = to_edge_representation(k5(), certify(k5()))
    for o in ops:
        if o.kind == ADD:
            assert all(e.real for e in o.ends)


def test_k5_removals():
    inter = []
    steps = to_removal_sequence(k5(), certify(k5()), intermediates=inter)
    assert len(steps) == 3 and all(s.ok for s in steps)
    assert len(inter) == 4
    assert len(inter[-1].vertices) == 4 and len(inter[-1].edges) == 6
    for h in inter:
        assert not h.has_parallel
        assert brute_vertex_3conn(h.simple())[0]


def test_tampered_certificate_refused():
    c = certify(k5())
    seqs = c.sequences()
    seqs[1], seqs[2] = seqs[2], seqs[1]
    bad = ConstructionCertificate(c.n, c.m, c.s3, [BgPath(i, tuple(s)) for i, s in enumerate(seqs)])
    with pytest.raises(CertificateRejected):
        to_removal_sequence(k5(), bad)
    with pytest.raises(CertificateRejected):
        to_edge_representation(k5(), bad)


def test_counts_on_corpus():
    for g, c in positives():
        ops = to_edge_representation(g, c)
        assert len(ops) == g.m - g.n - 2
        a, b, cc = kind_counts(ops)
        assert b + 2 * cc == g.n - 4
        assert a + 2 * b + 3 * cc == g.m - 6


def test_simplified_sequence_is_valid_and_simple():
    for g, c in positives(300):
        s = simplify_certificate(c)
        assert verify_certificate(g, s)
        assert len(s.paths) == len(c.paths)
        inter = []
        to_removal_sequence(g, s, intermediates=inter, simple=False)
        assert not any(h.has_parallel for h in inter)


def test_removal_side_conditions_on_corpus():
    for g, c in positives(250):
        inter = []
        steps = to_removal_sequence(g, c, intermediates=inter)
        assert all(s.ok for s in steps)
        assert all(not h.has_parallel for h in inter)
        assert all(brute_vertex_3conn(h.simple())[0] for h in inter)


def test_text_formats():
    c = certify(k5())
    ops = format_edge_ops(to_edge_representation(k5(), c))
    assert ops.splitlines()[0].startswith("op 1 kind=")
    rm = format_removals(to_removal_sequence(k5(), c))
    assert all(line.startswith("rm ") for line in rm.splitlines())
    assert {SUB1, ADD} >= {o.kind for o in to_edge_representation(k5(), c)}


def test_raw_engine_order_can_have_parallel_intermediates():
    # the reordering is needed: some raw engine sequences pass through multigraphs
    raw = 0
    for g, c in positives():
        inter = []
        to_removal_sequence(g, c, intermediates=inter, simple=False)
        raw += any(h.has_parallel for h in inter)
    assert raw > 0
