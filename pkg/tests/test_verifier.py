from tricert.certificate import BgPath, ConstructionCertificate, format_certificate, parse_certificate
from tricert.construction import certify
from tricert.oracle import naive_check_certificate, rng_for
from tricert.verifier import COND1, COND2, COND3, FINAL_SHAPE, LENGTH, PARTITION, PATH_IN_G, verify_certificate

from _support import corpus, k4, k5, wheel


def with_paths(cert, seqs):
    return ConstructionCertificate(cert.n, cert.m, cert.s3, [BgPath(i, tuple(s)) for i, s in enumerate(seqs)])


def positives(limit=None):
    out = []
    for g in corpus():
        c = certify(g)
        if isinstance(c, ConstructionCertificate):
            out.append((g, c))
    return out[:limit]


def test_k5_accept():
    assert verify_certificate(k5(), certify(k5()))


def test_swapped_dependent_paths_rejected():
    c = certify(k5())
    seqs = c.sequences()
    assert seqs[2][-1] in seqs[1][1:-1]
    seqs[1], seqs[2] = seqs[2], seqs[1]
    v = verify_certificate(k5(), with_paths(c, seqs))
    assert not v and v.step == 2 and v.reason == LENGTH


def test_not_a_path_in_g():
    g = wheel(5)
    c = certify(g)
    seqs = c.sequences()
    seqs[0] = [1, 3]
    v = verify_certificate(g, with_paths(c, seqs))
    assert (v.ok, v.step, v.reason) == (False, 0, PATH_IN_G)


def test_edge_reused():
    c = certify(k5())
    seqs = c.sequences()
    seqs[1] = [1, 2, 3]
    assert verify_certificate(k5(), with_paths(c, seqs)).reason == PARTITION


def test_uncovered_edge():
    c = certify(k5())
    v = verify_certificate(k5(), with_paths(c, c.sequences()[:-1]))
    assert (v.ok, v.step, v.reason) == (False, None, PARTITION)


def test_wrong_declared_size():
    c = certify(k4())
    assert verify_certificate(k5(), c).reason == PARTITION


def test_bad_s3_shape():
    c = certify(k4())
    bad = ConstructionCertificate(4, 6, [[2, 1, 0], [0, 2]], c.paths)
    assert verify_certificate(k4(), bad).reason == FINAL_SHAPE


def test_verdict_text():
    c = certify(k5())
    seqs = c.sequences()
    seqs[1], seqs[2] = seqs[2], seqs[1]
    assert str(verify_certificate(k5(), with_paths(c, seqs))).startswith("reject step 2 length")
    assert str(verify_certificate(k5(), c)) == "accept"


def test_cond3_parallel_links():
    # K4 on 0..3 whose edge 0-1 is doubled into links 0-4-1 and 0-5-1; the last
    # path joins the inner vertices of those parallel links while 4 vertices are real
    from tricert.graph_core import Graph

    g = Graph.from_edges(6, [(0, 2), (2, 1), (0, 4), (4, 1), (0, 5), (5, 1), (2, 3), (3, 1), (3, 0), (4, 5)])
    s3 = [[0, 4, 1], [0, 5, 1], [0, 2, 1]]
    cert = ConstructionCertificate(6, 10, s3, [BgPath(0, (2, 3, 1)), BgPath(1, (3, 0)), BgPath(2, (4, 5))])
    v = verify_certificate(g, cert)
    assert (v.ok, v.step, v.reason) == (False, 2, COND3)
    assert not naive_check_certificate(g, cert)
    # the same path is fine while only three vertices are real
    early = ConstructionCertificate(6, 10, s3, [BgPath(0, (2, 3, 1)), BgPath(1, (4, 5)), BgPath(2, (3, 0))])
    assert naive_check_certificate(g, early) == bool(verify_certificate(g, early))


def test_cond2_add_beside_own_link():
    # K4 plus vertex 4 on edge 0-3; path 4-3 would duplicate the link 4..3
    from tricert.graph_core import Graph

    g = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 4), (4, 3), (1, 3), (2, 3), (4, 2)])
    s3 = [[0, 1], [0, 2, 1], [0, 4, 3, 1]]
    cert = ConstructionCertificate(5, 8, s3, [BgPath(0, (3, 2)), BgPath(1, (4, 2))])
    assert naive_check_certificate(g, cert) == bool(verify_certificate(g, cert))


def test_touch_counter_linear():
    worst = 0.0
    for g, c in positives(200):
        counter = {}
        assert verify_certificate(g, c, counter=counter)
        worst = max(worst, counter["touches"] / g.m)
    assert worst <= 8


def test_file_roundtrip_accepts():
    for g, c in positives(50):
        assert verify_certificate(g, parse_certificate(format_certificate(c)))


# --- mutation suite ------------------------------------------------------------

def mutations(cert, rng):
    """Yield (name, mutated sequences) for the defined mutation kinds."""
    seqs = cert.sequences()
    k = len(seqs)
    n = cert.n
    i = int(rng.integers(k))
    yield "drop", seqs[:i] + seqs[i + 1:]
    yield "duplicate", seqs[: i + 1] + [list(seqs[i])] + seqs[i + 1:]
    if k >= 2:
        j = int(rng.integers(k - 1))
        s = [list(x) for x in seqs]
        s[j], s[j + 1] = s[j + 1], s[j]
        yield "swap", s
    s = [list(x) for x in seqs]
    p = s[i]
    at = int(rng.integers(len(p)))
    p[at] = int(rng.integers(n))
    yield "splice", s
    s = [list(x) for x in seqs]
    if len(s[i]) > 2:
        s[i] = s[i][:-1]
    else:
        s[i] = s[i][:1]
    yield "truncate", s


def mutation_cases():
    cases = []
    for idx, (g, c) in enumerate(positives()):
        if not c.paths:
            continue
        rng = rng_for(idx, 77)
        for name, seqs in mutations(c, rng):
            cases.append((g, c, name, seqs))
    return cases


def test_mutation_suite():
    cases = mutation_cases()
    assert len(cases) >= 500
    outcomes = {}
    for g, c, name, seqs in cases:
        mut = with_paths(c, seqs)
        expected = naive_check_certificate(g, mut)
        got = bool(verify_certificate(g, mut))
        assert got == expected, (name, seqs)
        outcomes.setdefault(name, set()).add(got)
    # these always change the edge partition
    for name in ("drop", "duplicate", "truncate"):
        assert outcomes[name] == {False}
    # swapping two independent paths keeps a valid sequence, dependent ones do not
    assert outcomes["swap"] == {True, False}
