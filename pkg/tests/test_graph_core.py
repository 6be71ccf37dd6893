import pytest

from tricert.graph_core import (
    CUT_VERTEX,
    LOW_DEGREE,
    NON_SIMPLE,
    SEPARATION_PAIR,
    TOO_SMALL,
    Graph,
    GraphFormatError,
    NegativeWitness,
    find_nonsimple,
    format_graph,
    parse_graph,
    parse_witness,
    precheck,
    verify_witness,
)

from _support import cycle, glued_k4, k4

K4_TEXT = "p 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n"


def test_parse_k4():
    g = parse_graph(K4_TEXT)
    assert (g.n, g.m) == (4, 6)
    assert sorted(g.neighbors(0)) == [1, 2, 3]


def test_parse_bare_edge_list_and_comments():
    g = parse_graph("c a comment\n1 2\n2 3\n\n3 1\n")
    assert (g.n, g.m) == (3, 3)


def test_self_loop_names_line():
    with pytest.raises(GraphFormatError, match="line 2.*self-loop"):
        parse_graph("p 2 1\ne 1 1\n")


def test_duplicate_edge():
    with pytest.raises(GraphFormatError, match="duplicate edge"):
        parse_graph("p 3 3\ne 1 2\ne 1 2\ne 2 3\n")


@pytest.mark.parametrize("text", ["", "p 3\n", "p 3 1\ne 1 4\n", "p 3 2\ne 1 2\n", "1 2 3\n", "p 2 1\nx 1 2\n"])
def test_malformed(text):
    with pytest.raises(GraphFormatError):
        parse_graph(text)


def test_nonsimple_witness_from_raw_text():
    assert find_nonsimple("p 3 3\ne 1 2\ne 2 1\ne 2 3\n") == NegativeWitness(NON_SIMPLE, (1, 0))
    assert find_nonsimple(K4_TEXT) is None


def test_format_roundtrip():
    g = glued_k4()
    h = parse_graph(format_graph(g, "two K4s"))
    assert h == g


def test_precheck_examples():
    w = precheck(cycle(4))
    assert w.kind == LOW_DEGREE and verify_witness(cycle(4), w)
    assert precheck(k4()) is None
    g = Graph.from_edges(5, k4().edges)
    assert precheck(g) == NegativeWitness(LOW_DEGREE, (4,))
    assert precheck(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])).kind == TOO_SMALL


def test_verify_witness_examples():
    assert verify_witness(glued_k4(), NegativeWitness(SEPARATION_PAIR, (2, 3)))
    assert not verify_witness(k4(), NegativeWitness(SEPARATION_PAIR, (0, 1)))
    assert verify_witness(cycle(4), NegativeWitness(LOW_DEGREE, (0,)))
    assert not verify_witness(k4(), NegativeWitness(CUT_VERTEX, (0,)))
    assert not verify_witness(k4(), NegativeWitness(TOO_SMALL))


def test_witness_text_roundtrip():
    w = NegativeWitness(SEPARATION_PAIR, (2, 3))
    assert str(w) == "witness separationpair 3 4"
    assert parse_witness(str(w)) == w
    with pytest.raises(ValueError):
        NegativeWitness(SEPARATION_PAIR, (1,))
