"""Certifying 3-edge-connectivity through the wheel reduction.

Every vertex v of degree d becomes a wheel: a hub joined by spokes to d rim
vertices that form a cycle. Rim vertex i of v stands for the i-th edge in
v's adjacency list, and each original edge joins the two rim vertices that
stand for it. G is 3-edge-connected iff the expanded graph G' is
3-vertex-connected, so the vertex engine and verifier do the real work.
"""
from __future__ import annotations

import dataclasses
import itertools
from typing import Optional, Union

from .certificate import ConstructionCertificate, format_certificate, parse_certificate
from .construction import certify
from .graph_core import Graph, GraphFormatError, InternalCheckError, NegativeWitness, count_components
from .verifier import Verdict, verify_certificate

PHI = "phi"
EDGE3_HEADER = "tricert 1 edge3"


@dataclasses.dataclass(frozen=True)
class WheelMapping:
    hub: tuple  # v -> hub id in G'
    rim: tuple  # v -> rim ids, aligned with g.adjacency[v]

    def owner_table(self, n_prime: int) -> list:
        """For every G' vertex: (v, -1) for a hub, (v, i) for rim slot i of v."""
        out = [None] * n_prime
        for v, h in enumerate(self.hub):
            out[h] = (v, -1)
            for i, r in enumerate(self.rim[v]):
                out[r] = (v, i)
        return out


@dataclasses.dataclass(frozen=True)
class EdgeCutWitness:
    """At most two edges of G, as (u, v) pairs, whose removal disconnects it."""

    edges: tuple

    def __str__(self) -> str:
        return " ".join(["witness", "edgecut", *(f"{u + 1}-{v + 1}" for u, v in self.edges)])


@dataclasses.dataclass
class Edge3Certificate:
    phi: WheelMapping
    inner: ConstructionCertificate  # certificate for the wheel expansion G'


def default_mapping(g: Graph) -> WheelMapping:
    hub, rim = [], []
    nxt = 0
    for v in range(g.n):
        hub.append(nxt)
        d = g.degree(v)
        rim.append(tuple(range(nxt + 1, nxt + 1 + d)))
        nxt += 1 + d
    return WheelMapping(tuple(hub), tuple(rim))


def expand(g: Graph, phi: WheelMapping) -> list:
    """Edge list of G' for the mapping: spokes, rim cycles, then one edge per original edge."""
    edges = []
    for v in range(g.n):
        h, r = phi.hub[v], phi.rim[v]
        edges.extend((h, x) for x in r)
        d = len(r)
        if d >= 3:
            edges.extend((r[i], r[(i + 1) % d]) for i in range(d))
        elif d == 2:
            edges.append((r[0], r[1]))
    slot = [dict() for _ in range(g.n)]
    for v in range(g.n):
        for i, (_, e) in enumerate(g.adjacency[v]):
            slot[v][e] = i
    for e, (u, v) in enumerate(g.edges):
        edges.append((phi.rim[u][slot[u][e]], phi.rim[v][slot[v][e]]))
    return edges


def wheel_reduce(g: Graph) -> tuple:
    """(G', phi) with |V(G')| = n + 2m and |E(G')| = 5m. Needs minimum degree three."""
    if g.n < 2:
        raise ValueError("wheel reduction needs at least two vertices")
    if g.min_degree() < 3:
        raise ValueError("wheel reduction needs minimum degree three")
    phi = default_mapping(g)
    gp = Graph.from_edges(g.n + 2 * g.m, expand(g, phi))
    return gp, phi


def verify_edge_cut(g: Graph, w: EdgeCutWitness) -> bool:
    if len(w.edges) > 2 or g.n < 2:
        return False
    index = g.edge_index()
    ids = []
    for u, v in w.edges:
        e = index.get((min(u, v), max(u, v)))
        if e is None or e in ids:
            return False
        ids.append(e)
    return count_components(g, removed_edges=ids) > 1


def _low_degree_cut(g: Graph) -> Optional[EdgeCutWitness]:
    for v in range(g.n):
        if g.degree(v) <= 2:
            return EdgeCutWitness(tuple(g.edges[e] for _, e in g.adjacency[v]))
    return None


def map_witness(g: Graph, phi: WheelMapping, n_prime: int, w: NegativeWitness) -> EdgeCutWitness:
    """Translate a G' vertex witness into a verified edge cut of G.

    Candidates are the original edges at the wheels named by the witness:
    a rim vertex's own edge first, then every edge of the wheel's vertex.
    Singles are tried before pairs; the first one that disconnects G wins.
    """
    if count_components(g) > 1:
        return EdgeCutWitness(())
    table = phi.owner_table(n_prime)
    cand = []
    for p in w.vertices:
        v, i = table[p]
        if i >= 0:
            cand.append(g.adjacency[v][i][1])
        cand.extend(e for _, e in g.adjacency[v])
    cand = list(dict.fromkeys(cand))
    for e in cand:
        if count_components(g, removed_edges=(e,)) > 1:
            return EdgeCutWitness((g.edges[e],))
    for e, f in itertools.combinations(cand, 2):
        if count_components(g, removed_edges=(e, f)) > 1:
            return EdgeCutWitness((g.edges[e], g.edges[f]))
    raise InternalCheckError(f"no edge cut of G found for {w}")


def certify_edge3(g: Graph) -> Union[Edge3Certificate, EdgeCutWitness]:
    if g.n < 2:
        raise ValueError("3-edge-connectivity needs at least two vertices")
    low = _low_degree_cut(g)
    if low is not None:
        return low
    gp, phi = wheel_reduce(g)
    res = certify(gp)
    if isinstance(res, NegativeWitness):
        cut = map_witness(g, phi, gp.n, res)
        if not verify_edge_cut(g, cut):
            raise InternalCheckError(f"mapped edge cut does not verify: {cut}")
        return cut
    return Edge3Certificate(phi, res)


def _phi_shape_ok(g: Graph, phi: WheelMapping, n_prime: int) -> bool:
    if len(phi.hub) != g.n or len(phi.rim) != g.n:
        return False
    ids = list(phi.hub)
    for v in range(g.n):
        if len(phi.rim[v]) != g.degree(v):
            return False
        ids.extend(phi.rim[v])
    return len(ids) == n_prime and sorted(ids) == list(range(n_prime))


def _cert_edges(cert: ConstructionCertificate) -> Optional[set]:
    out = set()
    seqs = [list(c) for c in cert.s3] + [list(p.vertices) for p in cert.paths]
    for vs in seqs:
        for a, b in zip(vs, vs[1:]):
            key = (a, b) if a < b else (b, a)
            if key in out:
                return None
            out.add(key)
    return out


def verify_edge3(g: Graph, cert) -> Verdict:
    """Rebuild G' from phi, compare it edge by edge with the embedded certificate, then verify that."""
    if not isinstance(cert, Edge3Certificate) or cert.inner is None:
        return Verdict(False, None, PHI, "no certificate")
    n_prime = g.n + 2 * g.m
    phi = cert.phi
    if not _phi_shape_ok(g, phi, n_prime):
        return Verdict(False, None, PHI, "wheel table does not partition V(G')")
    rebuilt = {(a, b) if a < b else (b, a) for a, b in expand(g, phi)}
    if len(rebuilt) != 5 * g.m or _cert_edges(cert.inner) != rebuilt:
        return Verdict(False, None, PHI, "wheel expansion differs from the certified graph")
    gp = Graph.from_edges(n_prime, expand(g, phi))
    return verify_certificate(gp, cert.inner)


# --- file format ----------------------------------------------------------------

def format_edge3(res) -> str:
    if isinstance(res, EdgeCutWitness):
        return f"{EDGE3_HEADER}-negative\n{res}\n"
    lines = [f"{EDGE3_HEADER}-positive"]
    for v in range(len(res.phi.hub)):
        rim = " ".join(str(r + 1) for r in res.phi.rim[v])
        lines.append(f"phi {v + 1} hub {res.phi.hub[v] + 1} rim {rim}".rstrip())
    return "\n".join(lines) + "\n" + format_certificate(res.inner)


def parse_edge3(text) -> Union[Edge3Certificate, EdgeCutWitness]:
    if isinstance(text, bytes):
        text = text.decode()
    lines = [ln.strip() for ln in text.splitlines()]
    rows = [(i, ln) for i, ln in enumerate(lines, start=1) if ln]
    if not rows:
        raise GraphFormatError("empty certificate")
    lineno, first = rows[0]
    if first == f"{EDGE3_HEADER}-negative":
        if len(rows) != 2:
            raise GraphFormatError("negative certificate needs one witness line", lineno)
        lineno, wl = rows[1]
        tokens = wl.split()
        if tokens[:2] != ["witness", "edgecut"] or len(tokens) > 4:
            raise GraphFormatError("expected 'witness edgecut u-v [u-v]'", lineno)
        try:
            edges = tuple(tuple(int(x) - 1 for x in t.split("-")) for t in tokens[2:])
        except ValueError:
            raise GraphFormatError("bad edge token", lineno) from None
        if any(len(e) != 2 for e in edges):
            raise GraphFormatError("bad edge token", lineno)
        return EdgeCutWitness(edges)
    if first != f"{EDGE3_HEADER}-positive":
        raise GraphFormatError(f"unknown certificate header {first!r}", lineno)
    hub, rim = [], []
    k = 1
    while k < len(rows) and rows[k][1].startswith("phi "):
        lineno, line = rows[k]
        tokens = line.split()
        try:
            v = int(tokens[1]) - 1
            if tokens[2] != "hub" or tokens[4] != "rim" or v != len(hub):
                raise ValueError
            hub.append(int(tokens[3]) - 1)
            rim.append(tuple(int(t) - 1 for t in tokens[5:]))
        except (ValueError, IndexError):
            raise GraphFormatError("expected 'phi <v> hub <h> rim <r1> ...' in vertex order", lineno) from None
        k += 1
    inner = parse_certificate("\n".join(ln for _, ln in rows[k:]))
    if not isinstance(inner, ConstructionCertificate):
        raise GraphFormatError("embedded certificate must be positive")
    return Edge3Certificate(WheelMapping(tuple(hub), tuple(rim)), inner)
