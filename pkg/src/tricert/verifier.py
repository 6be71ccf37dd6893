"""Independent O(m) certificate check by reverse removal.

The certificate's paths are removed last-to-first from a multigraph copy of
G. Each removed path must be a single edge of the current smoothed graph,
and the two constant-time tests below decide whether it was a BG-path at
its step. After the last removal the remainder must be two vertices joined
by the three S3 chains.

This module imports nothing from the construction engine.
"""
from __future__ import annotations

import dataclasses
from typing import Optional

from .graph_core import Graph

PARTITION = "partition"
PATH_IN_G = "path-in-G"
LENGTH = "length"
COND1 = "cond1"
COND2 = "cond2"
COND3 = "cond3"
FINAL_SHAPE = "final-shape"


@dataclasses.dataclass(frozen=True)
class Verdict:
    ok: bool
    step: Optional[int] = None  # 0-based path index, None for whole-certificate checks
    reason: Optional[str] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "accept"
        where = "certificate" if self.step is None else f"step {self.step}"
        return f"reject {where} {self.reason}" + (f": {self.detail}" if self.detail else "")


ACCEPT = Verdict(True)


class Reducer:
    """Multigraph H obtained from G by removals and smoothing.

    Every edge of H is a run of G-edges; a union-find over EdgeIds maps a
    G-edge to the H-edge that currently contains it.
    """

    def __init__(self, g: Graph):
        self.g = g
        m = g.m
        self.uf = list(range(m))
        self.usize = [1] * m
        self.hend = [tuple(e) for e in g.edges]
        self.hlen = [1] * m
        self.inc = [set() for _ in range(g.n)]  # vertex -> H-edge roots
        self.nbr = [dict() for _ in range(g.n)]  # vertex -> neighbour -> multiplicity
        for e, (a, b) in enumerate(g.edges):
            self.inc[a].add(e)
            self.inc[b].add(e)
            self.nbr[a][b] = self.nbr[a].get(b, 0) + 1
            self.nbr[b][a] = self.nbr[b].get(a, 0) + 1
        self.alive = bytearray([1]) * g.n
        self.n_alive = g.n
        self.n_real = sum(1 for v in range(g.n) if len(self.inc[v]) >= 3)
        self.touches = 0

    def find(self, e: int) -> int:
        uf = self.uf
        root = e
        while uf[root] != root:
            root = uf[root]
            self.touches += 1
        while uf[e] != root:
            uf[e], e = root, uf[e]
        return root

    def degree(self, v: int) -> int:
        return len(self.inc[v])

    def _drop_incidence(self, v: int, h: int, w: int) -> None:
        before = len(self.inc[v])
        self.inc[v].discard(h)
        c = self.nbr[v][w] - 1
        if c:
            self.nbr[v][w] = c
        else:
            del self.nbr[v][w]
        if before >= 3 > len(self.inc[v]):
            self.n_real -= 1

    def _add_incidence(self, v: int, h: int, w: int) -> None:
        before = len(self.inc[v])
        self.inc[v].add(h)
        self.nbr[v][w] = self.nbr[v].get(w, 0) + 1
        if before < 3 <= len(self.inc[v]):
            self.n_real += 1

    def delete(self, h: int) -> None:
        a, b = self.hend[h]
        self._drop_incidence(a, h, b)
        self._drop_incidence(b, h, a)
        self.touches += 1

    def can_smooth(self, v: int) -> bool:
        if len(self.inc[v]) != 2:
            return False
        h1, h2 = self.inc[v]
        u = self._other(h1, v)
        w = self._other(h2, v)
        return u != w

    def _other(self, h: int, v: int) -> int:
        a, b = self.hend[h]
        return b if a == v else a

    def smooth(self, v: int) -> None:
        h1, h2 = self.inc[v]
        u, w = self._other(h1, v), self._other(h2, v)
        self._drop_incidence(u, h1, v)
        self._drop_incidence(w, h2, v)
        self.inc[v].clear()
        self.nbr[v].clear()
        if self.usize[h1] < self.usize[h2]:
            h1, h2 = h2, h1
        self.uf[h2] = h1
        self.usize[h1] += self.usize[h2]
        self.hlen[h1] += self.hlen[h2]
        self.hend[h1] = (u, w)
        self._add_incidence(u, h1, w)
        self._add_incidence(w, h1, u)
        self.alive[v] = 0
        self.n_alive -= 1
        self.touches += 1


def _path_edges(g: Graph, index: dict, vs) -> Optional[list]:
    if len(vs) < 2 or len(set(vs)) != len(vs):
        return None
    out = []
    for a, b in zip(vs, vs[1:]):
        if not (0 <= a < g.n and 0 <= b < g.n):
            return None
        e = index.get((a, b) if a < b else (b, a))
        if e is None:
            return None
        out.append(e)
    return out


def verify_certificate(g: Graph, cert, observer=None, counter: Optional[dict] = None) -> Verdict:
    """Accept iff ``cert`` is a valid BG-path sequence from its S3 to ``g``.

    ``observer(step, a, b, reducer)`` is called before each deletion and
    ``observer(step, None, None, reducer)`` after the endpoints are smoothed.
    ``counter['touches']`` receives the number of elementary edge touches.
    """
    if cert.n != g.n or cert.m != g.m:
        return Verdict(False, None, PARTITION, "declared size differs from the graph")
    if len(cert.s3) != 3:
        return Verdict(False, None, FINAL_SHAPE, "S3 needs three chains")
    index = g.edge_index()
    owner = [None] * g.m  # -1..-3 for S3 chains, path index otherwise
    touches = 0
    s3_edges = []
    for k, chain in enumerate(cert.s3):
        edges = _path_edges(g, index, list(chain))
        if edges is None:
            return Verdict(False, None, PATH_IN_G, f"S3 chain {k}")
        for e in edges:
            touches += 1
            if owner[e] is not None:
                return Verdict(False, None, PARTITION, f"edge {e} used twice")
            owner[e] = -1 - k
        s3_edges.append(edges)
    path_edges = []
    for i, p in enumerate(cert.paths):
        edges = _path_edges(g, index, list(p.vertices))
        if edges is None:
            return Verdict(False, i, PATH_IN_G)
        for e in edges:
            touches += 1
            if owner[e] is not None:
                return Verdict(False, i, PARTITION, f"edge {e} used twice")
            owner[e] = i
        path_edges.append(edges)
    if any(o is None for o in owner):
        return Verdict(False, None, PARTITION, "edges not covered")

    red = Reducer(g)
    for i in range(len(cert.paths) - 1, -1, -1):
        vs = cert.paths[i].vertices
        a, b = vs[0], vs[-1]
        if not (red.alive[a] and red.alive[b]):
            return _done(Verdict(False, i, COND1, "endpoint not in the subdivision"), red, touches, counter)
        edges = path_edges[i]
        h = red.find(edges[0])
        for e in edges[1:]:
            if red.find(e) != h:
                return _done(Verdict(False, i, LENGTH, "inner vertex carries later paths"), red, touches, counter)
        if red.hlen[h] != len(edges) or set(red.hend[h]) != {a, b}:
            return _done(Verdict(False, i, LENGTH, "path is not a whole link"), red, touches, counter)
        if observer is not None:
            observer(i, a, b, red)
        red.delete(h)
        da, db = red.degree(a), red.degree(b)
        if da <= 1 or db <= 1:
            return _done(Verdict(False, i, COND1, "endpoint not in the subdivision"), red, touches, counter)
        if b in red.nbr[a] and min(da, db) == 2:
            return _done(Verdict(False, i, COND2), red, touches, counter)
        if da == 2 and db == 2 and red.n_real >= 4 and red.nbr[a].keys() == red.nbr[b].keys():
            return _done(Verdict(False, i, COND3), red, touches, counter)
        for v in (a, b):
            if red.degree(v) == 2:
                if not red.can_smooth(v):
                    return _done(Verdict(False, i, COND2, "smoothing would form a loop"), red, touches, counter)
                red.smooth(v)
        if observer is not None:
            observer(i, None, None, red)

    verdict = ACCEPT
    ends = set()
    roots = set()
    for k, edges in enumerate(s3_edges):
        h = red.find(edges[0])
        if any(red.find(e) != h for e in edges) or red.hlen[h] != len(edges):
            verdict = Verdict(False, None, FINAL_SHAPE, f"S3 chain {k} is not one edge")
            break
        roots.add(h)
        ends.add(frozenset(red.hend[h]))
    if verdict and (len(roots) != 3 or len(ends) != 1 or red.n_alive != 2 or len(next(iter(ends))) != 2):
        verdict = Verdict(False, None, FINAL_SHAPE, "remainder is not two vertices joined by three edges")
    return _done(verdict, red, touches, counter)


def _done(v: Verdict, red: Reducer, touches: int, counter: Optional[dict]) -> Verdict:
    if counter is not None:
        counter["touches"] = touches + red.touches
    return v
