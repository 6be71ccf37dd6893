"""Edge representation and removal sequence derived from a path certificate."""
from __future__ import annotations

import bisect
import dataclasses
from typing import Optional

from .certificate import BgPath, ConstructionCertificate
from .graph_core import Graph, InternalCheckError
from .verifier import Reducer, verify_certificate

ADD, SUB1, SUB2 = "add", "sub1", "sub2"


class CertificateRejected(ValueError):
    """The certificate failed verification, so no transform is defined for it."""


@dataclasses.dataclass(frozen=True)
class Endpoint:
    vertex: int
    link: Optional[tuple] = None  # real ends of the link holding ``vertex`` inside, if any

    @property
    def real(self) -> bool:
        return self.link is None


@dataclasses.dataclass(frozen=True)
class BgOperation:
    step: int
    kind: str
    path: tuple
    ends: tuple  # two Endpoint


@dataclasses.dataclass(frozen=True)
class RemovalStep:
    step: int
    path: tuple
    n_x: int
    n_y: int
    n_union: int

    @property
    def ok(self) -> bool:
        return self.n_x >= 3 and self.n_y >= 3 and self.n_union >= 5


def _require_accept(g: Graph, cert) -> None:
    verdict = verify_certificate(g, cert)
    if not verdict:
        raise CertificateRejected(str(verdict))


class _Replay:
    """Forward replay of a path sequence tracking links between real vertices."""

    def __init__(self, n: int, seqs: list):
        self.deg = [0] * n
        self.owner = [-1] * n
        self.where = [0] * n
        self.seqs: list = []
        self.reals: list = []
        self.links: dict = {}  # frozenset(ends) -> list of (path id, lo index, hi index)
        for vs in seqs:
            self.lay(vs)

    def link_ends(self, v: int) -> tuple:
        """Row slot and end indices of the link holding the non-real ``v``."""
        pid = self.owner[v]
        row = self.reals[pid]
        k = bisect.bisect_left(row, self.where[v])
        return pid, k, row[k - 1], row[k]

    def _move_link(self, pid, lo, hi, add):
        seq = self.seqs[pid]
        key = frozenset((seq[lo], seq[hi]))
        if add:
            self.links.setdefault(key, []).append((pid, lo, hi))
        else:
            lst = self.links[key]
            lst.remove((pid, lo, hi))
            if not lst:
                del self.links[key]

    def lay(self, vs) -> list:
        """Add a path; returns the endpoint roles as Endpoint objects."""
        ends = []
        for v in (vs[0], vs[-1]):
            if self.deg[v] >= 3 or self.owner[v] < 0:
                ends.append(Endpoint(v))
                continue
            pid, k, lo, hi = self.link_ends(v)
            seq = self.seqs[pid]
            ends.append(Endpoint(v, (seq[lo], seq[hi])))
            self._move_link(pid, lo, hi, False)
            self._move_link(pid, lo, self.where[v], True)
            self._move_link(pid, self.where[v], hi, True)
            self.reals[pid].insert(k, self.where[v])
        pid = len(self.seqs)
        self.seqs.append(list(vs))
        for j, v in enumerate(vs[1:-1], start=1):
            self.owner[v] = pid
            self.where[v] = j
            self.deg[v] = 2
        self.deg[vs[0]] += 1
        self.deg[vs[-1]] += 1
        self.reals.append([0, len(vs) - 1])
        self._move_link(pid, 0, len(vs) - 1, True)
        return ends

    def is_parallel_add(self, vs) -> bool:
        x, y = vs[0], vs[-1]
        return self.deg[x] >= 3 and self.deg[y] >= 3 and frozenset((x, y)) in self.links


def simplify_certificate(cert, max_rounds: Optional[int] = None) -> ConstructionCertificate:
    """Reorder a path sequence so that no intermediate graph has parallel edges.

    A path that joins two real vertices already joined by a link L is
    deferred until just after the first later path that subdivides L or the
    path itself. If that later path subdivides the deferred path, the two
    parallel links trade places first (the earlier owner of L takes the
    deferred path's vertices instead), which leaves every prefix valid.
    """
    s3 = [list(c) for c in cert.s3]
    paths = [list(p.vertices) for p in cert.paths]
    n = cert.n
    rounds = 0
    limit = max_rounds if max_rounds is not None else 4 * (len(paths) + 1) ** 2
    start = 0
    while True:
        rp = _Replay(n, s3 + paths[:start])
        hit = None
        for l in range(start, len(paths)):
            if rp.is_parallel_add(paths[l]):
                hit = l
                break
            rp.lay(paths[l])
        if hit is None:
            break
        rounds += 1
        if rounds > limit:
            raise InternalCheckError("parallel-edge elimination does not terminate")
        l = hit
        p = paths[l]
        x, y = p[0], p[-1]
        pid, lo, hi = rp.links[frozenset((x, y))][0]
        owner_seq = rp.seqs[pid]
        link = owner_seq[lo:hi + 1]
        inner_p = set(p[1:-1])
        inner_l = set(link[1:-1])
        j = next((t for t in range(l + 1, len(paths))
                  if {paths[t][0], paths[t][-1]} & (inner_p | inner_l)), None)
        if j is None:
            raise InternalCheckError("parallel links never subdivided; graph has a degree-2 vertex")
        hits = {paths[j][0], paths[j][-1]}
        deferred = p
        if hits & inner_p:
            # P is subdivided first: P takes L's place inside its owner, L is deferred
            repl = p if p[0] == link[0] else p[::-1]
            new_owner = owner_seq[:lo] + repl + owner_seq[hi + 1:]
            if pid < 3:
                s3[pid] = new_owner
            else:
                paths[pid - 3] = new_owner
            deferred = link if link[0] == x else link[::-1]
        del paths[l]
        paths.insert(j, deferred)
        start = min(l, pid - 3) if pid >= 3 else 0
    out = [BgPath(i, tuple(vs)) for i, vs in enumerate(paths)]
    return ConstructionCertificate(cert.n, cert.m, s3, out)


def to_edge_representation(g: Graph, cert, include_base: bool = False, simple: bool = True) -> list:
    """Classify each path as add / sub1 / sub2 by replaying the certificate forward.

    With ``simple`` the sequence is first reordered by ``simplify_certificate``
    so that every operation acts on a simple graph. The first path turns S3
    into a K4-subdivision and is left out unless ``include_base`` is set, so
    the default list starts at K4.
    """
    cert = _prepare(g, cert, simple)
    rp = _Replay(g.n, [list(c) for c in cert.s3])
    ops = []
    for i, p in enumerate(cert.paths):
        ends = rp.lay(list(p.vertices))
        kind = (ADD, SUB1, SUB2)[sum(1 for e in ends if not e.real)]
        if i > 0 or include_base:
            ops.append(BgOperation(i, kind, tuple(p.vertices), tuple(ends)))
    return ops


def _prepare(g: Graph, cert, simple: bool):
    _require_accept(g, cert)
    if not simple:
        return cert
    out = simplify_certificate(cert)
    verdict = verify_certificate(g, out)
    if not verdict:
        raise InternalCheckError(f"reordered sequence rejected: {verdict}")
    return out


def kind_counts(ops: list) -> tuple:
    a = sum(1 for o in ops if o.kind == ADD)
    b = sum(1 for o in ops if o.kind == SUB1)
    c = sum(1 for o in ops if o.kind == SUB2)
    return a, b, c


@dataclasses.dataclass
class Intermediate:
    """A smoothed abstract graph: vertices of G that are still branch vertices, edges with multiplicity."""

    vertices: tuple
    edges: tuple  # (u, v) pairs, parallel edges repeated

    def simple(self) -> Graph:
        index = {v: i for i, v in enumerate(self.vertices)}
        pairs = {(min(index[u], index[v]), max(index[u], index[v])) for u, v in self.edges}
        return Graph.from_edges(len(self.vertices), sorted(pairs))

    @property
    def has_parallel(self) -> bool:
        keys = [frozenset(e) for e in self.edges]
        return len(keys) != len(set(keys))


def _snapshot(red: Reducer) -> Intermediate:
    verts = tuple(v for v in range(red.g.n) if red.alive[v])
    edges = []
    for v in verts:
        for h in red.inc[v]:
            a, b = red.hend[h]
            if a == v:
                edges.append((a, b))
    return Intermediate(verts, tuple(edges))


def to_removal_sequence(g: Graph, cert, intermediates: Optional[list] = None, simple: bool = True) -> list:
    """Removals from G down to K4, each annotated with |N(x)|, |N(y)| and |N(x) ∪ N(y)|.

    Neighbourhoods are taken in the smoothed abstract graph just before the
    removal. If ``intermediates`` is a list, it receives G itself followed by
    the graph after every removal (the last one is K4). ``simple`` works as
    in ``to_edge_representation``.
    """
    cert = _prepare(g, cert, simple)
    steps = []
    if intermediates is not None:
        intermediates.append(_snapshot(Reducer(g)))

    def observe(i, a, b, red):
        if i == 0:
            return
        if a is None:
            if intermediates is not None:
                intermediates.append(_snapshot(red))
            return
        na, nb = red.nbr[a].keys(), red.nbr[b].keys()
        union = len(na | nb)
        steps.append(RemovalStep(i, tuple(cert.paths[i].vertices), len(na), len(nb), union))

    verify_certificate(g, cert, observer=observe)
    return steps


def format_edge_ops(ops: list) -> str:
    return "".join(f"op {o.step} kind={o.kind} : {' '.join(str(v + 1) for v in o.path)}\n" for o in ops)


def format_removals(steps: list) -> str:
    return "".join(
        f"rm {s.step} nx={s.n_x} ny={s.n_y} nxy={s.n_union} : {' '.join(str(v + 1) for v in s.path)}\n"
        for s in steps
    )
