"""Linear-time construction of a BG-path sequence from the chain decomposition.

The engine keeps the current subdivision upwards-closed and modular between
top-level additions. Each chain is processed once: first the type-3 chains
whose segment does not hang below one of its children, then the remaining
segments in an order derived from overlapping intervals along the chain.
When some segment cannot be reached, its overlap component yields a
separation pair.
"""
from __future__ import annotations

import dataclasses
from typing import Optional, Union

from . import chains as ch
from .certificate import BgPath, ConstructionCertificate
from .chains import ChainDecomposition, classify, decompose
from .dfs import DfsForest, run_dfs
from .graph_core import (
    SEPARATION_PAIR,
    Graph,
    InternalCheckError,
    NegativeWitness,
    precheck,
    require_witness,
    verify_witness,
)

BASE = -1


@dataclasses.dataclass(frozen=True)
class Interval:
    lo: int
    hi: int
    owner: int  # minimal chain of the segment, or BASE


@dataclasses.dataclass
class SegmentView:
    minimal_chain: int
    type3_members: list
    attachments: list  # sorted positions on the processed chain

    @property
    def dependent_path(self) -> tuple:
        return self.attachments[0], self.attachments[-1]


@dataclasses.dataclass
class FailureInfo:
    chain: int
    segments: dict  # minimal chain -> SegmentView, for every phase-(c) segment
    stuck: list  # minimal chains of segments that could not be added
    component: dict  # owner -> component label in the contracted overlap graph


class EngineStuck(Exception):
    """Raised when an addition precondition fails outside the interval logic."""

    def __init__(self, message: str, chain: int = -1):
        super().__init__(message)
        self.chain = chain


class Engine:
    """Mutable subdivision state for one graph. Not shared between threads."""

    def __init__(self, d: ChainDecomposition, observer=None):
        self.d = d
        self.g = d.g
        self.f: DfsForest = d.forest
        n = d.g.n
        self.in_s = bytearray(n)
        self.deg = [0] * n
        self.added = bytearray(len(d.chains))
        self.marker = [-1] * n
        self.paths: list = []
        self.observer = observer
        self.work = {"segment_walk": 0, "real_scan": 0, "intervals": 0}
        self.in_flight = False

    # --- state -----------------------------------------------------------

    def is_real(self, v: int) -> bool:
        return self.deg[v] >= 3

    def real_vertices(self) -> list:
        return [v for v in range(self.g.n) if self.deg[v] >= 3]

    def _add_path(self, vertices, provenance) -> None:
        deg = self.deg
        in_s = self.in_s
        for v in vertices[1:-1]:
            in_s[v] = 1
            deg[v] += 2
        deg[vertices[0]] += 1
        deg[vertices[-1]] += 1
        p = BgPath(len(self.paths), tuple(vertices), provenance)
        if self.observer is not None:
            self.observer.before_path(self, p)
        self.paths.append(p)

    def _checkpoint(self) -> None:
        if self.observer is not None:
            self.observer.checkpoint(self)

    def init_state(self) -> None:
        chains = self.d.chains
        for cid in (0, 1, 2):
            vs = chains[cid].vertices
            for v in vs[1:-1]:
                self.in_s[v] = 1
                self.deg[v] += 2
            self.in_s[vs[0]] = self.in_s[vs[-1]] = 1
            self.deg[vs[0]] += 1
            self.deg[vs[-1]] += 1
            self.added[cid] = 1
        self._checkpoint()

    def has_real_between(self, k: int, p: int, q: int) -> bool:
        """Whether chain ``k`` has a real vertex strictly between positions p and q."""
        if p > q:
            p, q = q, p
        vs = self.d.chains[k].vertices
        deg = self.deg
        for i in range(p + 1, q):
            self.work["real_scan"] += 1
            if deg[vs[i]] >= 3:
                return True
        return False

    # --- single chains and caterpillars --------------------------------------

    def can_add_single(self, cid: int) -> bool:
        d = self.d
        c = d.chains[cid]
        k = c.parent
        if self.added[cid] or not self.added[k]:
            return False
        s, t = c.vertices[0], c.vertices[-1]
        if c.type == ch.T1:
            return self.has_real_between(k, d.position(s, k), d.position(t, k))
        if c.type == ch.T2A:
            return self.is_real(t) or self.has_real_between(k, 0, d.position(t, k))
        if c.type == ch.T3A:
            return bool(self.in_s[s])
        return False

    def add_single(self, cid: int) -> None:
        if not self.can_add_single(cid):
            raise EngineStuck(f"chain {cid} is not a BG-path here", cid)
        self._add_path(self.d.chains[cid].vertices, ("chain", cid))
        self.added[cid] = 1
        self._checkpoint()

    def is_good_caterpillar(self, cat) -> bool:
        d = self.d
        cj = d.chains[cat.members[0]]
        k = cat.parent
        tk = d.chains[k].vertices[-1]
        sj = cj.vertices[0]
        if not self.f.is_ancestor(tk, sj):
            return True
        if d.chains[cat.members[-1]].vertices[-1] == sj:
            # second path would close a cycle on the first; only without 3-connectivity
            return False
        return self.has_real_between(k, 0, d.position(sj, k))

    def decompose_caterpillar(self, cat) -> list:
        """Split a good caterpillar into as many paths as it has chains."""
        d = self.d
        chains = d.chains
        members = cat.members
        if len(members) < 2:
            raise InternalCheckError("caterpillar with fewer than two chains")
        cj = chains[members[0]]
        ch_ = chains[members[1]]
        k = cat.parent
        tk = chains[k].vertices[-1]
        y = chains[members[-1]].vertices[-1]
        sj, tj = cj.vertices[0], cj.vertices[-1]
        parent = self.f.parent

        def tree_up(v):
            out = [v]
            while v != y:
                v = parent[v]
                out.append(v)
            return out

        def prefix(idx):
            c = chains[members[idx]]
            below = chains[members[idx - 1]].vertices[-1]
            return c.vertices[: d.pos[below] + 1]

        if not self.f.is_ancestor(tk, sj):
            # s(Cj) is a proper ancestor of t(Ck)
            first = list(cj.vertices) + tree_up(tj)[1:]
            return [first] + [prefix(i) for i in range(1, len(members))]
        glued = ch_.vertices[: d.pos[tj] + 1] + cj.vertices[-2::-1]
        return [glued, tree_up(tj)] + [prefix(i) for i in range(2, len(members))]

    def add_caterpillar_of(self, cid: int) -> None:
        cat_id = self.d.chains[cid].caterpillar
        if cat_id < 0:
            raise EngineStuck(f"2b chain {cid} outside any caterpillar", cid)
        self.add_caterpillar(cat_id)

    def add_caterpillar(self, cat_id: int) -> None:
        d = self.d
        cat = d.caterpillars[cat_id]
        if not self.added[cat.parent] or any(self.added[c] for c in cat.members):
            raise EngineStuck(f"caterpillar {cat_id} cannot be added here", cat.members[-1])
        sj = d.chains[cat.members[0]].vertices[0]
        if not self.in_s[sj] or not self.is_good_caterpillar(cat):
            raise EngineStuck(f"caterpillar {cat_id} is bad", cat.members[-1])
        self.in_flight = True
        for part, vs in enumerate(self.decompose_caterpillar(cat)):
            self._add_path(vs, ("caterpillar", cat_id, part))
        for c in cat.members:
            self.added[c] = 1
        self.in_flight = False
        self._checkpoint()

    def add_with_ancestors(self, cid: int) -> None:
        """Add ``cid`` after its unadded proper ancestors, top-down."""
        chains = self.d.chains
        stack = []
        c = cid
        while not self.added[c]:
            stack.append(c)
            c = chains[c].parent
        for c in reversed(stack):
            if self.added[c]:
                continue
            chain = chains[c]
            if chain.type in (ch.T2B, ch.T3B):
                self.add_caterpillar_of(c)
            else:
                self.add_single(c)

    # --- segments --------------------------------------------------------

    def find_segment_min(self, cid: int) -> int:
        """Minimal chain of the segment that contains the unadded chain ``cid``."""
        d = self.d
        t = d.chains[cid].vertices[-1]
        if self.in_s[t]:
            return cid
        parent = self.f.parent
        marker = self.marker
        added = self.added
        walked = []
        v = t
        while True:
            self.work["segment_walk"] += 1
            mk = marker[v]
            if mk >= 0 and not added[mk]:
                found = mk
                break
            walked.append(v)
            p = parent[v]
            if self.in_s[p]:
                found = d.inner_chain[v]
                break
            v = p
        for w in walked:
            marker[w] = found
        return found

    def process_chain(self, i: int) -> Optional[FailureInfo]:
        d = self.d
        chains = d.chains
        ci = chains[i]
        added = self.added

        kids = [c for c in d.children[i]
                if not added[c] and chains[c].type in (ch.T1, ch.T2A, ch.T2B)]
        types = []
        for v in ci.vertices:
            lst = d.type3_at[v]
            if lst:
                types.extend(c for c in lst if not added[c])
                d.type3_at[v] = []
        if not kids and not types:
            return None
        types.sort()
        kid_set = set(kids)
        seg_min = {c: self.find_segment_min(c) for c in types}

        # phase (b): segments hanging below something other than a child of Ci
        groups: dict = {}
        for c in types:
            D = seg_min[c]
            if D in kid_set:
                groups.setdefault(D, []).append(c)
            elif not added[c]:
                self.add_with_ancestors(c)

        if not kids:
            return None

        # phase (c)
        pending = []
        for D in sorted(kids):
            cd = chains[D]
            group = groups.get(D, [])
            if cd.type == ch.T2A and not group and self.is_real(cd.vertices[-1]):
                self.add_single(D)
                continue
            pts = {d.position(cd.vertices[0], i), d.position(cd.vertices[-1], i)}
            for c in group:
                s = chains[c].vertices[0]
                if not d.on_chain(s, i):
                    raise EngineStuck(f"attachment of chain {c} off chain {i}", c)
                pts.add(d.position(s, i))
            pending.append(SegmentView(D, group, sorted(pts)))
        if not pending:
            return None
        # a segment spanning all of Ci cannot strictly overlap anything; it
        # is addable as soon as Ci has an inner real vertex
        last = len(ci.vertices) - 1
        whole = {sv.minimal_chain for sv in pending
                 if sv.attachments[0] == 0 and sv.attachments[-1] == last}

        intervals = build_intervals(self, i, pending)
        self.work["intervals"] += len(intervals)
        order, unreachable, component = overlap_order(intervals, whole)
        views = {sv.minimal_chain: sv for sv in pending}
        for D in order:
            self._add_segment(views[D])
        stuck = []
        for D in unreachable:
            cd = chains[D]
            if cd.type == ch.T2A and self.is_real(cd.vertices[-1]):
                self.add_single(D)
            elif cd.type == ch.T2B and cd.caterpillar < 0:
                raise EngineStuck(f"2b chain {D} outside any caterpillar", D)
            else:
                stuck.append(D)
        if stuck:
            return FailureInfo(i, views, stuck, component)
        return None

    def _add_segment(self, sv: SegmentView) -> None:
        chains = self.d.chains
        D = sv.minimal_chain
        if chains[D].type == ch.T2B:
            self.add_caterpillar_of(D)
        else:
            self.add_single(D)
        for c in sv.type3_members:
            if not self.added[c]:
                self.add_with_ancestors(c)

    def certificate(self) -> ConstructionCertificate:
        s3 = [list(self.d.chains[c].vertices) for c in (0, 1, 2)]
        return ConstructionCertificate(self.g.n, self.g.m, s3, list(self.paths))


def build_intervals(eng: Engine, i: int, segments: list) -> list:
    """Intervals of the real vertices of chain ``i`` (owner BASE) and of each segment."""
    vs = eng.d.chains[i].vertices
    deg = eng.deg
    b = [p for p, v in enumerate(vs) if deg[v] >= 3]
    out = base_intervals(b)
    for sv in segments:
        out.extend(segment_intervals(sv.attachments, sv.minimal_chain))
    return out


def base_intervals(b: list) -> list:
    k = len(b)
    out = [Interval(b[0], b[j], BASE) for j in range(1, k - 1)]
    out.extend(Interval(b[j], b[-1], BASE) for j in range(1, k - 1))
    return out


def segment_intervals(a: list, owner: int) -> list:
    k = len(a)
    out = [Interval(a[0], a[j], owner) for j in range(1, k)]
    out.extend(Interval(a[j], a[-1], owner) for j in range(1, k - 1))
    return out


def overlap_forest(intervals: list) -> tuple:
    """Sweep over endpoints; return (union-find parents, overlap edges of a spanning forest).

    Two intervals overlap when each contains exactly one endpoint of the other
    in its interior. Every returned edge joins two overlapping intervals, and
    the edges connect exactly the components of the overlap graph.
    """
    t = len(intervals)
    push = sorted(range(t), key=lambda j: (intervals[j].lo, -intervals[j].hi, j))
    rank = [0] * t
    for r, j in enumerate(push):
        rank[j] = r
    events = []
    for j, iv in enumerate(intervals):
        # at one coordinate: rights (innermost first) before lefts (outermost first)
        events.append((iv.hi, 0, -rank[j], j))
        events.append((iv.lo, 1, rank[j], j))
    events.sort()

    uf = list(range(t))

    def find(a):
        while uf[a] != a:
            uf[a] = uf[uf[a]]
            a = uf[a]
        return a

    open_count = [0] * t
    widest = list(range(t))  # component root -> member with the largest right end
    stack: list = []
    edges = []
    for _, kind, _, j in events:
        if kind == 1:
            open_count[j] = 1
            stack.append(j)
            continue
        c = find(j)
        while stack[-1] != c:
            x = stack.pop()
            edges.append((j, widest[x]))
            uf[x] = c
            open_count[c] += open_count[x]
            if intervals[widest[x]].hi > intervals[widest[c]].hi:
                widest[c] = widest[x]
        open_count[c] -= 1
        if open_count[c] == 0:
            stack.pop()
    return [find(j) for j in range(t)], edges


def overlap_order(intervals: list, linked_to_base=()) -> tuple:
    """Order segments reachable from BASE through overlaps.

    Owners in ``linked_to_base`` count as overlapping BASE whenever BASE has
    an interval. Returns (reachable owners in discovery order, unreachable
    owners, owner -> component label). Ties are broken by smallest interval
    start, then owner id.
    """
    roots, edges = overlap_forest(intervals)
    owner_lo: dict = {}
    for iv in intervals:
        if iv.owner not in owner_lo or iv.lo < owner_lo[iv.owner]:
            owner_lo[iv.owner] = iv.lo
    adj: dict = {o: set() for o in owner_lo}
    for a, b in edges:
        oa, ob = intervals[a].owner, intervals[b].owner
        if oa != ob:
            adj[oa].add(ob)
            adj[ob].add(oa)
    base_link = [o for o in linked_to_base if o in owner_lo] if BASE in owner_lo else []
    for o in base_link:
        adj[BASE].add(o)
        adj[o].add(BASE)

    # owner-level components: intervals of one segment are added together
    label: dict = {}
    comp_uf: dict = {}

    def cfind(a):
        while comp_uf.setdefault(a, a) != a:
            a = comp_uf[a]
        return a

    for j, iv in enumerate(intervals):
        a, b = cfind(("o", iv.owner)), cfind(("r", roots[j]))
        if a != b:
            comp_uf[a] = b
    base = cfind(("o", BASE))
    for o in base_link:
        a = cfind(("o", o))
        if a != base:
            comp_uf[a] = base
    for o in owner_lo:
        label[o] = cfind(("o", o))

    def key(o):
        return (owner_lo[o], o)

    order = []
    seen = {BASE}
    frontier = [BASE] if BASE in owner_lo else []
    head = 0
    while head < len(frontier):
        o = frontier[head]
        head += 1
        for nb in sorted(adj[o], key=key):
            if nb not in seen:
                seen.add(nb)
                frontier.append(nb)
                order.append(nb)
    unreachable = sorted((o for o in owner_lo if o not in seen), key=key)
    return order, unreachable, label


def extract_separation_pair(eng: Engine, failure: FailureInfo) -> NegativeWitness:
    """Span the overlap component of a stuck segment; its extremal attachments separate.

    Components are tried in order of the stuck segments, those whose span is
    not the whole chain first (a span equal to the chain only separates when
    nothing else hangs off the chain's end vertices).
    """
    vs = eng.d.chains[failure.chain].vertices
    last = len(vs) - 1
    spans: dict = {}
    for D, sv in failure.segments.items():
        comp = failure.component.get(D)
        a, b = sv.dependent_path
        lo, hi = spans.get(comp, (a, b))
        spans[comp] = (min(lo, a), max(hi, b))
    order = []
    for D in failure.stuck:
        comp = failure.component[D]
        if comp not in order:
            order.append(comp)
    order.sort(key=lambda c: spans[c] == (0, last))
    for comp in order:
        lo, hi = spans[comp]
        w = NegativeWitness(SEPARATION_PAIR, (vs[lo], vs[hi]))
        if verify_witness(eng.g, w):
            return w
    raise EngineStuck(f"no stuck component of chain {failure.chain} yields a separation pair", failure.stuck[0])


def segment_witness(eng: Engine, cid: int) -> Optional[NegativeWitness]:
    """Separation pair from a segment with two attachments or all of them on one link.

    Explores the segment of the unadded chain ``cid`` through vertices outside
    the subdivision, collects its attachment points, and checks whether they
    fit on a single link. The outermost attachments on that link are tried
    first, then the link's real ends. Linear in the segment and link sizes.
    """
    d = eng.d
    g = eng.g
    in_s = eng.in_s
    added = eng.added
    edge_chain = d.edge_chain
    vs = d.chains[cid].vertices
    attach = {v for v in (vs[0], vs[-1]) if in_s[v]}
    start = [v for v in vs if not in_s[v]]
    seen = set(start)
    stack = list(start)
    while stack:
        v = stack.pop()
        for w, _ in g.adjacency[v]:
            if in_s[w]:
                attach.add(w)
            elif w not in seen:
                seen.add(w)
                stack.append(w)
    if len(attach) < 2:
        return None
    inner = [v for v in attach if not eng.is_real(v)]
    candidates = [tuple(attach)] if len(attach) == 2 else []
    if inner:
        v = inner[0]
        sides = []
        for w, e in g.adjacency[v]:
            if not added[edge_chain[e]]:
                continue
            prev, cur = v, w
            side = [cur]
            while not eng.is_real(cur):
                prev, cur = cur, next(x for x, f in g.adjacency[cur]
                                      if x != prev and added[edge_chain[f]])
                side.append(cur)
            sides.append(side)
        if len(sides) != 2:
            return _first_valid(g, candidates)
        line = sides[0][::-1] + [v] + sides[1]  # the link from one real end to the other
        pos = {u: i for i, u in enumerate(line)}
        if not all(a in pos for a in attach):
            return _first_valid(g, candidates)
        hits = sorted(pos[a] for a in attach)
        candidates.append((line[hits[0]], line[hits[-1]]))
        candidates.append((line[0], line[-1]))
    return _first_valid(g, candidates)


def _first_valid(g: Graph, candidates) -> Optional[NegativeWitness]:
    for pair in candidates:
        if pair[0] == pair[1]:
            continue
        w = NegativeWitness(SEPARATION_PAIR, tuple(sorted(pair)))
        if verify_witness(g, w):
            return w
    return None


def _fallback_witness(g: Graph) -> NegativeWitness:
    """Exhaustive search, used only if the engine stalls outside the interval logic."""
    from .oracle import find_separation_pair

    w = find_separation_pair(g)
    if w is None:
        raise InternalCheckError("engine stalled on a 3-connected graph")
    return require_witness(g, w)


@dataclasses.dataclass
class RunStats:
    work: dict
    fallback: bool = False


def certify(g: Graph, root: int = 0, observer=None, self_verify: bool = True,
            stats: Optional[RunStats] = None) -> Union[ConstructionCertificate, NegativeWitness]:
    """Certificate for 3-connectivity of ``g`` or a verified witness against it."""
    w = precheck(g)
    if w is not None:
        return w
    f = run_dfs(g, root)
    if isinstance(f, NegativeWitness):
        return require_witness(g, f)
    d = decompose(g, f)
    if isinstance(d, NegativeWitness):
        return require_witness(g, d)
    classify(d)
    eng = Engine(d, observer)
    eng.init_state()
    result = None
    try:
        for i in range(len(d.chains)):
            if not eng.added[i]:
                raise EngineStuck(f"chain {i} never added", i)
            failure = eng.process_chain(i)
            if failure is not None:
                result = extract_separation_pair(eng, failure)
                break
    except EngineStuck as stuck:
        result = segment_witness(eng, stuck.chain) if stuck.chain >= 0 else None
        if result is None:
            if stats is not None:
                stats.fallback = True
            result = _fallback_witness(g)
    if stats is not None:
        stats.work = {**d.work, **eng.work}
    if result is not None:
        return result

    cert = eng.certificate()
    if len(cert.paths) != g.m - g.n - 1:
        raise InternalCheckError("certificate length differs from m - n - 1")
    if self_verify:
        from .verifier import verify_certificate

        verdict = verify_certificate(g, cert)
        if not verdict:
            raise InternalCheckError(f"engine certificate rejected: {verdict}")
    return cert


def run_engine(g: Graph, root: int = 0, observer=None):
    """Build the engine for an input that passes the precheck; returns (decomposition, engine)."""
    f = run_dfs(g, root)
    d = decompose(g, f)
    classify(d)
    eng = Engine(d, observer)
    eng.init_state()
    return d, eng
