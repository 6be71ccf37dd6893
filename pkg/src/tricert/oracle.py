"""Brute-force references and seeded graph generators for tests and benchmarks.

Nothing here shares code with the engine or the verifier beyond ``Graph``.
Random streams use numpy's PCG64 (128-bit state) seeded with
``SeedSequence(seed, spawn_key=(stream,))``, so a corpus is reproducible from
``(seed, stream)`` alone.
"""
from __future__ import annotations

import dataclasses
import itertools
from typing import Iterable, Optional

import numpy as np

from .graph_core import (
    CUT_VERTEX,
    NOT_CONNECTED,
    SEPARATION_PAIR,
    TOO_SMALL,
    Graph,
    NegativeWitness,
    count_components,
)


def rng_for(seed: int, stream: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream,))))


# --- connectivity oracles -----------------------------------------------------

def brute_vertex_3conn(g: Graph) -> tuple:
    """Literal definition: no set of at most two vertices disconnects ``g``."""
    if g.n <= 3:
        return False, NegativeWitness(TOO_SMALL)
    seen = _reach(g, 0)
    if not all(seen):
        return False, NegativeWitness(NOT_CONNECTED, (0, seen.index(0)))
    for v in range(g.n):
        if count_components(g, removed=(v,)) > 1:
            return False, NegativeWitness(CUT_VERTEX, (v,))
    for u, v in itertools.combinations(range(g.n), 2):
        if count_components(g, removed=(u, v)) > 1:
            return False, NegativeWitness(SEPARATION_PAIR, (u, v))
    return True, None


def _reach(g: Graph, s: int) -> bytearray:
    seen = bytearray(g.n)
    seen[s] = 1
    stack = [s]
    while stack:
        v = stack.pop()
        for w, _ in g.adjacency[v]:
            if not seen[w]:
                seen[w] = 1
                stack.append(w)
    return seen


def brute_edge_3conn(g: Graph) -> tuple:
    """No set of at most two edges disconnects ``g``; the witness is a tuple of EdgeIds."""
    if g.n <= 1:
        return False, ()
    if count_components(g) > 1:
        return False, ()
    for e in range(g.m):
        if count_components(g, removed_edges=(e,)) > 1:
            return False, (e,)
    for e, f in itertools.combinations(range(g.m), 2):
        if count_components(g, removed_edges=(e, f)) > 1:
            return False, (e, f)
    return True, None


def articulation_points(g: Graph, removed: int = -1) -> list:
    """Cut vertices of ``g`` minus ``removed`` (iterative lowpoint search)."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    out = []
    t = 0
    for s in range(n):
        if s == removed or disc[s] >= 0:
            continue
        disc[s] = low[s] = t
        t += 1
        root_children = 0
        stack = [(s, -1, iter(g.adjacency[s]))]
        while stack:
            v, pe, it = stack[-1]
            advanced = False
            for w, e in it:
                if w == removed or e == pe:
                    continue
                if disc[w] < 0:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, e, iter(g.adjacency[w])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if p == s:
                    root_children += 1
                elif low[v] >= disc[p]:
                    out.append(p)
        if root_children >= 2:
            out.append(s)
    return sorted(set(out))


def find_separation_pair(g: Graph) -> Optional[NegativeWitness]:
    """O(n(n+m)) search for a cut vertex or separation pair of a connected graph."""
    cuts = articulation_points(g)
    if cuts:
        return NegativeWitness(CUT_VERTEX, (cuts[0],))
    for u in range(g.n):
        cuts = articulation_points(g, removed=u)
        if cuts:
            return NegativeWitness(SEPARATION_PAIR, (u, cuts[0]))
    return None


# --- naive subdivision model ---------------------------------------------------

@dataclasses.dataclass
class NaiveSubdivisionModel:
    """A subdivision given by its edge set, with links recomputed from scratch."""

    adj: dict  # vertex -> set of neighbours inside the subdivision
    real: set
    links: list  # tuples of vertices from one real end to the other
    parallel: dict  # frozenset of link ends -> list of link indices

    @classmethod
    def from_edges(cls, edges: Iterable) -> "NaiveSubdivisionModel":
        adj: dict = {}
        for a, b in edges:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        real = {v for v, nb in adj.items() if len(nb) >= 3}
        links = []
        used = set()
        for a in sorted(real):
            for b in sorted(adj[a]):
                if frozenset((a, b)) in used:
                    continue
                path = [a, b]
                used.add(frozenset((a, b)))
                while path[-1] not in real:
                    prev, cur = path[-2], path[-1]
                    nxt = next(w for w in adj[cur] if w != prev)
                    used.add(frozenset((cur, nxt)))
                    path.append(nxt)
                links.append(tuple(path))
        parallel: dict = {}
        for i, lk in enumerate(links):
            parallel.setdefault(frozenset((lk[0], lk[-1])), []).append(i)
        return cls(adj, real, links, parallel)

    def link_of_inner(self, v) -> Optional[int]:
        for i, lk in enumerate(self.links):
            if v in lk[1:-1]:
                return i
        return None

    def links_containing(self, v) -> list:
        return [i for i, lk in enumerate(self.links) if v in lk]


def is_bg_path_naive(model: NaiveSubdivisionModel, p) -> bool:
    """Evaluate the three BG-path conditions literally."""
    p = list(p)
    if len(p) < 2 or len(set(p)) != len(p):
        return False
    x, y = p[0], p[-1]
    if x not in model.adj or y not in model.adj:
        return False
    if any(v in model.adj for v in p[1:-1]):
        return False
    if len(p) == 2 and y in model.adj[x]:
        return False
    for i in set(model.links_containing(x)) & set(model.links_containing(y)):
        lk = model.links[i]
        if {x, y} != {lk[0], lk[-1]}:
            return False
    lx, ly = model.link_of_inner(x), model.link_of_inner(y)
    if lx is not None and ly is not None and len(model.real) >= 4:
        ex = frozenset((model.links[lx][0], model.links[lx][-1]))
        ey = frozenset((model.links[ly][0], model.links[ly][-1]))
        if ex == ey:
            return False
    return True


def naive_check_certificate(g: Graph, cert) -> bool:
    """Forward replay of a certificate against the naive model; quadratic, for small graphs."""
    if cert.n != g.n or cert.m != g.m:
        return False
    index = g.edge_index()
    used = set()

    def take(seq):
        for a, b in zip(seq, seq[1:]):
            key = (a, b) if a < b else (b, a)
            if key not in index or key in used:
                return False
            used.add(key)
        return True

    s3 = [list(c) for c in cert.s3]
    if len(s3) != 3 or any(len(c) < 2 for c in s3):
        return False
    ends = {frozenset((c[0], c[-1])) for c in s3}
    if len(ends) != 1 or len(next(iter(ends))) != 2:
        return False
    inner = [v for c in s3 for v in c[1:-1]]
    if len(inner) != len(set(inner)) or set(inner) & set(s3[0][:1] + s3[0][-1:]):
        return False
    for c in s3:
        if not take(c):
            return False
    for p in cert.paths:
        vs = list(p.vertices)
        model = NaiveSubdivisionModel.from_edges(used)
        if not is_bg_path_naive(model, vs):
            return False
        if not take(vs):
            return False
    return len(used) == g.m


# --- generators ----------------------------------------------------------------

K4_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
OP_KINDS = ("add", "sub1", "sub2")


@dataclasses.dataclass
class GenReport:
    graph: Graph
    kinds: list


def gen_random_3connected(k: int, seed: int, stream: int = 0, report: bool = False):
    """K4 followed by ``k`` uniformly chosen BG-operations that keep the graph simple."""
    if k < 0:
        raise ValueError("k must be non-negative")
    rng = rng_for(seed, stream)
    edges = list(K4_EDGES)
    nbrs = [set() for _ in range(4)]
    for a, b in edges:
        nbrs[a].add(b)
        nbrs[b].add(a)
    kinds = []
    buf = rng.random(4096)
    bi = 0

    def draw(bound):
        nonlocal buf, bi
        if bi == len(buf):
            buf = rng.random(4096)
            bi = 0
        bi += 1
        return int(buf[bi - 1] * bound)

    def subdivide(idx):
        a, b = edges[idx]
        x = len(nbrs)
        nbrs.append({a, b})
        nbrs[a].discard(b)
        nbrs[b].discard(a)
        nbrs[a].add(x)
        nbrs[b].add(x)
        edges[idx] = (a, x)
        edges.append((x, b))
        return x, a, b

    done = 0
    while done < k:
        kind = OP_KINDS[draw(3)]
        n = len(nbrs)
        if kind == "add":
            if len(edges) == n * (n - 1) // 2:
                continue
            a, b = draw(n), draw(n)
            if a == b or b in nbrs[a]:
                continue
            edges.append((a, b))
            nbrs[a].add(b)
            nbrs[b].add(a)
        elif kind == "sub1":
            idx = draw(len(edges))
            y = draw(n)
            if y in edges[idx]:
                continue
            x, _, _ = subdivide(idx)
            edges.append((x, y))
            nbrs[x].add(y)
            nbrs[y].add(x)
        else:
            i, j = draw(len(edges)), draw(len(edges))
            if i == j:
                continue
            x, _, _ = subdivide(i)
            y, _, _ = subdivide(j)
            edges.append((x, y))
            nbrs[x].add(y)
            nbrs[y].add(x)
        kinds.append(kind)
        done += 1
    g = Graph.from_edges(len(nbrs), edges)
    return GenReport(g, kinds) if report else g


def relabel(g: Graph, seed: int, stream: int = 0) -> Graph:
    """Random vertex permutation and edge order, to vary the DFS the engine sees."""
    rng = rng_for(seed, stream)
    perm = rng.permutation(g.n)
    order = rng.permutation(g.m)
    edges = []
    for e in order:
        a, b = g.edges[int(e)]
        a, b = int(perm[a]), int(perm[b])
        edges.append((a, b) if rng.random() < 0.5 else (b, a))
    return Graph.from_edges(g.n, edges)


def plant_separation_pair(g: Graph, seed: int, stream: int = 0, gadget_ops: int = 2) -> tuple:
    """Glue a random 3-connected gadget onto two vertices of ``g``.

    Returns ``(graph, (u, v))`` where ``{u, v}`` separates the result. An edge
    that both sides contribute between the glued vertices is kept once.
    """
    rng = rng_for(seed, stream)
    gadget = gen_random_3connected(gadget_ops, seed, stream + 1)
    u, v = (int(t) for t in rng.choice(g.n, size=2, replace=False))
    p, q = (int(t) for t in rng.choice(gadget.n, size=2, replace=False))
    mapping = {}
    nxt = g.n
    for w in range(gadget.n):
        if w == p:
            mapping[w] = u
        elif w == q:
            mapping[w] = v
        else:
            mapping[w] = nxt
            nxt += 1
    edges = list(g.edges)
    seen = {frozenset(e) for e in edges}
    for a, b in gadget.edges:
        e = (mapping[a], mapping[b])
        if frozenset(e) in seen:
            continue
        seen.add(frozenset(e))
        edges.append(e)
    return Graph.from_edges(nxt, edges), (u, v)


def gen_erdos_renyi_min3(n: int, p: float, seed: int, stream: int = 0, tries: int = 200) -> Optional[Graph]:
    """G(n, p) conditioned on minimum degree three by rejection; None if no draw succeeds."""
    rng = rng_for(seed, stream)
    pairs = list(itertools.combinations(range(n), 2))
    for _ in range(tries):
        keep = rng.random(len(pairs)) < p
        edges = [pr for pr, k in zip(pairs, keep) if k]
        g = Graph.from_edges(n, edges)
        if n >= 1 and g.min_degree() >= 3:
            return g
    return None


def small_corpus(count: int, seed: int = 0, max_n: int = 10) -> list:
    """Mixed corpus of graphs with at most ``max_n`` vertices.

    A third each of generator output, planted separation pairs, and
    Erdős–Rényi draws with minimum degree three, all relabelled.
    """
    out = []
    i = 0
    while len(out) < count:
        rng = rng_for(seed, 3 * i)
        kind = i % 3
        if kind == 0:
            k = int(rng.integers(0, 2 * max_n))
            g = gen_random_3connected(k, seed, 3 * i + 1)
        elif kind == 1:
            base = gen_random_3connected(int(rng.integers(0, 4)), seed, 3 * i + 1)
            g, _ = plant_separation_pair(base, seed, 3 * i + 2, gadget_ops=int(rng.integers(0, 3)))
        else:
            n = int(rng.integers(4, max_n + 1))
            g = gen_erdos_renyi_min3(n, float(rng.uniform(0.35, 0.9)), seed, 3 * i + 1)
        i += 1
        if g is None or g.n > max_n:
            continue
        out.append(relabel(g, seed, 3 * i + 2))
    return out
