"""Chain decomposition, the parent tree of chains, and chain classification."""
from __future__ import annotations

import dataclasses
from typing import Iterable, Optional, Union

from .dfs import DfsForest
from .graph_core import (
    CUT_VERTEX,
    SEPARATION_PAIR,
    Graph,
    InternalCheckError,
    NegativeWitness,
    require_witness,
    verify_witness,
)

T1, T2A, T2B, T3A, T3B = "1", "2a", "2b", "3a", "3b"


@dataclasses.dataclass(eq=False)
class Chain:
    __slots__ = ("id", "vertices", "backedge", "parent", "type", "caterpillar")
    id: int
    vertices: list  # s(C) first, t(C) last
    backedge: int  # EdgeId, -1 for C0
    parent: int  # ChainId, -1 for C0
    type: Optional[str]
    caterpillar: int  # id of the 3b chain of its caterpillar, -1 if none

    @property
    def s(self) -> int:
        return self.vertices[0]

    @property
    def t(self) -> int:
        return self.vertices[-1]

    def is_backedge(self) -> bool:
        return len(self.vertices) == 2 and self.backedge >= 0


@dataclasses.dataclass
class Caterpillar:
    id: int  # the 3b chain
    members: list  # the 3b chain first, then its marked 2b ancestors bottom-up
    parent: int  # parent chain of the minimal member


@dataclasses.dataclass
class ChainDecomposition:
    g: Graph
    forest: DfsForest
    chains: list
    edge_chain: list  # EdgeId -> ChainId
    inner_chain: list  # vertex -> ChainId holding it as inner vertex, -1 otherwise
    pos: list  # vertex -> index in its inner chain
    children: list  # ChainId -> child ChainIds in U
    r: int
    x: int
    caterpillars: dict = dataclasses.field(default_factory=dict)
    type3_at: list = dataclasses.field(default_factory=list)  # vertex -> type-3 chains starting there
    work: dict = dataclasses.field(default_factory=dict)

    def on_chain(self, v: int, k: int) -> bool:
        c = self.chains[k]
        return self.inner_chain[v] == k or v == c.vertices[0] or v == c.vertices[-1]

    def position(self, v: int, k: int) -> int:
        """Index of ``v`` in chain ``k``; ``v`` must lie on it."""
        c = self.chains[k]
        if self.inner_chain[v] == k:
            return self.pos[v]
        if v == c.vertices[0]:
            return 0
        if v == c.vertices[-1]:
            return len(c.vertices) - 1
        raise KeyError(f"vertex {v} not on chain {k}")


def find_cut_vertex(g: Graph, candidates: Iterable[int]) -> NegativeWitness:
    """Return the first candidate (then any vertex) whose removal disconnects ``g``."""
    tried = set()
    for v in list(candidates) + list(range(g.n)):
        if v in tried:
            continue
        tried.add(v)
        w = NegativeWitness(CUT_VERTEX, (v,))
        if verify_witness(g, w):
            return w
    raise InternalCheckError("graph reported as not 2-connected but has no cut vertex")


def decompose(g: Graph, f: DfsForest) -> Union[ChainDecomposition, NegativeWitness]:
    """Split ``g`` into chains C0..C_{m-n+1}, starting from the K_2^3-subdivision at the root."""
    n = g.n
    r = f.root
    parent = f.parent
    parent_edge = f.parent_edge
    adj = g.adjacency
    back_top = f.back_top

    if f.children[r] >= 2:
        return require_witness(g, NegativeWitness(CUT_VERTEX, (r,)))
    u = f.second
    if f.children[u] >= 2:
        return require_witness(g, NegativeWitness(SEPARATION_PAIR, (r, u)))

    # first two backedges at the root in adjacency order
    root_back = [(w, e) for w, e in adj[r] if back_top[e] == r]
    if len(root_back) < 2:
        # min degree >= 3 and one tree child at r make this unreachable
        return find_cut_vertex(g, [r, u])
    (a, ea), (b, eb) = root_back[0], root_back[1]

    dfi = f.dfi
    ya, yb = a, b
    while ya != yb:
        if dfi[ya] > dfi[yb]:
            ya = parent[ya]
        else:
            yb = parent[yb]
    x = ya

    edge_chain = [-1] * g.m
    inner_chain = [-1] * n
    pos = [0] * n
    in_chain = bytearray(n)
    chains: list = []

    def new_chain(vertices, backedge, tree_edges_from):
        cid = len(chains)
        chains.append(Chain(cid, vertices, backedge, -1, None, -1))
        if backedge >= 0:
            edge_chain[backedge] = cid
        for i in range(tree_edges_from, len(vertices) - 1):
            edge_chain[parent_edge[vertices[i]]] = cid
        for i in range(1, len(vertices) - 1):
            inner_chain[vertices[i]] = cid
            pos[vertices[i]] = i
        for v in vertices:
            in_chain[v] = 1
        return cid

    # C0 = x ->_T r
    path = [x]
    while path[-1] != r:
        path.append(parent[path[-1]])
    new_chain(path, -1, 0)
    for top, e in ((a, ea), (b, eb)):
        path = [r, top]
        while path[-1] != x:
            path.append(parent[path[-1]])
        new_chain(path, e, 1)

    steps = 0
    bad_start = []
    for v in f.order:
        for w, e in adj[v]:
            if back_top[e] != v or edge_chain[e] >= 0:
                continue
            if not in_chain[v]:
                return find_cut_vertex(g, [v, parent[v]] if parent[v] >= 0 else [v])
            path = [v, w]
            y = w
            while not in_chain[y]:
                y = parent[y]
                path.append(y)
                steps += 1
            cid = new_chain(path, e, 1)
            if path[-1] == v:
                bad_start.append(v)
            steps += 1

    unassigned = [e for e in range(g.m) if edge_chain[e] < 0]
    if bad_start or unassigned:
        cands = list(bad_start)
        for e in unassigned:
            cands.extend(g.edges[e])
        return find_cut_vertex(g, cands)

    if len(chains) != g.m - n + 2:
        raise InternalCheckError("chain count differs from m - n + 2")

    children = [[] for _ in chains]
    for c in chains[1:]:
        k = edge_chain[parent_edge[c.vertices[-1]]]
        c.parent = k
        children[k].append(c.id)

    d = ChainDecomposition(g, f, chains, edge_chain, inner_chain, pos, children, r, x)
    d.work["decompose"] = steps
    return d


def classify(d: ChainDecomposition) -> ChainDecomposition:
    """Assign types 1/2a/2b/3a/3b in creation order and collect caterpillars."""
    chains = d.chains
    inner = d.inner_chain
    x, r = d.x, d.r
    marked = bytearray(len(chains))
    type3_at = [[] for _ in range(d.g.n)]
    steps = 0
    for c in chains[1:]:
        k = c.parent
        ck = chains[k]
        s, t = c.vertices[0], c.vertices[-1]
        steps += 1
        if k == 0:
            is_type1 = (inner[s] == 0 or s == x or s == r) and (inner[t] == 0 or t == x or t == r)
        else:
            tk = ck.vertices[-1]
            is_type1 = (inner[s] == k or s == tk) and (inner[t] == k or t == tk)
        if is_type1:
            c.type = T1
        elif s == ck.vertices[0]:
            if c.is_backedge():
                c.type = T2A
            else:
                c.type = T2B
                marked[c.id] = 1
        else:
            type3_at[s].append(c.id)
            if not marked[k]:
                c.type = T3A
            else:
                c.type = T3B
                members = [c.id]
                j = k
                while marked[j]:
                    steps += 1
                    marked[j] = 0
                    members.append(j)
                    chains[j].caterpillar = c.id
                    j = chains[j].parent
                c.caterpillar = c.id
                d.caterpillars[c.id] = Caterpillar(c.id, members, chains[members[-1]].parent)
    d.type3_at = type3_at
    d.work["classify"] = steps
    return d
