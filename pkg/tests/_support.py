"""Shared fixtures-as-functions for the test modules."""
from __future__ import annotations

import functools

from tricert.graph_core import Graph
from tricert.oracle import K4_EDGES, NaiveSubdivisionModel, is_bg_path_naive, small_corpus


def k4() -> Graph:
    return Graph.from_edges(4, K4_EDGES)


def k5() -> Graph:
    return Graph.from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])


def glued_k4() -> Graph:
    """Two K4s sharing the adjacent vertices 2 and 3 (n=6, m=11)."""
    return Graph.from_edges(6, list(K4_EDGES) + [(4, 5), (4, 2), (4, 3), (5, 2), (5, 3)])


def wheel(k: int, drop_rim: bool = False) -> Graph:
    """Hub 0 joined to the cycle 1..k; optionally without the rim edge k-1 -- k."""
    rim = [(i, i % k + 1) for i in range(1, k + 1)]
    if drop_rim:
        rim = rim[:-1]
    return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)] + rim)


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


@functools.lru_cache(maxsize=None)
def corpus(count: int = 600, seed: int = 0, max_n: int = 10) -> tuple:
    return tuple(small_corpus(count, seed=seed, max_n=max_n))


class Def4Observer:
    """Checks every emitted path literally and the R1/R2 state at each checkpoint."""

    def __init__(self):
        self.edges: set = set()
        self.bad_paths: list = []
        self.bad_states: list = []
        self.paths = 0
        self.checkpoints = 0
        self.singles: list = []  # chain types of paths added outside caterpillars

    def _seed(self, eng):
        if self.edges:
            return
        for c in (0, 1, 2):
            vs = eng.d.chains[c].vertices
            self.edges.update(frozenset(e) for e in zip(vs, vs[1:]))

    def before_path(self, eng, p):
        self._seed(eng)
        model = NaiveSubdivisionModel.from_edges(tuple(e) for e in self.edges)
        if not is_bg_path_naive(model, p.vertices):
            self.bad_paths.append(p)
        if p.provenance and p.provenance[0] == "chain":
            self.singles.append(eng.d.chains[p.provenance[1]].type)
        self.edges.update(frozenset(e) for e in zip(p.vertices, p.vertices[1:]))
        self.paths += 1

    def checkpoint(self, eng):
        self._seed(eng)
        self.checkpoints += 1
        problem = state_problem(eng, self.edges)
        if problem:
            self.bad_states.append((self.paths, problem))


def state_problem(eng, edges: set):
    """None if the subdivision is upwards-closed, modular, and satisfies R2."""
    d = eng.d
    g = d.g
    f = d.forest
    verts = {v for e in edges for v in e}
    for v in verts:
        if f.parent[v] >= 0 and frozenset((v, f.parent[v])) not in edges:
            return f"vertex {v} lacks its tree-parent edge"
    covered = set()
    for c in d.chains:
        if eng.added[c.id]:
            covered.update(frozenset(e) for e in zip(c.vertices, c.vertices[1:]))
    if covered != edges:
        return "not a union of added chains"
    index = g.edge_index()
    model = NaiveSubdivisionModel.from_edges(tuple(e) for e in edges)
    is_s3 = len(model.links) == 3
    for lk in model.links:
        tree_only = all(f.is_tree[index[(min(a, b), max(a, b))]] for a, b in zip(lk, lk[1:]))
        if not tree_only:
            continue
        if len(model.parallel[frozenset((lk[0], lk[-1]))]) > 1:
            c0 = d.chains[0].vertices
            if not (is_s3 and set(lk) == set(c0)):
                return f"tree link {lk} has a parallel link"
    return None
