"""Iterative depth-first search with ancestor-to-descendant backedges."""
from __future__ import annotations

import dataclasses
from typing import Union

from .graph_core import NOT_CONNECTED, Graph, NegativeWitness


@dataclasses.dataclass
class DfsForest:
    root: int
    dfi: list  # vertex -> visit index
    order: list  # visit index -> vertex
    parent: list  # vertex -> parent vertex (-1 at the root)
    parent_edge: list  # vertex -> EdgeId of the tree edge to the parent (-1 at the root)
    size: list  # vertex -> number of vertices in its subtree
    is_tree: bytearray  # EdgeId -> 1 for tree edges
    back_top: list  # EdgeId -> ancestor endpoint of a backedge (-1 for tree edges)
    children: list  # vertex -> number of tree children

    @property
    def second(self) -> int:
        """The vertex visited second (the root's only child in a 2-connected graph)."""
        return self.order[1]

    def is_ancestor(self, x: int, y: int) -> bool:
        dx = self.dfi[x]
        return dx <= self.dfi[y] < dx + self.size[x]

    def backedge(self, e: int, g: Graph) -> tuple:
        """Return backedge ``e`` oriented as (ancestor, descendant)."""
        u, v = g.edges[e]
        return (u, v) if self.back_top[e] == u else (v, u)


def run_dfs(g: Graph, root: int = 0) -> Union[DfsForest, NegativeWitness]:
    """DFS from ``root`` visiting adjacency in stored order.

    Returns ``NotConnected(root, v)`` for the first unreached vertex ``v``.
    """
    n = g.n
    adj = g.adjacency
    dfi = [-1] * n
    parent = [-1] * n
    parent_edge = [-1] * n
    order = []
    is_tree = bytearray(g.m)

    dfi[root] = 0
    order.append(root)
    # frontier entries: (vertex, position in its adjacency list)
    stack = [root]
    pos = [0] * n
    while stack:
        v = stack[-1]
        a = adj[v]
        i = pos[v]
        while i < len(a):
            w, e = a[i]
            i += 1
            if dfi[w] < 0:
                pos[v] = i
                dfi[w] = len(order)
                order.append(w)
                parent[w] = v
                parent_edge[w] = e
                is_tree[e] = 1
                stack.append(w)
                break
        else:
            pos[v] = i
            stack.pop()

    if len(order) < n:
        missing = next(v for v in range(n) if dfi[v] < 0)
        return NegativeWitness(NOT_CONNECTED, (root, missing))

    size = [1] * n
    children = [0] * n
    for v in reversed(order):
        p = parent[v]
        if p >= 0:
            size[p] += size[v]
            children[p] += 1

    back_top = [-1] * g.m
    for e, (u, v) in enumerate(g.edges):
        if not is_tree[e]:
            back_top[e] = u if dfi[u] < dfi[v] else v

    return DfsForest(root, dfi, order, parent, parent_edge, size, is_tree, back_top, children)


def is_ancestor(f: DfsForest, x: int, y: int) -> bool:
    return f.is_ancestor(x, y)
