"""Simple undirected graphs, the text graph format, and negative witnesses.

Vertex ids are 0-based internally and 1-based in files.
"""
from __future__ import annotations

import dataclasses
from collections import deque
from typing import Iterable, Optional, Sequence


class GraphFormatError(ValueError):
    """Raised for malformed graph input; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InternalCheckError(RuntimeError):
    """A self-verification failed. This signals a bug, never a property of the input."""


@dataclasses.dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple  # EdgeId -> (u, v)
    adjacency: tuple  # v -> tuple of (neighbor, EdgeId) in insertion order

    @property
    def m(self) -> int:
        return len(self.edges)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Build a simple graph. Loops and duplicate edges raise ``ValueError``."""
        edge_list = []
        adj: list = [[] for _ in range(n)]
        seen = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add(key)
            eid = len(edge_list)
            edge_list.append((u, v))
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        return cls(n, tuple(edge_list), tuple(tuple(a) for a in adj))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> list:
        return [w for w, _ in self.adjacency[v]]

    def edge_index(self) -> dict:
        """Map the sorted endpoint pair of every edge to its EdgeId."""
        return {(u, v) if u < v else (v, u): e for e, (u, v) in enumerate(self.edges)}

    def min_degree(self) -> int:
        return min((len(a) for a in self.adjacency), default=0)


# --- witnesses --------------------------------------------------------------

LOW_DEGREE = "lowdegree"
NOT_CONNECTED = "notconnected"
CUT_VERTEX = "cutvertex"
SEPARATION_PAIR = "separationpair"
NON_SIMPLE = "nonsimple"
TOO_SMALL = "toosmall"

_ARITY = {LOW_DEGREE: 1, NOT_CONNECTED: 2, CUT_VERTEX: 1, SEPARATION_PAIR: 2, NON_SIMPLE: 2, TOO_SMALL: 0}


@dataclasses.dataclass(frozen=True)
class NegativeWitness:
    """Evidence that a graph is not 3-connected.

    ``kind`` is one of the module-level kind constants; ``vertices`` holds the
    0-based vertices involved (for ``nonsimple``, the endpoints of the edge).
    """

    kind: str
    vertices: tuple = ()

    def __post_init__(self):
        if self.kind not in _ARITY:
            raise ValueError(f"unknown witness kind {self.kind!r}")
        if len(self.vertices) != _ARITY[self.kind]:
            raise ValueError(f"witness {self.kind} takes {_ARITY[self.kind]} vertices")

    def __str__(self) -> str:
        return " ".join(["witness", self.kind, *(str(v + 1) for v in self.vertices)])


def count_components(g: Graph, removed: Iterable[int] = (), removed_edges: Iterable[int] = ()) -> int:
    """Connected components of ``g`` minus the given vertices and EdgeIds."""
    dead = bytearray(g.n)
    for v in removed:
        dead[v] = 1
    skip = set(removed_edges)
    seen = bytearray(g.n)
    comps = 0
    for s in range(g.n):
        if dead[s] or seen[s]:
            continue
        comps += 1
        seen[s] = 1
        stack = [s]
        while stack:
            v = stack.pop()
            for w, e in g.adjacency[v]:
                if not seen[w] and not dead[w] and e not in skip:
                    seen[w] = 1
                    stack.append(w)
    return comps


def same_component(g: Graph, u: int, v: int) -> bool:
    seen = bytearray(g.n)
    seen[u] = 1
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            return True
        for w, _ in g.adjacency[x]:
            if not seen[w]:
                seen[w] = 1
                queue.append(w)
    return False


def precheck(g: Graph) -> Optional[NegativeWitness]:
    """Cheap necessary conditions: at least four vertices and minimum degree three."""
    if g.n <= 3:
        return NegativeWitness(TOO_SMALL)
    for v in range(g.n):
        if len(g.adjacency[v]) <= 2:
            return NegativeWitness(LOW_DEGREE, (v,))
    return None


def verify_witness(g: Graph, w: NegativeWitness) -> bool:
    """Check a witness against ``g`` with one traversal."""
    for v in w.vertices:
        if not 0 <= v < g.n:
            raise ValueError(f"witness vertex {v} out of range")
    k = w.kind
    if k == TOO_SMALL:
        return g.n <= 3
    if k == LOW_DEGREE:
        return g.degree(w.vertices[0]) <= 2
    if k == NOT_CONNECTED:
        u, v = w.vertices
        return u != v and not same_component(g, u, v)
    if k == CUT_VERTEX:
        return count_components(g, removed=w.vertices) > 1
    if k == SEPARATION_PAIR:
        u, v = w.vertices
        return u != v and count_components(g, removed=w.vertices) > 1
    if k == NON_SIMPLE:
        # Graph objects are simple by construction; the witness only makes
        # sense against the raw file, see ``parse_graph(..., strict=False)``.
        return False
    raise AssertionError(k)


def require_witness(g: Graph, w: NegativeWitness) -> NegativeWitness:
    if not verify_witness(g, w):
        raise InternalCheckError(f"emitted witness does not verify: {w}")
    return w


# --- text format ------------------------------------------------------------

def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphFormatError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_graph(text) -> Graph:
    """Parse the line-oriented graph format (``p``/``e`` lines or a bare edge list)."""
    if isinstance(text, bytes):
        text = text.decode()
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        rows.append((lineno, tokens))
    if not rows:
        raise GraphFormatError("empty graph file")

    if rows[0][1][0] == "p":
        lineno, tokens = rows[0]
        if len(tokens) != 3:
            raise GraphFormatError("problem line must be 'p <n> <m>'", lineno)
        n, m = _ints(tokens[1:], lineno)
        if n < 0 or m < 0:
            raise GraphFormatError("negative size", lineno)
        body = rows[1:]
        pairs = []
        for lineno, tokens in body:
            if tokens[0] != "e" or len(tokens) != 3:
                raise GraphFormatError("edge line must be 'e <u> <v>'", lineno)
            pairs.append((lineno, *_ints(tokens[1:], lineno)))
        if len(pairs) != m:
            raise GraphFormatError(f"declared {m} edges, found {len(pairs)}", rows[0][0])
    else:
        pairs = []
        for lineno, tokens in rows:
            if len(tokens) != 2:
                raise GraphFormatError("edge-list line must be '<u> <v>'", lineno)
            pairs.append((lineno, *_ints(tokens, lineno)))
        n = max((max(u, v) for _, u, v in pairs), default=0)

    edges = []
    seen = {}
    for lineno, u, v in pairs:
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"vertex id out of range 1..{n}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {u}-{v} (first at line {seen[key]})", lineno)
        seen[key] = lineno
        edges.append((u - 1, v - 1))
    return Graph.from_edges(n, edges)


def find_nonsimple(text) -> Optional[NegativeWitness]:
    """Return a ``nonsimple`` witness for the first loop or duplicate edge in raw text."""
    if isinstance(text, bytes):
        text = text.decode()
    seen = set()
    for raw in text.splitlines():
        tokens = raw.split()
        if not tokens or tokens[0] in ("c", "p"):
            continue
        if tokens[0] == "e":
            tokens = tokens[1:]
        try:
            u, v = (int(t) for t in tokens[:2])
        except ValueError:
            return None
        key = (min(u, v), max(u, v))
        if u == v or key in seen:
            return NegativeWitness(NON_SIMPLE, (u - 1, v - 1))
        seen.add(key)
    return None


def format_graph(g: Graph, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {c}" for c in comment.splitlines())
    lines.append(f"p {g.n} {g.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_witness(line: str) -> NegativeWitness:
    tokens = line.split()
    if len(tokens) < 2 or tokens[0] != "witness":
        raise GraphFormatError(f"not a witness line: {line!r}")
    return NegativeWitness(tokens[1], tuple(int(t) - 1 for t in tokens[2:]))
