"""Undirected simple graphs: representation, generators, and brute-force oracles.

Edges are always normalized as (u, v) with u < v, and plain tuple comparison
on normalized edges is the single total edge order used everywhere (tie-break
order in the spanning-forest oracle, and the "largest edge of a short cycle"
rule that produces the short-cycle-free subgraph).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import BadParams, IndexOutOfRange, InvalidEdge, ParseError, UnknownKind

Edge = tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Graph on nodes 0..n-1 stored as one sorted neighbor row per node."""

    n: int
    rows: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        if n < 0:
            raise BadParams("node count must be >= 0")
        rows: list[list[int]] = [[] for _ in range(n)]
        seen: set[Edge] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidEdge(f"edge ({u}, {v}) references a node outside 0..{n - 1}")
            if u == v:
                raise InvalidEdge(f"self-loop at node {u}")
            e = normalize_edge(u, v)
            if e in seen:
                raise InvalidEdge(f"duplicate edge {e}")
            seen.add(e)
            rows[u].append(v)
            rows[v].append(u)
        return Graph(n, tuple(tuple(sorted(r)) for r in rows))

    def degree(self, v: int) -> int:
        return len(self.rows[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.rows[u]

    def edges(self) -> tuple[Edge, ...]:
        """All edges, normalized and already in ascending edge order."""
        return tuple((u, w) for u in range(self.n) for w in self.rows[u] if w > u)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges())

    def boolean_row(self, v: int) -> tuple[int, ...]:
        row = set(self.rows[v])
        return tuple(1 if j in row else 0 for j in range(self.n))


@dataclass(frozen=True)
class Ball:
    """Induced subgraph of everything within a fixed distance of one node.

    Node ids are the original ids; adj maps each contained node to its
    neighbors inside the ball.
    """

    center: int
    radius: int
    nodes: tuple[int, ...]
    adj: dict[int, tuple[int, ...]]


@dataclass(frozen=True)
class TildeResult:
    """A graph with all short cycles broken, plus the edges that were dropped."""

    tilde: Graph
    removed: frozenset[Edge]


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, u: int, v: int) -> bool:
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return False
        if self.size[ru] < self.size[rv]:
            ru, rv = rv, ru
        self.parent[rv] = ru
        self.size[ru] += self.size[rv]
        return True


# ---------------------------------------------------------------------------
# edge-list files


def load_graph(text: str) -> Graph:
    """Parse the edge-list format: first payload line is n, then "u v" lines.

    '#' starts a comment, blank lines are skipped, duplicate edges and
    self-loops are rejected.
    """
    n = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        payload = raw.split("#", 1)[0].strip()
        if not payload:
            continue
        fields = payload.split()
        if n is None:
            if len(fields) != 1:
                raise ParseError(f"line {lineno}: expected a single node count")
            try:
                n = int(fields[0])
            except ValueError:
                raise ParseError(f"line {lineno}: node count is not an integer") from None
            if n < 0:
                raise ParseError(f"line {lineno}: node count must be >= 0")
            continue
        if len(fields) != 2:
            raise ParseError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"line {lineno}: endpoints are not integers") from None
        edges.append((u, v))
    if n is None:
        raise ParseError("missing node count line")
    return Graph.from_edges(n, edges)


def serialize_graph(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# oracles


def components_and_forest(g: Graph) -> tuple[tuple[int, ...], tuple[Edge, ...]]:
    """Connected components plus a maximal spanning forest.

    Labels are the minimum node id of each component.  The forest is built
    by union-find over edges in ascending edge order, so it is canonical.
    """
    uf = _UnionFind(g.n)
    forest = [e for e in g.edges() if uf.union(*e)]
    label_of_root: dict[int, int] = {}
    labels = []
    for v in range(g.n):
        labels.append(label_of_root.setdefault(uf.find(v), v))
    return tuple(labels), tuple(forest)


def core_peel(g: Graph, d: int):
    """Greedy low-degree peel: repeatedly delete the smallest-id node of
    residual degree <= d, recording its residual neighborhood.

    Returns (sequence, remaining).  The remaining set is the maximal
    subgraph of minimum degree > d and does not depend on the peel order.
    """
    if d < 0:
        raise ValueError("degree bound must be >= 0")
    adj = [set(row) for row in g.rows]
    live = [True] * g.n
    sequence: list[tuple[int, tuple[int, ...]]] = []
    while True:
        k = next((v for v in range(g.n) if live[v] and len(adj[v]) <= d), None)
        if k is None:
            break
        nbrs = tuple(sorted(adj[k]))
        sequence.append((k, nbrs))
        live[k] = False
        for j in nbrs:
            adj[j].discard(k)
        adj[k].clear()
    remaining = tuple(v for v in range(g.n) if live[v])
    return tuple(sequence), remaining


def ball(g: Graph, v: int, r: int) -> Ball:
    """Induced subgraph of all nodes at distance <= r from v."""
    if not 0 <= v < g.n:
        raise IndexOutOfRange(f"node {v} outside 0..{g.n - 1}")
    if r < 1:
        raise ValueError("radius must be >= 1")
    dist = {v: 0}
    frontier = [v]
    for depth in range(1, r + 1):
        nxt = []
        for u in frontier:
            for w in g.rows[u]:
                if w not in dist:
                    dist[w] = depth
                    nxt.append(w)
        frontier = nxt
    members = tuple(sorted(dist))
    inside = set(members)
    adj = {u: tuple(w for w in g.rows[u] if w in inside) for u in members}
    return Ball(center=v, radius=r, nodes=members, adj=adj)


def _anchored_cycles(rows, bound: int):
    """Yield every simple cycle of length 3..bound exactly once.

    A cycle is emitted as the vertex tuple starting at its minimum vertex,
    oriented so the second vertex is smaller than the last.
    """
    if bound < 3:
        return
    n = len(rows)
    path: list[int] = []
    on_path: set[int] = set()

    def extend(root: int):
        last = path[-1]
        for w in rows[last]:
            if w == root and len(path) >= 3 and path[1] < path[-1]:
                yield tuple(path)
            elif w > root and w not in on_path and len(path) < bound:
                path.append(w)
                on_path.add(w)
                yield from extend(root)
                path.pop()
                on_path.remove(w)

    for root in range(n):
        path[:] = [root]
        on_path = {root}
        yield from extend(root)


def _cycles_through(adj, v: int, bound: int):
    """Yield every simple cycle of length 3..bound containing v, once each."""
    if bound < 3:
        return
    path = [v]
    on_path = {v}

    def extend():
        last = path[-1]
        for w in adj[last]:
            if w == v and len(path) >= 3 and path[1] < path[-1]:
                yield tuple(path)
            elif w != v and w not in on_path and len(path) < bound:
                path.append(w)
                on_path.add(w)
                yield from extend()
                path.pop()
                on_path.remove(w)

    yield from extend()


def _cycle_edges(cycle: tuple[int, ...]):
    for a, b in zip(cycle, cycle[1:]):
        yield normalize_edge(a, b)
    yield normalize_edge(cycle[-1], cycle[0])


def has_short_cycle(g: Graph, length_bound: int) -> bool:
    """True iff g contains a simple cycle of length <= length_bound."""
    if length_bound < 3:
        raise ValueError("length bound must be >= 3")
    return any(True for _ in _anchored_cycles(g.rows, length_bound))


def tilde_global(g: Graph, r: int) -> TildeResult:
    """Drop, for every simple cycle of length <= 2r, its largest edge.

    The result has no cycle of length <= 2r and the same connected
    components as g.
    """
    if r < 1:
        raise ValueError("radius must be >= 1")
    removed = set()
    for cycle in _anchored_cycles(g.rows, 2 * r):
        removed.add(max(_cycle_edges(cycle)))
    tilde = Graph.from_edges(g.n, (e for e in g.edges() if e not in removed))
    return TildeResult(tilde=tilde, removed=frozenset(removed))


def tilde_row_local(ball_of_v: Ball, v: int, r: int) -> tuple[int, ...]:
    """Row of the short-cycle-free subgraph at v, computed from v's ball only.

    Every cycle of length <= 2r through v lies inside the radius-r ball, so
    this equals the corresponding row of tilde_global without any global
    knowledge.
    """
    if r < 1:
        raise ValueError("radius must be >= 1")
    if ball_of_v.center != v:
        raise ValueError(f"ball is centered at {ball_of_v.center}, not {v}")
    dropped: set[Edge] = set()
    for cycle in _cycles_through(ball_of_v.adj, v, 2 * r):
        top = max(_cycle_edges(cycle))
        if v in top:
            dropped.add(top)
    return tuple(u for u in ball_of_v.adj[v] if normalize_edge(v, u) not in dropped)


# ---------------------------------------------------------------------------
# deterministic generators


def _gen_path(n, rng, params):
    return [(i, i + 1) for i in range(n - 1)]


def _gen_cycle(n, rng, params):
    if n < 3:
        raise BadParams("cycle needs n >= 3")
    return [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]


def _gen_complete(n, rng, params):
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def _gen_star(n, rng, params):
    return [(0, i) for i in range(1, n)]


def _gen_gnp(n, rng, params):
    q = params.pop("q", 0.3)
    if not isinstance(q, (int, float)) or not 0 <= q <= 1:
        raise BadParams(f"edge probability q={q!r} outside [0, 1]")
    return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < q]


def _gen_random_forest(n, rng, params):
    edges = []
    for i in range(1, n):
        j = rng.randrange(i + 1)
        if j < i:  # j == i starts a fresh tree
            edges.append((j, i))
    return edges


def _gen_random_degenerate(n, rng, params):
    d = params.pop("d", None)
    if not isinstance(d, int) or d < 0:
        raise BadParams("random_degenerate needs an integer d >= 0")
    edges = []
    for i in range(1, n):
        count = rng.randint(0, min(d, i))
        edges.extend((j, i) for j in rng.sample(range(i), count))
    return edges


_GENERATORS = {
    "path": _gen_path,
    "cycle": _gen_cycle,
    "complete": _gen_complete,
    "star": _gen_star,
    "gnp": _gen_gnp,
    "random_forest": _gen_random_forest,
    "random_degenerate": _gen_random_degenerate,
}


def gen_graph(kind: str, n: int, seed: int = 0, **params) -> Graph:
    """Build a named test graph; identical (kind, n, seed, params) always
    yield the identical graph."""
    builder = _GENERATORS.get(kind)
    if builder is None:
        raise UnknownKind(f"unknown generator {kind!r}; choose from {sorted(_GENERATORS)}")
    if n < 0:
        raise BadParams("node count must be >= 0")
    rng = random.Random(seed)
    extras = dict(params)
    edges = builder(n, rng, extras)
    if extras:
        raise BadParams(f"unexpected parameters for {kind}: {sorted(extras)}")
    return Graph.from_edges(n, edges)
