"""Shared test helpers: independent oracles kept deliberately separate from
the package's own implementations."""

from __future__ import annotations

from collections import deque

import networkx as nx

from bclique.graph import Graph, normalize_edge


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def bfs_component_labels(g: Graph) -> tuple[int, ...]:
    """Component labels (minimum member id) by plain BFS, no union-find."""
    labels = [-1] * g.n
    for start in range(g.n):
        if labels[start] != -1:
            continue
        queue = deque([start])
        labels[start] = start
        while queue:
            u = queue.popleft()
            for w in g.rows[u]:
                if labels[w] == -1:
                    labels[w] = start
                    queue.append(w)
    return tuple(labels)


def forest_ok(g: Graph, labels, forest) -> bool:
    """Maximal-spanning-forest validity via networkx."""
    if any(e not in g.edge_set() for e in forest):
        return False
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(forest)
    return nx.is_forest(h) and len(forest) == g.n - len(set(labels))


def relabel(g: Graph, perm) -> Graph:
    """Graph with node v renamed perm[v]."""
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


def girth_leq(g: Graph, bound: int) -> bool:
    """Whether the shortest cycle has length <= bound, via networkx girth."""
    return nx.girth(to_nx(g)) <= bound


def residual_core(g: Graph, d: int) -> tuple[int, ...]:
    """Order-free fixpoint oracle for the set surviving a low-degree peel:
    simultaneously delete every node of degree <= d until stable."""
    alive = set(range(g.n))
    while True:
        doomed = {v for v in alive
                  if sum(1 for w in g.rows[v] if w in alive) <= d}
        if not doomed:
            return tuple(sorted(alive))
        alive -= doomed


def edges_of_sequence(sequence):
    return {normalize_edge(k, j) for k, nbrs in sequence for j in nbrs}
