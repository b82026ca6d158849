"""The three broadcast protocols.

* spanning_forest_multiround: every node repeatedly announces a few neighbors
  in foreign supernodes; adjacent supernodes merge until each one is a
  connected component.  Runs within ceil(1/eps) rounds with messages of at
  most ceil(n**eps) ids.
* prune_one_round: one broadcast of (degree, sketched neighbor row) per node,
  then everyone peels low-degree nodes locally, editing the remaining
  sketches through linearity.
* connectivity_one_round_r: each node derives its row of the short-cycle-free
  subgraph from its radius-r view, then one pruning round at the subgraph's
  sparsity bound reconstructs that subgraph everywhere and a spanning forest
  is read off locally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import sketch
from .clique import (
    AdjacencyRow,
    DegreeAndSketch,
    NeighborList,
    Protocol,
    RadiusBall,
    make_message,
    run_protocol,
)
from .errors import DegeneracyExceeded, ForeignEdge, InvalidTranscript, NotDecodable, WeightMismatch
from .graph import Edge, Graph, _UnionFind, components_and_forest, normalize_edge, tilde_row_local
from .intmath import nth_root_ceil, pow_ceil


@dataclass(frozen=True)
class SupernodePartition:
    """Grouping of nodes into supernodes, labeled by minimum member id.

    forest accumulates the original-graph edges whose announcement caused a
    merge; it stays acyclic.  active_labels flags supernodes that absorbed
    at least `threshold` supernodes of the previous round (kept for
    observability, never used for control flow).
    """

    assignment: tuple[int, ...]
    forest: tuple[Edge, ...]
    active_labels: frozenset[int]
    threshold: int

    @staticmethod
    def singletons(n: int, threshold: int) -> "SupernodePartition":
        return SupernodePartition(tuple(range(n)), (), frozenset(range(n)), threshold)

    def labels(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.assignment)))


def merge_step(part: SupernodePartition, announced,
               edges: frozenset[Edge] | None = None) -> SupernodePartition:
    """Merge supernodes joined by announced edges.

    Edges are processed in ascending edge order; each one joining two
    distinct supernodes goes into the forest.  When the reference edge set
    of the input graph is supplied, foreign announcements are rejected.
    """
    n = len(part.assignment)
    pending = sorted(normalize_edge(u, v) for u, v in announced)
    if edges is not None:
        for e in pending:
            if e not in edges:
                raise ForeignEdge(f"announced edge {e} is not in the input graph")
    if not pending:
        return part
    uf = _UnionFind(n)
    for v in range(n):
        uf.union(v, part.assignment[v])
    forest = list(part.forest)
    for u, v in pending:
        if uf.union(u, v):
            forest.append((u, v))
    label_of_root: dict[int, int] = {}
    assignment = []
    for v in range(n):
        assignment.append(label_of_root.setdefault(uf.find(v), v))
    absorbed: dict[int, set[int]] = {}
    for v in range(n):
        absorbed.setdefault(assignment[v], set()).add(part.assignment[v])
    active = frozenset(lbl for lbl, olds in absorbed.items()
                       if len(olds) >= part.threshold)
    return SupernodePartition(tuple(assignment), tuple(forest), active, part.threshold)


class _SpanningForestProtocol(Protocol):
    name = "spanning_forest_multiround"

    def __init__(self, n: int, cap: int, budget: int):
        self.n = n
        self.cap = cap
        self.round_budget = budget

    def initial_state(self, node, node_input):
        return node_input.neighbors, SupernodePartition.singletons(self.n, self.cap)

    def message(self, node, state, rnd):
        neighbors, part = state
        mine = part.assignment[node]
        best: dict[int, int] = {}
        for w in neighbors:
            lbl = part.assignment[w]
            if lbl != mine and (lbl not in best or w < best[lbl]):
                best[lbl] = w
        chosen = sorted(best)[: self.cap]
        ids = tuple(sorted(best[lbl] for lbl in chosen))
        return make_message(NeighborList(ids), self.n)

    def update(self, node, state, rnd, messages):
        neighbors, part = state
        announced = {normalize_edge(u, w)
                     for u, m in enumerate(messages) for w in m.payload.ids}
        if not announced:
            return state, True
        return (neighbors, merge_step(part, announced)), False

    def node_finished(self, node, state):
        neighbors, part = state
        mine = part.assignment[node]
        return all(part.assignment[w] == mine for w in neighbors)

    def output(self, node, state):
        _, part = state
        return part.assignment, tuple(sorted(part.forest))


def spanning_forest_multiround(rows: Sequence[AdjacencyRow], eps):
    """Connected components and a spanning forest in at most ceil(1/eps)
    rounds of at most ceil(n**eps) announced neighbors per node.

    eps is an exact rational in (0, 1]; pass a Fraction, an int, or a
    string such as "1/3" (floats are refused to keep round and cap counts
    exact).
    """
    if isinstance(eps, float):
        raise TypeError("pass eps as Fraction, int, or string, not float")
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must be in (0, 1]")
    n = len(rows)
    cap = max(1, pow_ceil(n, eps))
    budget = -(-eps.denominator // eps.numerator)
    proto = _SpanningForestProtocol(n, cap, budget)
    (labels, forest), transcript = run_protocol(proto, rows)
    return labels, forest, transcript


@dataclass(frozen=True)
class PruningResult:
    """Outcome of a peel: the removal sequence with residual neighborhoods,
    whatever survived, and (when nothing survived) the reconstructed graph."""

    sequence: tuple[tuple[int, tuple[int, ...]], ...]
    remaining: tuple[int, ...]
    residual_degrees: tuple[tuple[int, int], ...]
    fully_reconstructed: bool
    reconstructed: Graph | None


def peel_from_messages(msgs, params: sketch.SketchParams, d: int) -> PruningResult:
    """Replay the peel locally from one (degree, sketch) pair per node.

    Repeatedly takes the smallest live node with residual degree <= d,
    decodes its residual neighborhood from its sketch, and subtracts its
    basis encoding from each live neighbor's sketch.  Needs no further
    communication.  Any inconsistency (undecodable sketch, dead or
    self-referential neighbor, negative degree) raises InvalidTranscript.
    """
    n = params.n
    if len(msgs) != n:
        raise InvalidTranscript(f"expected {n} messages, got {len(msgs)}")
    degrees = []
    values = []
    for node, (deg, val) in enumerate(msgs):
        if deg < 0 or not 0 <= val < params.p:
            raise InvalidTranscript(f"message of node {node} is out of range")
        degrees.append(deg)
        values.append(val)
    live = [True] * n
    sequence: list[tuple[int, tuple[int, ...]]] = []
    edges: list[Edge] = []
    while True:
        k = next((v for v in range(n) if live[v] and degrees[v] <= d), None)
        if k is None:
            break
        try:
            vec = sketch.decode(params, values[k], expected_weight=degrees[k])
        except (NotDecodable, WeightMismatch) as exc:
            raise InvalidTranscript(f"sketch of node {k} is inconsistent: {exc}") from exc
        nbrs = tuple(i for i, bit in enumerate(vec) if bit)
        live[k] = False
        basis_k = sketch.encode_basis(params, k)
        for j in nbrs:
            if not live[j]:
                raise InvalidTranscript(f"node {k} decoded dead or self neighbor {j}")
            degrees[j] -= 1
            if degrees[j] < 0:
                raise InvalidTranscript(f"residual degree of node {j} went negative")
            values[j] = (values[j] - basis_k) % params.p
        sequence.append((k, nbrs))
        edges.extend(normalize_edge(k, j) for j in nbrs)
    remaining = tuple(v for v in range(n) if live[v])
    residual = tuple((v, degrees[v]) for v in remaining)
    full = not remaining
    reconstructed = Graph.from_edges(n, edges) if full else None
    return PruningResult(tuple(sequence), remaining, residual, full, reconstructed)


class _PruneProtocol(Protocol):
    name = "prune_one_round"
    round_budget = 1

    def __init__(self, n: int, d: int, params: sketch.SketchParams):
        self.n = n
        self.d = d
        self.params = params

    def initial_state(self, node, node_input):
        return node_input.neighbors

    def message(self, node, state, rnd):
        vec = [0] * self.n
        for w in state:
            vec[w] = 1
        payload = DegreeAndSketch(len(state), sketch.encode(self.params, vec))
        return make_message(payload, self.n, self.params.p)

    def update(self, node, state, rnd, messages):
        pairs = [(m.payload.degree, m.payload.sketch) for m in messages]
        return peel_from_messages(pairs, self.params, self.d), True

    def output(self, node, state):
        return state


def prune_one_round(rows: Sequence[AdjacencyRow], d: int):
    """One broadcast round of (degree, sketch), then a shared local peel."""
    if d < 0:
        raise ValueError("degree bound must be >= 0")
    n = len(rows)
    params = sketch.cached_params(n, d)
    result, transcript = run_protocol(_PruneProtocol(n, d, params), rows)
    return result, transcript


def sparsity_parameter(n: int, r: int) -> int:
    """Smallest s >= 1 with s**r >= n.

    A graph on n nodes without cycles of length <= 2r cannot have a
    subgraph of minimum degree s + 1 (its radius-r tree would already hold
    more than s**r >= n nodes), so peeling at bound s always finishes.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if r < 1:
        raise ValueError("r must be >= 1")
    return nth_root_ceil(n, r)


class _OneRoundConnectivity(Protocol):
    name = "connectivity_one_round_r"
    round_budget = 1

    def __init__(self, n: int, r: int, s: int, params: sketch.SketchParams):
        self.n = n
        self.r = r
        self.s = s
        self.params = params

    def initial_state(self, node, node_input):
        # local, communication-free step: this node's row of the
        # short-cycle-free subgraph
        return tilde_row_local(node_input.ball, node, self.r)

    def message(self, node, state, rnd):
        vec = [0] * self.n
        for w in state:
            vec[w] = 1
        payload = DegreeAndSketch(len(state), sketch.encode(self.params, vec))
        return make_message(payload, self.n, self.params.p)

    def update(self, node, state, rnd, messages):
        pairs = [(m.payload.degree, m.payload.sketch) for m in messages]
        peel = peel_from_messages(pairs, self.params, self.s)
        if peel.remaining:
            raise DegeneracyExceeded(
                f"peel stalled with {len(peel.remaining)} nodes left at s={self.s}"
            )
        labels, forest = components_and_forest(peel.reconstructed)
        return (labels, forest), True

    def output(self, node, state):
        return state


def connectivity_one_round_r(balls: Sequence[RadiusBall], r: int):
    """Connected components and a spanning forest from radius-r views in a
    single broadcast round of (degree, sketch) messages."""
    if r < 1:
        raise ValueError("r must be >= 1")
    n = len(balls)
    for i, b in enumerate(balls):
        if b.node != i:
            raise ValueError(f"ball {i} is for node {b.node}")
        if b.ball.radius != r:
            raise ValueError(f"ball of node {i} has radius {b.ball.radius}, expected {r}")
    s = sparsity_parameter(n, r)
    params = sketch.cached_params(n, s)
    proto = _OneRoundConnectivity(n, r, s, params)
    (labels, forest), transcript = run_protocol(proto, balls)
    return labels, forest, transcript
