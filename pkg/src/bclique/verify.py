"""Self-check suites: protocol runs compared against brute-force oracles on
deterministic seeded graph corpora.  The command line exposes these as
`verify --suite small|full`; the heavier acceptance tests reuse the corpora.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from . import sketch
from .clique import adjacency_inputs, ball_inputs
from .errors import BcliqueError
from .graph import (
    Graph,
    _UnionFind,
    components_and_forest,
    core_peel,
    gen_graph,
    has_short_cycle,
    tilde_global,
    tilde_row_local,
    ball,
)
from .intmath import ceil_log2, pow_ceil
from .protocols import (
    connectivity_one_round_r,
    prune_one_round,
    spanning_forest_multiround,
    sparsity_parameter,
)

_KINDS = ("path", "cycle", "star", "complete", "gnp", "random_forest", "random_degenerate")


def protocol_corpus(count: int, sizes, base_seed: int = 0, *,
                    gnp_probs=(0.05, 0.1, 0.2, 0.35, 0.5),
                    complete_cap: int = 16,
                    degenerate_ds=(1, 2, 3)) -> list[tuple[str, Graph]]:
    """Deterministic mixed corpus of `count` seeded graphs."""
    graphs = []
    for idx in range(count):
        rng = random.Random(base_seed * 1_000_003 + idx)
        kind = _KINDS[idx % len(_KINDS)]
        n = rng.choice(list(sizes))
        extras = {}
        if kind == "cycle":
            n = max(n, 3)
        elif kind == "complete":
            n = min(n, complete_cap)
        elif kind == "gnp":
            extras["q"] = rng.choice(list(gnp_probs))
        elif kind == "random_degenerate":
            extras["d"] = rng.choice(list(degenerate_ds))
        g = gen_graph(kind, n, seed=idx, **extras)
        tag = f"{kind}(n={n}, seed={idx}"
        if extras:
            tag += ", " + ", ".join(f"{k}={v}" for k, v in sorted(extras.items()))
        graphs.append((tag + ")", g))
    return graphs


# radius-specific corpora: node counts are capped so the sketch table stays
# under its cap and short-cycle enumeration stays cheap
ONE_ROUND_SIZES = {
    1: (2, 3, 4, 5, 6, 7, 8, 9, 10),
    2: (4, 5, 7, 9, 12, 16, 20, 25, 30, 33, 36),
    3: (5, 8, 14, 22, 27, 33, 40, 64),
}
_ONE_ROUND_GNP = {1: (0.2, 0.35, 0.5), 2: (0.08, 0.15, 0.3), 3: (0.03, 0.05, 0.08)}
_ONE_ROUND_COMPLETE_CAP = {1: 10, 2: 12, 3: 8}


def one_round_corpus(r: int, count: int, base_seed: int = 0, *,
                     max_n: int | None = None) -> list[tuple[str, Graph]]:
    sizes = ONE_ROUND_SIZES[r]
    if max_n is not None:
        sizes = tuple(n for n in sizes if n <= max_n)
    return protocol_corpus(
        count, sizes, base_seed=base_seed + 7_000 * r,
        gnp_probs=_ONE_ROUND_GNP[r],
        complete_cap=_ONE_ROUND_COMPLETE_CAP[r],
        degenerate_ds=(1, 2),
    )


def forest_is_valid(g: Graph, labels, forest) -> bool:
    """Acyclic, made of real edges, and maximal for the given labeling."""
    edge_set = g.edge_set()
    if any(e not in edge_set for e in forest):
        return False
    uf = _UnionFind(g.n)
    if any(not uf.union(u, v) for u, v in forest):
        return False  # a repeated union means a cycle
    return len(forest) == g.n - len(set(labels))


def check_sketch_grid(max_n: int, max_d: int):
    """Exhaustive injectivity, round-trip, and size bound over a grid."""
    collisions = 0
    roundtrip_failures = 0
    size_violations = 0
    for n in range(1, max_n + 1):
        for d in range(0, min(max_d, n) + 1):
            params = sketch.cached_params(n, d)
            bound = 2 * d * ceil_log2(n + 1) + ceil_log2(n) + 2
            if params.p_bits > bound:
                size_violations += 1
            seen = {}
            for support in itertools.chain.from_iterable(
                    itertools.combinations(range(n), w) for w in range(d + 1)):
                vec = tuple(1 if i in support else 0 for i in range(n))
                y = sketch.encode(params, vec)
                if y in seen:
                    collisions += 1
                seen[y] = vec
                if sketch.decode(params, y, expected_weight=len(support)) != vec:
                    roundtrip_failures += 1
    ok = collisions == 0 and roundtrip_failures == 0 and size_violations == 0
    detail = (f"n<= {max_n}, d<= {max_d}: {collisions} collisions, "
              f"{roundtrip_failures} round-trip failures, {size_violations} size violations")
    return ok, detail


def check_prune(graphs, ds):
    failures = []
    total = 0
    for tag, g in graphs:
        for d in ds:
            if d > g.n:  # sketch parameters require d <= n
                continue
            total += 1
            result, transcript = prune_one_round(adjacency_inputs(g), d)
            seq, remaining = core_peel(g, d)
            params = sketch.cached_params(g.n, d)
            bits_bound = (ceil_log2(g.n) if g.n > 1 else 0) + params.p_bits
            ok = (result.sequence == seq
                  and result.remaining == remaining
                  and transcript.rounds_used == 1
                  and transcript.per_node_bits <= bits_bound)
            if ok and not remaining:
                ok = result.fully_reconstructed and result.reconstructed == g
            if not ok:
                failures.append(f"{tag} d={d}")
    return not failures, _detail(total, failures)


def check_multiround(graphs, eps_values):
    failures = []
    for tag, g in graphs:
        oracle_labels, _ = components_and_forest(g)
        for eps in eps_values:
            eps = Fraction(eps)
            labels, forest, transcript = spanning_forest_multiround(adjacency_inputs(g), eps)
            budget = -(-eps.denominator // eps.numerator)
            cap = max(1, pow_ceil(g.n, eps))
            per_id = ceil_log2(g.n) if g.n > 1 else 0
            bits_bound = ceil_log2(g.n + 1) + cap * per_id
            ok = (labels == oracle_labels
                  and forest_is_valid(g, labels, forest)
                  and transcript.rounds_used <= budget
                  and transcript.per_node_bits <= bits_bound)
            if not ok:
                failures.append(f"{tag} eps={eps}")
    return not failures, _detail(len(graphs) * len(eps_values), failures)


def check_one_round(r: int, graphs):
    failures = []
    for tag, g in graphs:
        oracle_labels, _ = components_and_forest(g)
        tr = tilde_global(g, r)
        local_rows = tuple(tilde_row_local(ball(g, v, r), v, r) for v in range(g.n))
        labels, forest, transcript = connectivity_one_round_r(ball_inputs(g, r), r)
        s = sparsity_parameter(g.n, r)
        params = sketch.cached_params(g.n, s)
        bits_bound = (ceil_log2(g.n) if g.n > 1 else 0) + params.p_bits
        ok = (labels == oracle_labels
              and transcript.rounds_used == 1
              and transcript.per_node_bits <= bits_bound
              and local_rows == tr.tilde.rows
              and components_and_forest(tr.tilde)[0] == oracle_labels
              and forest_is_valid(g, labels, forest)
              and set(forest) <= set(tr.tilde.edges())
              and (2 * r < 3 or not has_short_cycle(tr.tilde, 2 * r)))
        if not ok:
            failures.append(f"{tag} r={r}")
    return not failures, _detail(len(graphs), failures)


def _detail(total: int, failures: list[str]) -> str:
    if not failures:
        return f"{total} cases ok"
    shown = "; ".join(failures[:5])
    return f"{len(failures)}/{total} cases failed: {shown}"


_SUITES = {
    "small": {
        "sketch_grid": (8, 2),
        "corpus": (14, (2, 3, 4, 6, 8, 12, 16, 24), 100),
        "ds": (0, 1, 2),
        "eps": ("1", "1/2"),
        "one_round": {1: 4, 2: 6},
        "one_round_max_n": None,
    },
    "full": {
        "sketch_grid": (16, 3),
        "corpus": (40, (2, 3, 4, 5, 6, 8, 10, 12, 16, 20, 24, 32, 40, 48, 56, 63, 64), 200),
        "ds": (0, 1, 2, 3),
        "eps": ("1", "1/2", "1/3"),
        "one_round": {1: 8, 2: 10, 3: 10},
        "one_round_max_n": 40,
    },
}


def run_suite(name: str) -> dict:
    """Run one named suite and return {passed, cases: [{name, ok, detail}]}."""
    if name not in _SUITES:
        raise BcliqueError(f"unknown suite {name!r}; choose from {sorted(_SUITES)}")
    cfg = _SUITES[name]
    cases = []

    ok, detail = check_sketch_grid(*cfg["sketch_grid"])
    cases.append({"name": "sketch_injectivity_roundtrip_size", "ok": ok, "detail": detail})

    count, sizes, seed = cfg["corpus"]
    graphs = protocol_corpus(count, sizes, base_seed=seed)

    ok, detail = check_prune(graphs, cfg["ds"])
    cases.append({"name": "prune_matches_core_peel", "ok": ok, "detail": detail})

    ok, detail = check_multiround(graphs, cfg["eps"])
    cases.append({"name": "multiround_matches_components", "ok": ok, "detail": detail})

    for r, cnt in sorted(cfg["one_round"].items()):
        ok, detail = check_one_round(
            r, one_round_corpus(r, cnt, base_seed=seed, max_n=cfg["one_round_max_n"]))
        cases.append({"name": f"one_round_r{r}", "ok": ok, "detail": detail})

    return {"passed": all(c["ok"] for c in cases), "cases": cases}
