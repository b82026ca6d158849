#!/usr/bin/env python3
"""Run all three protocols on a few seeded graphs and print round counts and
message sizes next to their budgets.

Usage:
    python3 scripts/protocols_demo.py [--n 32] [--seed 7]
"""

import argparse
from fractions import Fraction

from bclique.clique import adjacency_inputs, ball_inputs
from bclique.graph import components_and_forest, gen_graph
from bclique.intmath import ceil_log2, pow_ceil
from bclique.protocols import (
    connectivity_one_round_r,
    prune_one_round,
    spanning_forest_multiround,
    sparsity_parameter,
)
from bclique.sketch import cached_params


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=32)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    graphs = [
        ("cycle", gen_graph("cycle", args.n)),
        ("gnp q=0.1", gen_graph("gnp", args.n, seed=args.seed, q=0.1)),
        ("random_degenerate d=2", gen_graph("random_degenerate", args.n, seed=args.seed, d=2)),
    ]

    for tag, g in graphs:
        labels, _ = components_and_forest(g)
        comp = len(set(labels))
        print(f"== {tag}: n={g.n}, m={len(g.edges())}, components={comp}")

        for eps in (Fraction(1), Fraction(1, 2), Fraction(1, 3)):
            lab, forest, tr = spanning_forest_multiround(adjacency_inputs(g), eps)
            budget = -(-eps.denominator // eps.numerator)
            cap = max(1, pow_ceil(g.n, eps))
            bound = ceil_log2(g.n + 1) + cap * ceil_log2(g.n)
            assert lab == labels
            print(f"   forest eps={eps}: rounds {tr.rounds_used}/{budget}, "
                  f"bits {tr.per_node_bits}/{bound}, |forest|={len(forest)}")

        for d in (1, 2, 3):
            result, tr = prune_one_round(adjacency_inputs(g), d)
            params = cached_params(g.n, d)
            bound = ceil_log2(g.n) + params.p_bits
            print(f"   prune d={d}: peeled {len(result.sequence)}, "
                  f"remaining {len(result.remaining)}, bits {tr.per_node_bits}/{bound}")

        for r in (2, 3):
            lab, forest, tr = connectivity_one_round_r(ball_inputs(g, r), r)
            s = sparsity_parameter(g.n, r)
            params = cached_params(g.n, s)
            bound = ceil_log2(g.n) + params.p_bits
            assert lab == labels
            print(f"   one-round r={r}: s={s}, rounds {tr.rounds_used}/1, "
                  f"bits {tr.per_node_bits}/{bound}, |forest|={len(forest)}")


if __name__ == "__main__":
    main()
