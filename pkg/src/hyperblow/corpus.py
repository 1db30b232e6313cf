"""Seeded random instances for property sweeps."""

from __future__ import annotations

import itertools

import numpy as np

from .hypergraph import UniformHypergraph, complete_hypergraph, is_connected, link_set, sunflower


def random_connected_hypergraph(rng: np.random.Generator, t: int, r: int, density: float = 0.5,
                                max_tries: int = 10_000) -> UniformHypergraph:
    """Keep each r-subset of [t] with probability ``density`` until the result is connected."""
    candidates = list(itertools.combinations(range(1, t + 1), r))
    for _ in range(max_tries):
        keep = rng.random(len(candidates)) < density
        edges = tuple(e for e, k in zip(candidates, keep) if k)
        if edges:
            G = UniformHypergraph(r, t, edges)
            if is_connected(G):
                return G
    raise RuntimeError(f"no connected hypergraph found for t={t}, r={r}, density={density}")


def shift_pairs(G: UniformHypergraph) -> list[tuple[int, int]]:
    """Ordered pairs (i, j) that satisfy the adjacency and link-containment preconditions."""
    pairs = []
    for i, j in itertools.permutations(G.vertices, 2):
        if G.adjacent(i, j) and link_set(G, i, {j}) <= link_set(G, j, {i}):
            pairs.append((i, j))
    return pairs


def random_shift_instance(rng: np.random.Generator):
    """A complete or sunflower base with parts satisfying n_i - n_j >= 2 on a valid pair."""
    if rng.random() < 0.5:
        t = int(rng.integers(3, 6))
        r = int(rng.integers(2, min(t, 4) + 1))
        G = complete_hypergraph(t, r)
    else:
        r = int(rng.integers(3, 5))
        q = int(rng.integers(1, r))
        m = int(rng.integers(1, 4))
        G = sunflower(m, q, r)
    pairs = shift_pairs(G)
    i, j = pairs[int(rng.integers(len(pairs)))]
    parts = [int(v) for v in rng.integers(1, 4, size=G.order)]
    parts[i - 1] = parts[j - 1] + 2 + int(rng.integers(0, 3))
    return G, tuple(parts), i, j
