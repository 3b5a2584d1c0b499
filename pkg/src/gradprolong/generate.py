"""Seeded random instances: connected fine digraph plus overlapping aggregates."""
from __future__ import annotations

import random
from collections import deque
from fractions import Fraction

from .aggregation import Aggregation, NodalProlongation, build_reciprocal, validate_alpha
from .errors import GenerationFailure, InputError
from .graph import Digraph, connected_components
from .io import Instance


def random_digraph(rng: random.Random, n_nodes: int, density: float, max_retries: int = 200) -> Digraph:
    """Erdos-Renyi graph with random orientations, redrawn until connected."""
    all_nodes = range(1, n_nodes + 1)
    for _ in range(max_retries):
        edges = []
        for u in range(1, n_nodes + 1):
            for v in range(u + 1, n_nodes + 1):
                if rng.random() < density:
                    edges.append((u, v) if rng.random() < 0.5 else (v, u))
        g = Digraph(n_nodes, tuple(edges))
        if len(connected_components(g, all_nodes, g.edge_ids())) == 1:
            return g
    raise GenerationFailure(f"no connected graph on {n_nodes} nodes at density {density} after {max_retries} draws")


def grow_aggregates(rng: random.Random, g: Digraph, n_aggregates: int, overlap_fraction: float) -> Aggregation:
    """Round-robin randomized BFS from distinct seeds, then optional overlap.

    Each fine node is first owned by exactly one aggregate.  With probability
    ``overlap_fraction`` a node then also joins a random aggregate owning one
    of its neighbours.
    """
    n = g.node_count
    neighbours: list[list[int]] = [[] for _ in range(n + 1)]
    for t, h in g.edges:
        neighbours[t].append(h)
        neighbours[h].append(t)
    for nb in neighbours:
        nb.sort()

    owner = [0] * (n + 1)
    seeds = rng.sample(range(1, n + 1), n_aggregates)
    queues = []
    for k, s in enumerate(seeds, start=1):
        owner[s] = k
        queues.append(deque([s]))
    assigned = n_aggregates
    while assigned < n:
        progressed = False
        for k, queue in enumerate(queues, start=1):
            while queue:
                u = queue.popleft()
                free = [v for v in neighbours[u] if not owner[v]]
                if not free:
                    continue
                rng.shuffle(free)
                for v in free:
                    owner[v] = k
                    queue.append(v)
                assigned += len(free)
                progressed = True
                break
        if not progressed:
            raise GenerationFailure("aggregate growth stalled; fine graph is not connected")

    sets = [set() for _ in range(n_aggregates)]
    for p in range(1, n + 1):
        sets[owner[p] - 1].add(p)
    for p in range(1, n + 1):
        if rng.random() < overlap_fraction:
            candidates = sorted({owner[v] for v in neighbours[p]} - {owner[p]})
            if candidates:
                sets[rng.choice(candidates) - 1].add(p)
    return build_reciprocal(sets, n)


def random_alpha(rng: random.Random, agg: Aggregation, max_weight: int = 5) -> NodalProlongation:
    """Random compliant alpha: nonnegative integer weights on the owners, normalized."""
    rows = []
    for owners in agg.reciprocal:
        owners = sorted(owners)
        weights = [rng.randint(0, max_weight) for _ in owners]
        if not any(weights):
            weights[rng.randrange(len(owners))] = 1
        total = sum(weights)
        rows.append({n: Fraction(w, total) for n, w in zip(owners, weights) if w})
    validate_alpha(agg, rows)
    return NodalProlongation(agg, tuple(rows))


def generate_instance(seed: int, n_fine_nodes: int, density: float, n_aggregates: int,
                      overlap_fraction: float, with_alpha: bool = False, max_retries: int = 200) -> Instance:
    """Deterministic function of its arguments."""
    if n_fine_nodes < 1 or n_aggregates < 1:
        raise InputError("node and aggregate counts must be positive")
    if n_aggregates > n_fine_nodes:
        raise InputError(f"cannot grow {n_aggregates} aggregates on {n_fine_nodes} nodes")
    if not 0 < density <= 1:
        raise InputError(f"density must lie in (0, 1], got {density}")
    if not 0 <= overlap_fraction <= 1:
        raise InputError(f"overlap fraction must lie in [0, 1], got {overlap_fraction}")
    rng = random.Random(seed)
    fine = random_digraph(rng, n_fine_nodes, density, max_retries)
    agg = grow_aggregates(rng, fine, n_aggregates, overlap_fraction)
    alpha = random_alpha(rng, agg) if with_alpha else None
    return Instance(fine, agg, alpha)
