"""Brute-force solvability check for each row of the edge prolongation.

Everything here is recomputed from the raw definitions (aggregate membership,
induced subgraph, ``sum_r G^h[i, r] alpha[r, n]``) and the row system is
solved by dense Gaussian elimination, with no spanning tree involved.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .aggregation import default_alpha
from .errors import SizeLimit
from .graph import build_incidence
from .io import Instance
from .topology import build_coarse_graph, compute_C

SIZE_LIMIT = 12


@dataclass(frozen=True)
class OracleVerdict:
    edge: int
    solvable: bool
    coarse_nodes: tuple[int, ...]
    coarse_edges: tuple[int, ...]
    solution: dict | None


def row_system(instance: Instance, coarse, alpha, i):
    """Dense ``(matrix, rhs, nodes, edges)`` of the row system for fine edge ``i``."""
    fine, agg = instance.fine, instance.aggregation
    Gh = build_incidence(fine)
    GH = build_incidence(coarse)
    p, q = fine.edges[i - 1]
    nodes = sorted(n for n in range(1, agg.coarse_node_count + 1) if p in agg.members(n) or q in agg.members(n))
    node_set = set(nodes)
    edges = [e for e, (m, n) in enumerate(coarse.edges, start=1) if m in node_set and n in node_set]
    matrix = [[Fraction(GH[e, n]) for e in edges] for n in nodes]
    rhs = [sum((Gh[i, r] * alpha[r, n] for r in agg.members(n)), Fraction(0)) for n in nodes]
    return matrix, rhs, nodes, edges


def oracle_solve(instance: Instance, limit: int = SIZE_LIMIT) -> list[OracleVerdict]:
    """Per fine edge: is its row system solvable on the induced coarse subgraph?"""
    alpha = instance.alpha or default_alpha(instance.aggregation)
    coarse = instance.coarse
    if coarse is None:
        C, _ = compute_C(instance.aggregation, instance.fine)
        coarse = build_coarse_graph(instance.aggregation, C)
    verdicts = []
    for i in instance.fine.edge_ids():
        matrix, rhs, nodes, edges = row_system(instance, coarse, alpha, i)
        if len(nodes) > limit:
            raise SizeLimit(f"fine edge {i} touches {len(nodes)} coarse nodes (limit {limit})")
        if edges:
            x = linalg.solve(matrix, rhs)
        else:
            x = [] if all(b == 0 for b in rhs) else None
        solution = None if x is None else {e: v for e, v in zip(edges, x) if v}
        verdicts.append(OracleVerdict(i, x is not None, tuple(nodes), tuple(edges), solution))
    return verdicts
