"""Index-set machinery linking fine edges to coarse nodes and coarse edges.

For a fine edge ``i = (p, q)``:

* ``C_tilde[i]`` - coarse nodes whose aggregate touches ``p`` or ``q``;
* ``I_tilde[i]`` - coarse edges whose both ends lie in ``C_tilde[i]``;
* the induced coarse subgraph on ``C_tilde[i]`` must be connected for the
  row of the edge prolongation to be solvable.

Maps keyed by a 1-based index are stored as tuples at position ``index - 1``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import combinations

from .aggregation import Aggregation
from .errors import InputError, InternalInconsistency, Lemma2Violation
from .graph import Digraph, connected_components


@dataclass(frozen=True)
class CoarseTopology:
    fine_graph: Digraph
    aggregation: Aggregation
    coarse_graph: Digraph
    C: tuple[frozenset[int], ...]
    C_tilde: tuple[frozenset[int], ...]
    I: tuple[frozenset[int], ...]
    I_tilde: tuple[frozenset[int], ...]
    F_tilde: frozenset[int]
    lemma2_violations: tuple[Lemma2Violation, ...] = field(default=(), compare=False)

    def coarse_nodes_of(self, i: int) -> frozenset[int]:
        return self.C_tilde[i - 1]

    def coarse_edges_of(self, i: int) -> frozenset[int]:
        return self.I_tilde[i - 1]


@dataclass(frozen=True)
class InducedSubgraph:
    fine_edge: int
    nodes: frozenset[int]
    edges: frozenset[int]
    components: tuple[frozenset[int], ...]
    graph: Digraph = field(repr=False, compare=False)

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    @property
    def cycle_rank(self) -> int:
        """Dimension of the cycle space, ``|edges| - |nodes| + #components``."""
        return len(self.edges) - len(self.nodes) + len(self.components)


def compute_C(agg: Aggregation, fine: Digraph):
    """Fine edges touching each aggregate, and coarse nodes touched by each fine edge.

    ``C_tilde`` is obtained by inverting ``C`` and cross-checked against the
    direct formula ``owners(p) | owners(q)``.
    """
    if agg.fine_node_count != fine.node_count:
        raise InputError(
            f"aggregation covers {agg.fine_node_count} fine nodes but the fine graph has {fine.node_count}"
        )
    incident: list[list[int]] = [[] for _ in range(fine.node_count)]
    for i, (t, h) in enumerate(fine.edges, start=1):
        incident[t - 1].append(i)
        incident[h - 1].append(i)
    C = tuple(frozenset(i for p in members for i in incident[p - 1]) for members in agg.sets)

    inverted: list[set[int]] = [set() for _ in range(fine.edge_count)]
    for n, edges in enumerate(C, start=1):
        for i in edges:
            inverted[i - 1].add(n)
    C_tilde = []
    for i, (p, q) in enumerate(fine.edges, start=1):
        direct = agg.owners(p) | agg.owners(q)
        if direct != inverted[i - 1]:
            raise InternalInconsistency(f"fine edge {i}: {sorted(direct)} != {sorted(inverted[i - 1])}")
        C_tilde.append(direct)
    return C, tuple(C_tilde)


def build_coarse_graph(agg: Aggregation, C) -> Digraph:
    """Coarse edge ``m -> n`` (``m < n``) for every pair of aggregates sharing a fine edge.

    Edge ids follow lexicographic ``(m, n)`` order.
    """
    touching: dict[int, set[int]] = {}
    for n, edges in enumerate(C, start=1):
        for i in edges:
            touching.setdefault(i, set()).add(n)
    pairs = set()
    for nodes in touching.values():
        pairs.update(combinations(sorted(nodes), 2))
    return Digraph(agg.coarse_node_count, tuple(sorted(pairs)))


def compute_I(coarse: Digraph, C, C_tilde, strict: bool = False):
    """Fine-edge supports ``I_e = C_m & C_n`` of the coarse edges and their inverse.

    Returns ``(I, I_tilde, F_tilde, violations)``.  Every ``I_tilde[i]`` is
    compared with the edge set of the coarse subgraph induced by
    ``C_tilde[i]``; mismatches are collected (or raised with ``strict``).
    """
    if coarse.node_count != len(C):
        raise InputError(f"coarse graph has {coarse.node_count} nodes but there are {len(C)} aggregates")
    I = tuple(C[m - 1] & C[n - 1] for m, n in coarse.edges)
    I_tilde: list[set[int]] = [set() for _ in range(len(C_tilde))]
    for e, fine_edges in enumerate(I, start=1):
        for i in fine_edges:
            I_tilde[i - 1].add(e)
    F_tilde = frozenset(i for i, s in enumerate(I_tilde, start=1) if s)

    by_pair: dict[frozenset[int], list[int]] = {}
    for e, (m, n) in enumerate(coarse.edges, start=1):
        by_pair.setdefault(frozenset((m, n)), []).append(e)
    violations = []
    for i, nodes in enumerate(C_tilde, start=1):
        induced = set()
        for pair in combinations(sorted(nodes), 2):
            induced.update(by_pair.get(frozenset(pair), ()))
        if induced != I_tilde[i - 1]:
            err = Lemma2Violation(i, induced, I_tilde[i - 1])
            if strict:
                raise err
            violations.append(err)
    for err in violations:
        warnings.warn(str(err), RuntimeWarning, stacklevel=2)
    return I, tuple(frozenset(s) for s in I_tilde), F_tilde, tuple(violations)


def build_topology(fine: Digraph, agg: Aggregation, coarse: Digraph | None = None) -> CoarseTopology:
    """Derive all index sets; build the coarse graph unless one is supplied."""
    C, C_tilde = compute_C(agg, fine)
    if coarse is None:
        coarse = build_coarse_graph(agg, C)
    I, I_tilde, F_tilde, violations = compute_I(coarse, C, C_tilde)
    return CoarseTopology(fine, agg, coarse, C, C_tilde, I, I_tilde, F_tilde, violations)


def induced_subgraph(topology: CoarseTopology, i: int) -> InducedSubgraph:
    nodes = topology.C_tilde[i - 1]
    edges = topology.I_tilde[i - 1]
    comps = connected_components(topology.coarse_graph, nodes, edges)
    return InducedSubgraph(i, nodes, edges, tuple(comps), topology.coarse_graph)


def induced_subgraphs(topology: CoarseTopology) -> list[InducedSubgraph]:
    """One record per fine edge, in fine edge order."""
    return [induced_subgraph(topology, i) for i in topology.fine_graph.edge_ids()]
