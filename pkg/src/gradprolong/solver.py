"""Edge prolongation: row-by-row tree-flow solves plus cycle corrections.

Row ``i`` of ``beta`` must satisfy, for every coarse node ``n`` in
``C_tilde[i]``::

    sum over coarse edges e in I_tilde[i] of beta[i, e] * G^H[e, n] == theta[i, n]

with ``theta = G^h alpha``.  This is a flow problem on the induced coarse
subgraph.  A particular solution lives on a BFS spanning tree and is found by
leaf elimination; the remaining freedom is the cycle space of the subgraph,
fixed here by a pluggable correction policy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from . import kernels, linalg
from .aggregation import NodalProlongation
from .errors import InputError, Infeasible, InternalInconsistency, VerificationFailure
from .graph import Cycle, IncidenceMatrix, SpanningTree, build_incidence, fundamental_cycles, spanning_tree
from .topology import CoarseTopology, InducedSubgraph, induced_subgraph

SOLVED = "solved"
SKIPPED = "skipped-not-in-F"
INFEASIBLE = "infeasible"

ZERO = Fraction(0)


@dataclass(frozen=True)
class ThetaMatrix:
    """Sparse rows of ``G^h alpha``."""

    rows: tuple[Mapping[int, Fraction], ...]
    n_cols: int

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.n_cols

    def row(self, i: int) -> Mapping[int, Fraction]:
        return self.rows[i - 1]

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, n = key
        return self.rows[i - 1].get(n, ZERO)


def _sparse_sub(a, b):
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, ZERO) - v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def compute_theta(Gh: IncidenceMatrix, alpha: NodalProlongation) -> ThetaMatrix:
    """``theta[i] = alpha[q] - alpha[p]`` for fine edge ``i = (p, q)``.

    Checks that each row is supported on ``owners(p) | owners(q)`` and sums to 0.
    """
    n_edges, n_nodes = Gh.shape
    if n_nodes != alpha.shape[0]:
        raise InputError(f"G^h has {n_nodes} columns but alpha has {alpha.shape[0]} rows")
    agg = alpha.aggregation
    rows = []
    for i, (p, q) in enumerate(Gh.graph.edges, start=1):
        row = _sparse_sub(alpha.row(q), alpha.row(p))
        if not row.keys() <= (agg.owners(p) | agg.owners(q)):
            raise InternalInconsistency(f"theta row {i} leaves the coarse node set of the edge")
        if sum(row.values(), ZERO) != 0:
            raise InternalInconsistency(f"theta row {i} does not sum to zero")
        rows.append(row)
    return ThetaMatrix(tuple(rows), alpha.shape[1])


def row_residual(sub: InducedSubgraph, beta_row, theta_row) -> dict[int, Fraction]:
    """``(beta G^{H,i})[n] - theta[n]`` for every node of the subgraph, zeros dropped."""
    lhs = {n: ZERO for n in sub.nodes}
    for e, b in beta_row.items():
        if e not in sub.edges:
            raise InternalInconsistency(f"beta row of fine edge {sub.fine_edge} uses coarse edge {e} outside I_tilde")
        t, h = sub.graph.edges[e - 1]
        lhs[t] -= b
        lhs[h] += b
    out = {}
    for n in sub.nodes:
        d = lhs[n] - theta_row.get(n, ZERO)
        if d:
            out[n] = d
    return out


def solve_row(i: int, sub: InducedSubgraph, theta_row, tree: SpanningTree | None = None) -> dict[int, Fraction]:
    """Particular solution supported on a spanning tree of the induced subgraph.

    The root is the smallest coarse node.  Right-hand sides are scaled to a
    common denominator so the elimination itself runs on integers.
    """
    if not sub.connected:
        raise Infeasible(i, sub.components)
    if tree is None:
        tree = spanning_tree(sub.graph, sub.nodes, sub.edges, min(sub.nodes))
    order = tree.order
    pos = {v: k for k, v in enumerate(order)}
    tree_edges = [tree.parent[v][1] for v in order[1:]]
    edge_pos = {e: k for k, e in enumerate(tree_edges)}
    parent = [-1] + [pos[tree.parent[v][0]] for v in order[1:]]
    parent_edge = [-1] + [edge_pos[tree.parent[v][1]] for v in order[1:]]
    tails = [pos[sub.graph.edges[e - 1][0]] for e in tree_edges]

    values = [Fraction(theta_row.get(v, ZERO)) for v in order]
    scale = math.lcm(*(x.denominator for x in values)) if values else 1
    demands = [x.numerator * (scale // x.denominator) for x in values]
    flows, _ = kernels.tree_flow(range(len(order)), parent, parent_edge, tails, demands, len(tree_edges))
    return {e: Fraction(f, scale) for e, f in zip(tree_edges, flows) if f}


def omitted_equation_check(sub: InducedSubgraph, beta_row, theta_row, root: int | None = None) -> bool:
    """True iff the root equation, skipped by the tree solve, holds."""
    root = min(sub.nodes) if root is None else root
    lhs = ZERO
    for e, b in beta_row.items():
        t, h = sub.graph.edges[e - 1]
        if t == root:
            lhs -= b
        elif h == root:
            lhs += b
    return lhs == theta_row.get(root, ZERO)


def cycle_correction(i: int, sub: InducedSubgraph, coefficients: Sequence, cycles: Sequence[Cycle] | None = None,
                     tree: SpanningTree | None = None) -> dict[int, Fraction]:
    """Combination ``sum_j coefficients[j] * cycles[j]`` of the fundamental cycles."""
    if cycles is None:
        if tree is None:
            tree = spanning_tree(sub.graph, sub.nodes, sub.edges, min(sub.nodes))
        cycles = fundamental_cycles(sub.graph, sub.nodes, sub.edges, tree)
    if len(coefficients) != len(cycles):
        raise InputError(f"fine edge {i}: expected {len(cycles)} cycle coefficients, got {len(coefficients)}")
    out: dict[int, Fraction] = {}
    for c, cyc in zip(coefficients, cycles):
        if not c:
            continue
        for e, s in cyc.coefficients.items():
            out[e] = out.get(e, ZERO) + s * Fraction(c)
    return {e: v for e, v in out.items() if v}


CorrectionPolicy = Callable[[int, InducedSubgraph, Mapping[int, Fraction], Sequence[Cycle]], Sequence[Fraction]]


def minimal_norm_policy(i, sub, beta_prime, cycles):
    """Coefficients making ``beta_prime + correction`` of least Euclidean norm.

    Solves the normal equations ``(Z^T Z) c = -Z^T beta_prime`` where the
    columns of ``Z`` are the cycles.
    """
    k = len(cycles)
    if k == 0:
        return []
    gram = [[Fraction(0)] * k for _ in range(k)]
    rhs = [Fraction(0)] * k
    for a in range(k):
        ca = cycles[a].coefficients
        rhs[a] = -sum((s * beta_prime.get(e, ZERO) for e, s in ca.items()), ZERO)
        for b in range(a, k):
            cb = cycles[b].coefficients
            small, big = (ca, cb) if len(ca) <= len(cb) else (cb, ca)
            g = Fraction(sum(s * big[e] for e, s in small.items() if e in big))
            gram[a][b] = gram[b][a] = g
    coeffs = linalg.solve(gram, rhs)
    if coeffs is None:
        raise InternalInconsistency(f"fine edge {i}: singular cycle Gram matrix")
    return coeffs


def zero_policy(i, sub, beta_prime, cycles):
    """Keep the tree solution untouched."""
    return [ZERO] * len(cycles)


POLICIES: dict[str, CorrectionPolicy] = {"minnorm": minimal_norm_policy, "zero": zero_policy}

default_correction_policy = minimal_norm_policy


@dataclass(frozen=True)
class RowResult:
    edge: int
    status: str
    beta: Mapping[int, Fraction] = field(default_factory=dict)
    root: int | None = None
    tree_edges: tuple[int, ...] = ()
    cycle_rank: int = 0
    omitted_ok: bool = True
    components: tuple[frozenset[int], ...] = ()


@dataclass(frozen=True)
class EdgeProlongation:
    rows: tuple[Mapping[int, Fraction], ...]
    n_cols: int
    info: tuple[RowResult, ...] = field(default=(), compare=False, repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.n_cols

    def row(self, i: int) -> Mapping[int, Fraction]:
        return self.rows[i - 1]

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, e = key
        return self.rows[i - 1].get(e, ZERO)

    def triplets(self):
        for i, row in enumerate(self.rows, start=1):
            for e in sorted(row):
                yield i, e, row[e]

    def times_incidence(self, GH: IncidenceMatrix) -> list[dict[int, Fraction]]:
        """Sparse rows of ``beta @ G^H``, zeros dropped."""
        out = []
        for row in self.rows:
            acc: dict[int, Fraction] = {}
            for e, b in row.items():
                for n, g in GH.row(e).items():
                    acc[n] = acc.get(n, ZERO) + g * b
            out.append({n: v for n, v in acc.items() if v})
        return out


@dataclass(frozen=True)
class SolveReport:
    rows: tuple[RowResult, ...]
    verified: bool

    def count(self, status: str) -> int:
        return sum(1 for r in self.rows if r.status == status)

    @property
    def infeasible(self) -> list[RowResult]:
        return [r for r in self.rows if r.status == INFEASIBLE]


def _fine_times_alpha(Gh: IncidenceMatrix, alpha: NodalProlongation) -> list[dict[int, Fraction]]:
    out = []
    for i in range(1, Gh.shape[0] + 1):
        acc: dict[int, Fraction] = {}
        for r, g in Gh.row(i).items():
            for n, a in alpha.row(r).items():
                acc[n] = acc.get(n, ZERO) + g * a
        out.append({n: v for n, v in acc.items() if v})
    return out


def assemble_and_verify(Gh: IncidenceMatrix, alpha: NodalProlongation, GH: IncidenceMatrix,
                        rows: Sequence[RowResult], topology: CoarseTopology | None = None):
    """Gather solved rows into ``beta`` and check ``G^h alpha == beta G^H`` entrywise.

    With a topology, also checks that nonzeros of ``beta`` sit inside the
    allowed supports and that rows outside ``F_tilde`` are zero.
    """
    if len(rows) != Gh.shape[0]:
        raise InputError(f"expected {Gh.shape[0]} rows, got {len(rows)}")
    bad = [r.edge for r in rows if r.status == INFEASIBLE]
    if bad:
        raise Infeasible(bad[0], rows[bad[0] - 1].components)
    beta = EdgeProlongation(tuple(dict(r.beta) for r in rows), GH.shape[0], tuple(rows))

    if topology is not None:
        for i, row in enumerate(beta.rows, start=1):
            if i not in topology.F_tilde and row:
                raise VerificationFailure(i, min(row), ZERO, row[min(row)])
            for e in row:
                if i not in topology.I[e - 1]:
                    raise InternalInconsistency(f"beta[{i}, {e}] is nonzero but fine edge {i} is not in I_{e}")

    lhs = _fine_times_alpha(Gh, alpha)
    rhs = beta.times_incidence(GH)
    for i, (a, b) in enumerate(zip(lhs, rhs), start=1):
        if a != b:
            n = min(k for k in a.keys() | b.keys() if a.get(k, ZERO) != b.get(k, ZERO))
            raise VerificationFailure(i, n, a.get(n, ZERO), b.get(n, ZERO))
    return beta, SolveReport(tuple(rows), verified=True)


def solve_edge(i: int, sub: InducedSubgraph, theta_row, policy: CorrectionPolicy = minimal_norm_policy,
               coefficients: Sequence | None = None) -> RowResult:
    """Full treatment of one fine edge: tree solve, root check, cycle correction."""
    if not sub.connected:
        return RowResult(i, INFEASIBLE, components=sub.components)
    if not sub.edges:
        if theta_row:
            raise InternalInconsistency(f"fine edge {i} has no coarse edges but a nonzero theta row")
        return RowResult(i, SKIPPED, root=min(sub.nodes))
    root = min(sub.nodes)
    tree = spanning_tree(sub.graph, sub.nodes, sub.edges, root)
    beta_prime = solve_row(i, sub, theta_row, tree)
    ok = omitted_equation_check(sub, beta_prime, theta_row, root)
    if not ok:
        raise InternalInconsistency(f"fine edge {i}: omitted root equation fails")
    cycles = fundamental_cycles(sub.graph, sub.nodes, sub.edges, tree)
    if coefficients is None:
        coefficients = policy(i, sub, beta_prime, cycles)
    correction = cycle_correction(i, sub, coefficients, cycles)
    row = dict(beta_prime)
    for e, v in correction.items():
        w = row.get(e, ZERO) + v
        if w:
            row[e] = w
        else:
            row.pop(e, None)
    return RowResult(i, SOLVED, row, root, tuple(sorted(tree.tree_edges)), len(cycles), ok)


def solve(topology: CoarseTopology, alpha: NodalProlongation, policy: CorrectionPolicy | str = "minnorm"):
    """Solve every row and verify the result.

    Returns ``(beta, report)``; ``beta`` is None when some induced subgraph is
    disconnected, in which case the report lists the infeasible rows.
    """
    if isinstance(policy, str):
        try:
            policy = POLICIES[policy]
        except KeyError:
            raise InputError(f"unknown correction policy {policy!r}; choose from {sorted(POLICIES)}") from None
    if alpha.aggregation != topology.aggregation:
        raise InputError("alpha was built for a different aggregation")
    Gh = build_incidence(topology.fine_graph)
    GH = build_incidence(topology.coarse_graph)
    theta = compute_theta(Gh, alpha)
    rows = [solve_edge(i, induced_subgraph(topology, i), theta.row(i), policy)
            for i in topology.fine_graph.edge_ids()]
    if any(r.status == INFEASIBLE for r in rows):
        return None, SolveReport(tuple(rows), verified=False)
    return assemble_and_verify(Gh, alpha, GH, rows, topology)


def infeasibility_witness(fine, sub: InducedSubgraph, alpha: NodalProlongation, component=None) -> Fraction:
    """Net ``theta`` mass of fine edge ``sub.fine_edge`` inside one component.

    Any admissible ``beta`` row sums to zero over a component, so a nonzero
    value proves the row unsolvable.  Defaults to the first component.
    """
    comp = sub.components[0] if component is None else frozenset(component)
    p, q = fine.edges[sub.fine_edge - 1]
    return sum((alpha[q, n] - alpha[p, n] for n in comp), ZERO)
