"""Coarse edge prolongations that commute with the discrete gradient.

Given a fine digraph, an overlapping aggregation of its nodes and a nodal
prolongation ``alpha``, build a coarse digraph and an edge prolongation
``beta`` with ``G^h @ alpha == beta @ G^H`` in exact arithmetic.
"""
from .aggregation import (
    Aggregation,
    NodalProlongation,
    build_reciprocal,
    counterexample_alpha,
    default_alpha,
    load_alpha,
)
from .graph import (
    Cycle,
    Digraph,
    IncidenceMatrix,
    SpanningTree,
    build_incidence,
    connected_components,
    fundamental_cycles,
    spanning_tree,
)
from .kernels import BACKEND
from .solver import (
    EdgeProlongation,
    SolveReport,
    ThetaMatrix,
    assemble_and_verify,
    compute_theta,
    cycle_correction,
    default_correction_policy,
    infeasibility_witness,
    omitted_equation_check,
    solve,
    solve_row,
)
from .topology import (
    CoarseTopology,
    InducedSubgraph,
    build_coarse_graph,
    build_topology,
    compute_C,
    compute_I,
    induced_subgraphs,
)

__version__ = "0.1.0"
