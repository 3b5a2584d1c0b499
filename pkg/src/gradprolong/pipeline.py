"""End-to-end run: topology, row solves, verification, output files."""
from __future__ import annotations

import os
import time
from collections import Counter
from pathlib import Path

from .aggregation import default_alpha
from .io import Instance, write_graph, write_json, write_matrix
from .solver import INFEASIBLE, SKIPPED, SOLVED, solve
from .topology import build_topology

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2

OUTPUT_FILES = {"coarse": "coarse.graph", "beta": "beta.mat", "report": "report.json"}


def build_report(instance: Instance, topology, beta, solve_report, correction, elapsed=None) -> dict:
    """JSON-ready run summary.  Key order is fixed so files compare byte for byte."""
    rows = solve_report.rows
    disconnected = [
        {"edge": r.edge, "components": [sorted(c) for c in r.components]}
        for r in rows if r.status == INFEASIBLE
    ]
    histogram = Counter(r.cycle_rank for r in rows if r.status == SOLVED)
    report = {
        "instance": {
            "fine_nodes": topology.fine_graph.node_count,
            "fine_edges": topology.fine_graph.edge_count,
            "coarse_nodes": topology.coarse_graph.node_count,
            "coarse_edges": topology.coarse_graph.edge_count,
        },
        "coarse_graph": "supplied" if instance.coarse is not None else "built",
        "alpha": "supplied" if instance.alpha is not None else "default",
        "correction": correction,
        "commutativity": bool(solve_report.verified and beta is not None),
        "counts": {
            "solved": sum(1 for r in rows if r.status == SOLVED),
            "skipped": sum(1 for r in rows if r.status == SKIPPED),
            "infeasible": len(disconnected),
        },
        "connectivity": {
            "connected": len(rows) - len(disconnected),
            "disconnected": disconnected,
        },
        "cycle_rank_histogram": {str(k): histogram[k] for k in sorted(histogram)},
        "lemma2_violations": [str(v) for v in topology.lemma2_violations],
        "edges": [
            {
                "edge": r.edge,
                "status": r.status,
                "cycle_rank": r.cycle_rank,
                "root": r.root,
                "tree_edges": list(r.tree_edges),
            }
            for r in rows
        ],
    }
    if elapsed is not None:
        report["timing_seconds"] = round(elapsed, 6)
    return report


def run_pipeline(instance: Instance, out_dir, correction: str = "minnorm", timing: bool = False):
    """Solve ``instance`` and write coarse graph, beta and report into ``out_dir``.

    Returns ``(report, exit_code)``.  On infeasibility the beta file is not
    written; the report lists the disconnected induced subgraphs.
    """
    start = time.perf_counter()
    topology = build_topology(instance.fine, instance.aggregation, instance.coarse)
    alpha = instance.alpha or default_alpha(instance.aggregation)
    beta, solve_report = solve(topology, alpha, correction)
    elapsed = time.perf_counter() - start if timing else None
    report = build_report(instance, topology, beta, solve_report, correction, elapsed)

    out = Path(out_dir)
    os.makedirs(out, exist_ok=True)
    write_graph(out / OUTPUT_FILES["coarse"], topology.coarse_graph)
    beta_path = out / OUTPUT_FILES["beta"]
    if beta is not None:
        write_matrix(beta_path, *beta.shape, beta.triplets())
    elif beta_path.exists():
        beta_path.unlink()
    write_json(out / OUTPUT_FILES["report"], report)
    return report, (EXIT_OK if beta is not None else EXIT_INFEASIBLE)
