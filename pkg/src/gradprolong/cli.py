"""Command-line interface.

    gradprolong build FINE AGGREGATES [--alpha A] [--coarse G] [--correction minnorm|zero] --out DIR
    gradprolong gen --seed S --nodes N --density D --aggregates K --overlap F --out DIR
    gradprolong oracle FINE AGGREGATES [--alpha A] [--coarse G] [--out DIR]
    gradprolong witness FINE AGGREGATES --coarse G [--edge I] --out DIR

Exit codes: 0 success, 1 input error, 2 infeasible coarse graph.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .aggregation import counterexample_alpha, default_alpha
from .errors import GenerationFailure, InputError, SizeLimit
from .generate import generate_instance
from .io import Instance, load_instance, write_instance, write_json, write_matrix
from .oracle import oracle_solve
from .pipeline import EXIT_INFEASIBLE, EXIT_INPUT, EXIT_OK, run_pipeline
from .rational import format_rational
from .solver import POLICIES, infeasibility_witness
from .topology import build_topology, induced_subgraph


def _u64(text):
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _instance_args(p, coarse_required=False):
    p.add_argument("fine", help="fine graph file")
    p.add_argument("aggregates", help="aggregates file")
    p.add_argument("--alpha", help="nodal prolongation triplet file (default: uniform split)")
    p.add_argument("--coarse", required=coarse_required,
                   help="coarse graph file" if coarse_required else "coarse graph file (default: built from aggregates)")


def make_parser():
    parser = argparse.ArgumentParser(prog="gradprolong", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build the coarse graph and the edge prolongation")
    _instance_args(p)
    p.add_argument("--correction", choices=sorted(POLICIES), default="minnorm")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--timing", action="store_true", help="record wall time in the report")

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--seed", type=_u64, required=True)
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--density", type=float, required=True, help="edge probability per node pair")
    p.add_argument("--aggregates", type=int, required=True)
    p.add_argument("--overlap", type=float, default=0.0, help="probability a node joins a second aggregate")
    p.add_argument("--random-alpha", action="store_true", help="also write a random compliant alpha")
    p.add_argument("--out", required=True)

    p = sub.add_parser("oracle", help="check every row system by dense elimination")
    _instance_args(p)
    p.add_argument("--out", help="write oracle.json here instead of stdout")

    p = sub.add_parser("witness", help="emit an alpha that defeats a disconnected coarse graph")
    _instance_args(p, coarse_required=True)
    p.add_argument("--edge", type=int, help="fine edge to target (default: first disconnected one)")
    p.add_argument("--out", required=True)
    return parser


def _load(args):
    return load_instance(args.fine, args.aggregates, args.alpha, args.coarse)


def cmd_build(args):
    report, code = run_pipeline(_load(args), args.out, args.correction, args.timing)
    if code == EXIT_INFEASIBLE:
        for entry in report["connectivity"]["disconnected"]:
            print(f"infeasible: fine edge {entry['edge']} has components {entry['components']}", file=sys.stderr)
    else:
        counts = report["counts"]
        print(f"commutativity verified: {counts['solved']} rows solved, {counts['skipped']} zero rows")
    return code


def cmd_gen(args):
    instance = generate_instance(args.seed, args.nodes, args.density, args.aggregates, args.overlap,
                                 with_alpha=args.random_alpha)
    paths = write_instance(instance, args.out)
    for key in sorted(paths):
        print(paths[key])
    return EXIT_OK


def cmd_oracle(args):
    verdicts = oracle_solve(_load(args))
    data = {
        "solvable": all(v.solvable for v in verdicts),
        "rows": [
            {
                "edge": v.edge,
                "solvable": v.solvable,
                "coarse_nodes": list(v.coarse_nodes),
                "coarse_edges": list(v.coarse_edges),
                "solution": None if v.solution is None
                else {str(e): format_rational(x) for e, x in sorted(v.solution.items())},
            }
            for v in verdicts
        ],
    }
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        write_json(Path(args.out) / "oracle.json", data)
    else:
        json.dump(data, sys.stdout, indent=2)
        sys.stdout.write("\n")
    return EXIT_OK if data["solvable"] else EXIT_INFEASIBLE


def cmd_witness(args):
    instance = _load(args)
    topology = build_topology(instance.fine, instance.aggregation, instance.coarse)
    if args.edge is not None:
        if not 1 <= args.edge <= instance.fine.edge_count:
            raise InputError(f"fine edge {args.edge} outside 1..{instance.fine.edge_count}")
        sub = induced_subgraph(topology, args.edge)
        if sub.connected:
            raise InputError(f"induced subgraph of fine edge {args.edge} is connected; no counterexample exists")
    else:
        sub = next((s for s in map(lambda i: induced_subgraph(topology, i), instance.fine.edge_ids())
                    if not s.connected), None)
        if sub is None:
            raise InputError("every induced subgraph is connected; no counterexample exists")
    component = sub.components[0]
    edge = instance.fine.edges[sub.fine_edge - 1]
    alpha = counterexample_alpha(instance.aggregation, edge, component)
    witness = infeasibility_witness(instance.fine, sub, alpha, component)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_matrix(out / "alpha.mat", *alpha.shape, alpha.triplets())
    write_json(out / "witness.json", {
        "edge": sub.fine_edge,
        "fine_edge": list(edge),
        "components": [sorted(c) for c in sub.components],
        "component": sorted(component),
        "witness": format_rational(witness),
    })
    print(f"fine edge {sub.fine_edge}: component {sorted(component)} carries net mass {format_rational(witness)}")
    return EXIT_OK


COMMANDS = {"build": cmd_build, "gen": cmd_gen, "oracle": cmd_oracle, "witness": cmd_witness}


def main(argv=None):
    args = make_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (InputError, GenerationFailure, SizeLimit, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
