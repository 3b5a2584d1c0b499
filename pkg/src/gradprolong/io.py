"""Text formats for graphs, aggregates and sparse rational matrices.

All indices are 1-based.  ``#`` starts a comment; blank lines are ignored.

Graph::

    graph <N> <E>
    <edge_id> <tail> <head>        # E lines, ids 1..E in order

Aggregates::

    aggregates <N_coarse> <N_fine>
    <n>: <p1> <p2> ...             # one line per aggregate

Matrix::

    matrix <rows> <cols>
    <row> <col> <value>            # value is "a" or "a/b"
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .aggregation import Aggregation, NodalProlongation, build_reciprocal, load_alpha
from .errors import InputError
from .graph import Digraph
from .rational import format_rational, parse_rational


class FormatError(InputError):
    def __init__(self, path, line, message):
        self.path = str(path)
        self.line = line
        super().__init__(f"{path}:{line}: {message}")


def _lines(path):
    with open(path, encoding="utf-8") as fh:
        for number, raw in enumerate(fh, start=1):
            text = raw.split("#", 1)[0].strip()
            if text:
                yield number, text


def _header(path, lines, keyword, n_fields):
    try:
        number, text = next(lines)
    except StopIteration:
        raise FormatError(path, 1, f"empty file, expected '{keyword}' header") from None
    parts = text.split()
    if parts[0] != keyword or len(parts) != n_fields + 1:
        raise FormatError(path, number, f"expected header '{keyword}' followed by {n_fields} integers")
    try:
        return number, [int(x) for x in parts[1:]]
    except ValueError:
        raise FormatError(path, number, "header fields must be integers") from None


def _ints(path, number, parts):
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise FormatError(path, number, f"expected integers, got {' '.join(parts)!r}") from None


def read_graph(path) -> Digraph:
    lines = _lines(path)
    number, (n_nodes, n_edges) = _header(path, lines, "graph", 2)
    edges = []
    for number, text in lines:
        parts = text.split()
        if len(parts) != 3:
            raise FormatError(path, number, "expected '<edge_id> <tail> <head>'")
        eid, tail, head = _ints(path, number, parts)
        if eid != len(edges) + 1:
            raise FormatError(path, number, f"edge id {eid} out of sequence, expected {len(edges) + 1}")
        if not (1 <= tail <= n_nodes and 1 <= head <= n_nodes):
            raise FormatError(path, number, f"node index outside 1..{n_nodes}")
        if tail == head:
            raise FormatError(path, number, f"self-loop at node {tail}")
        edges.append((tail, head))
    if len(edges) != n_edges:
        raise FormatError(path, number, f"header announces {n_edges} edges, found {len(edges)}")
    return Digraph(n_nodes, tuple(edges))


def read_aggregates(path) -> Aggregation:
    lines = _lines(path)
    number, (n_coarse, n_fine) = _header(path, lines, "aggregates", 2)
    sets: dict[int, list[int]] = {}
    for number, text in lines:
        label, sep, rest = text.partition(":")
        if not sep:
            raise FormatError(path, number, "expected '<n>: <p1> <p2> ...'")
        (n,) = _ints(path, number, [label.strip()])
        if not 1 <= n <= n_coarse:
            raise FormatError(path, number, f"aggregate index {n} outside 1..{n_coarse}")
        if n in sets:
            raise FormatError(path, number, f"aggregate {n} listed twice")
        sets[n] = _ints(path, number, rest.split())
    missing = [n for n in range(1, n_coarse + 1) if n not in sets]
    if missing:
        raise FormatError(path, number, f"aggregates {missing} not listed")
    try:
        return build_reciprocal([sets[n] for n in range(1, n_coarse + 1)], n_fine)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


def read_matrix(path):
    """Return ``(rows, cols, triplets)`` with Fraction values."""
    lines = _lines(path)
    number, (n_rows, n_cols) = _header(path, lines, "matrix", 2)
    triplets = []
    for number, text in lines:
        parts = text.split()
        if len(parts) != 3:
            raise FormatError(path, number, "expected '<row> <col> <value>'")
        r, c = _ints(path, number, parts[:2])
        if not (1 <= r <= n_rows and 1 <= c <= n_cols):
            raise FormatError(path, number, f"entry ({r}, {c}) outside {n_rows} x {n_cols}")
        try:
            v = parse_rational(parts[2])
        except ValueError as exc:
            raise FormatError(path, number, str(exc)) from None
        triplets.append((r, c, v))
    return n_rows, n_cols, triplets


def read_alpha(path, agg: Aggregation) -> NodalProlongation:
    n_rows, n_cols, triplets = read_matrix(path)
    if (n_rows, n_cols) != (agg.fine_node_count, agg.coarse_node_count):
        raise InputError(
            f"{path}: alpha is {n_rows} x {n_cols}, expected {agg.fine_node_count} x {agg.coarse_node_count}"
        )
    try:
        return load_alpha(agg, triplets)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


def write_graph(path, g: Digraph) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"graph {g.node_count} {g.edge_count}\n")
        for i, (t, h) in enumerate(g.edges, start=1):
            fh.write(f"{i} {t} {h}\n")


def write_aggregates(path, agg: Aggregation) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"aggregates {agg.coarse_node_count} {agg.fine_node_count}\n")
        for n, members in enumerate(agg.sets, start=1):
            fh.write(f"{n}: {' '.join(str(p) for p in sorted(members))}\n")


def write_matrix(path, n_rows, n_cols, triplets) -> None:
    """Write nonzero triplets; zero entries (and hence zero rows) are omitted."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"matrix {n_rows} {n_cols}\n")
        for r, c, v in triplets:
            if v:
                fh.write(f"{r} {c} {format_rational(v)}\n")


def write_json(path, data) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")


@dataclass(frozen=True)
class Instance:
    fine: Digraph
    aggregation: Aggregation
    alpha: NodalProlongation | None = None
    coarse: Digraph | None = None


def load_instance(fine_path, aggregates_path, alpha_path=None, coarse_path=None) -> Instance:
    fine = read_graph(fine_path)
    agg = read_aggregates(aggregates_path)
    if agg.fine_node_count != fine.node_count:
        raise InputError(
            f"{aggregates_path}: covers {agg.fine_node_count} fine nodes, {fine_path} has {fine.node_count}"
        )
    alpha = read_alpha(alpha_path, agg) if alpha_path else None
    coarse = read_graph(coarse_path) if coarse_path else None
    if coarse is not None and coarse.node_count != agg.coarse_node_count:
        raise InputError(
            f"{coarse_path}: coarse graph has {coarse.node_count} nodes, expected {agg.coarse_node_count}"
        )
    return Instance(fine, agg, alpha, coarse)


INSTANCE_FILES = {"fine": "fine.graph", "aggregates": "aggregates.txt", "alpha": "alpha.mat", "coarse": "coarse.graph"}


def write_instance(instance: Instance, out_dir) -> dict[str, Path]:
    out = Path(out_dir)
    os.makedirs(out, exist_ok=True)
    paths = {"fine": out / INSTANCE_FILES["fine"], "aggregates": out / INSTANCE_FILES["aggregates"]}
    write_graph(paths["fine"], instance.fine)
    write_aggregates(paths["aggregates"], instance.aggregation)
    if instance.alpha is not None:
        paths["alpha"] = out / INSTANCE_FILES["alpha"]
        write_matrix(paths["alpha"], *instance.alpha.shape, instance.alpha.triplets())
    if instance.coarse is not None:
        paths["coarse"] = out / INSTANCE_FILES["coarse"]
        write_graph(paths["coarse"], instance.coarse)
    return paths

