"""Directed-graph primitives: incidence matrices, components, trees, cycles.

Nodes and edges are 1-based.  Edge ``i`` is stored as ``(tail, head)`` at
position ``i - 1``.  Every restricted operation takes an explicit node set and
edge set so the same graph object serves all induced subgraphs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import kernels
from .errors import DisconnectedInput, InvalidGraph


@dataclass(frozen=True)
class Digraph:
    node_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(t), int(h)) for t, h in self.edges))
        if self.node_count < 1:
            raise InvalidGraph(f"node_count must be positive, got {self.node_count}")
        for i, (t, h) in enumerate(self.edges, start=1):
            if not (1 <= t <= self.node_count and 1 <= h <= self.node_count):
                raise InvalidGraph(f"edge {i} = ({t}, {h}) references a node outside 1..{self.node_count}")
            if t == h:
                raise InvalidGraph(f"edge {i} is a self-loop at node {t}")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def tail(self, i: int) -> int:
        return self.edges[i - 1][0]

    def head(self, i: int) -> int:
        return self.edges[i - 1][1]

    def edge_ids(self) -> range:
        return range(1, len(self.edges) + 1)

    def flipped(self, edge_ids: Iterable[int]) -> "Digraph":
        """Copy with the listed edges reversed."""
        flip = set(edge_ids)
        return Digraph(
            self.node_count,
            tuple((h, t) if i in flip else (t, h) for i, (t, h) in enumerate(self.edges, start=1)),
        )


@dataclass(frozen=True)
class IncidenceMatrix:
    """Edge-by-node incidence matrix: -1 at the tail, +1 at the head."""

    graph: Digraph

    @property
    def shape(self) -> tuple[int, int]:
        return self.graph.edge_count, self.graph.node_count

    def row(self, i: int) -> dict[int, int]:
        t, h = self.graph.edges[i - 1]
        return {t: -1, h: 1}

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, n = key
        return self.row(i).get(n, 0)

    def entries(self):
        """Yield ``(edge, node, value)`` in row order, tail before head."""
        for i, (t, h) in enumerate(self.graph.edges, start=1):
            yield i, t, -1
            yield i, h, 1

    def to_dense(self) -> list[list[int]]:
        rows, cols = self.shape
        dense = [[0] * cols for _ in range(rows)]
        for i, n, v in self.entries():
            dense[i - 1][n - 1] = v
        return dense


def build_incidence(g: Digraph) -> IncidenceMatrix:
    return IncidenceMatrix(g)


def _localize(g, nodes, edges):
    node_list = sorted(nodes)
    edge_list = sorted(edges)
    index = {n: k for k, n in enumerate(node_list)}
    tails, heads = [], []
    for e in edge_list:
        t, h = g.edges[e - 1]
        if t not in index or h not in index:
            raise InvalidGraph(f"edge {e} = ({t}, {h}) leaves the restricted node set")
        tails.append(index[t])
        heads.append(index[h])
    return node_list, edge_list, index, tails, heads


def connected_components(g: Digraph, nodes: Iterable[int], edges: Iterable[int]) -> list[frozenset[int]]:
    """Weakly connected components of the restriction of ``g``.

    Components come sorted by their smallest node.
    """
    node_list, _, _, tails, heads = _localize(g, nodes, edges)
    if not node_list:
        return []
    labels = kernels.components(len(node_list), tails, heads)
    groups: list[set[int]] = [set() for _ in range(max(labels) + 1)]
    for k, lab in enumerate(labels):
        groups[lab].add(node_list[k])
    return [frozenset(s) for s in groups]


@dataclass(frozen=True)
class SpanningTree:
    root: int
    tree_edges: frozenset[int]
    parent: Mapping[int, tuple[int, int]]
    # BFS discovery order, root first; reversed it is a leaf-first elimination order.
    order: tuple[int, ...] = field(default=(), compare=False)

    def depth(self, node: int) -> int:
        d = 0
        while node != self.root:
            node = self.parent[node][0]
            d += 1
        return d


def spanning_tree(g: Digraph, nodes: Iterable[int], edges: Iterable[int], root: int) -> SpanningTree:
    """BFS spanning tree from ``root``, incident edges scanned by ascending id."""
    node_list, edge_list, index, tails, heads = _localize(g, nodes, edges)
    if root not in index:
        raise InvalidGraph(f"root {root} is not among the restricted nodes")
    order, parent, parent_edge = kernels.bfs_tree(len(node_list), tails, heads, index[root])
    if len(order) != len(node_list):
        missing = sorted(node_list[k] for k in range(len(node_list)) if k != index[root] and parent[k] < 0)
        raise DisconnectedInput(f"nodes {missing} are not reachable from root {root}")
    parents = {
        node_list[k]: (node_list[parent[k]], edge_list[parent_edge[k]])
        for k in range(len(node_list))
        if parent[k] >= 0
    }
    return SpanningTree(
        root=root,
        tree_edges=frozenset(e for _, e in parents.values()),
        parent=parents,
        order=tuple(node_list[k] for k in order),
    )


@dataclass(frozen=True)
class Cycle:
    """Signed edge coefficients of one closed walk."""

    coefficients: Mapping[int, int]

    def __getitem__(self, edge: int) -> int:
        return self.coefficients.get(edge, 0)

    def edges(self) -> list[int]:
        return sorted(self.coefficients)


def _depths(tree: SpanningTree) -> dict[int, int]:
    depth = {tree.root: 0}
    for v in tree.order[1:]:
        depth[v] = depth[tree.parent[v][0]] + 1
    return depth


def _tree_path(tree: SpanningTree, depth, start: int, end: int):
    """Nodes climbed from ``start`` and from ``end`` up to their common ancestor."""
    up_from_start, up_from_end = [], []
    a, b = start, end
    da, db = depth[a], depth[b]
    while da > db:
        up_from_start.append(a)
        a = tree.parent[a][0]
        da -= 1
    while db > da:
        up_from_end.append(b)
        b = tree.parent[b][0]
        db -= 1
    while a != b:
        up_from_start.append(a)
        up_from_end.append(b)
        a = tree.parent[a][0]
        b = tree.parent[b][0]
    return up_from_start, up_from_end


def fundamental_cycles(g: Digraph, nodes: Iterable[int], edges: Iterable[int], tree: SpanningTree) -> list[Cycle]:
    """One cycle per non-tree edge, in ascending edge order.

    The non-tree edge ``e = (t, h)`` gets +1; the tree path walked from ``h``
    back to ``t`` gets +1 on edges traversed tail to head and -1 otherwise.
    """
    nodes = set(nodes)
    edges = sorted(edges)
    if set(tree.parent) | {tree.root} != nodes:
        raise DisconnectedInput("tree does not span the restricted node set")
    depth = _depths(tree) if tree.order else {v: tree.depth(v) for v in nodes}
    cycles = []
    for e in edges:
        if e in tree.tree_edges:
            continue
        t, h = g.edges[e - 1]
        coeffs = {e: 1}
        climb, descend = _tree_path(tree, depth, h, t)
        for v in climb:
            # walking v -> parent(v)
            pe = tree.parent[v][1]
            coeffs[pe] = 1 if g.edges[pe - 1][0] == v else -1
        for v in descend:
            # walking parent(v) -> v
            pe = tree.parent[v][1]
            coeffs[pe] = 1 if g.edges[pe - 1][1] == v else -1
        cycles.append(Cycle(coeffs))
    return cycles
