"""Pure-Python combinatorial kernels.

Reference implementation of the functions in ``_ckernels.pyx``.  Both work on
local 0-based node and edge indices; edges are given as parallel ``tails`` and
``heads`` lists and their list position is their (ascending) order.
"""
from collections import deque


def _adjacency(n, tails, heads):
    adj = [[] for _ in range(n)]
    for e in range(len(tails)):
        adj[tails[e]].append(e)
        adj[heads[e]].append(e)
    return adj


def components(n, tails, heads):
    """Label weakly connected components.

    Labels are numbered in order of the smallest node they contain.
    """
    adj = _adjacency(n, tails, heads)
    labels = [-1] * n
    count = 0
    for start in range(n):
        if labels[start] >= 0:
            continue
        labels[start] = count
        stack = [start]
        while stack:
            u = stack.pop()
            for e in adj[u]:
                v = heads[e] if tails[e] == u else tails[e]
                if labels[v] < 0:
                    labels[v] = count
                    stack.append(v)
        count += 1
    return labels


def bfs_tree(n, tails, heads, root):
    """Breadth-first spanning tree, incident edges scanned in ascending order.

    Returns ``(order, parent, parent_edge)``; unreached nodes keep -1 in both
    parent arrays and are absent from ``order``.
    """
    adj = _adjacency(n, tails, heads)
    parent = [-1] * n
    parent_edge = [-1] * n
    seen = [False] * n
    seen[root] = True
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for e in adj[u]:
            v = heads[e] if tails[e] == u else tails[e]
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                parent_edge[v] = e
                order.append(v)
                queue.append(v)
    return order, parent, parent_edge


def tree_flow(order, parent, parent_edge, tails, demands, n_edges):
    """Solve the incidence-transpose system on a tree by leaf elimination.

    Finds edge values ``x`` with ``sum_e x[e] * G[e, v] == demands[v]`` for
    every non-root node ``v`` (``G[e, v]`` is -1 at the tail, +1 at the head).
    Returns ``(x, residual)`` where ``residual`` is what is left over at the
    root; it is zero iff the root equation holds too.
    """
    r = list(demands)
    x = [0] * n_edges
    for k in range(len(order) - 1, 0, -1):
        v = order[k]
        e = parent_edge[v]
        x[e] = -r[v] if tails[e] == v else r[v]
        r[parent[v]] += r[v]
    return x, r[order[0]]
