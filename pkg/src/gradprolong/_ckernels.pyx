# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled combinatorial kernels; same contracts as ``_pykernels``."""
from libc.stdlib cimport malloc, free


cdef int _csr(int n, list tails, list heads, int **start_out, int **edges_out) except -1:
    cdef int m = len(tails)
    cdef int *start = <int *> malloc((n + 1) * sizeof(int))
    cdef int *fill = <int *> malloc((n + 1) * sizeof(int))
    cdef int *edges = <int *> malloc((2 * m + 1) * sizeof(int))
    cdef int e, u, v, i
    if start == NULL or fill == NULL or edges == NULL:
        free(start); free(fill); free(edges)
        raise MemoryError()
    for i in range(n + 1):
        start[i] = 0
    for e in range(m):
        start[<int> tails[e] + 1] += 1
        start[<int> heads[e] + 1] += 1
    for i in range(n):
        start[i + 1] += start[i]
    for i in range(n + 1):
        fill[i] = start[i]
    for e in range(m):
        u = tails[e]
        v = heads[e]
        edges[fill[u]] = e
        fill[u] += 1
        edges[fill[v]] = e
        fill[v] += 1
    free(fill)
    start_out[0] = start
    edges_out[0] = edges
    return 0


def components(int n, list tails, list heads):
    cdef int m = len(tails)
    cdef int *start
    cdef int *adj
    cdef int *tl = <int *> malloc((m + 1) * sizeof(int))
    cdef int *hd = <int *> malloc((m + 1) * sizeof(int))
    cdef int *labels = <int *> malloc((n + 1) * sizeof(int))
    cdef int *stack = <int *> malloc((n + 1) * sizeof(int))
    cdef int top, u, v, e, k, s, count = 0
    if tl == NULL or hd == NULL or labels == NULL or stack == NULL:
        free(tl); free(hd); free(labels); free(stack)
        raise MemoryError()
    for e in range(m):
        tl[e] = tails[e]
        hd[e] = heads[e]
    _csr(n, tails, heads, &start, &adj)
    try:
        for s in range(n):
            labels[s] = -1
        for s in range(n):
            if labels[s] >= 0:
                continue
            labels[s] = count
            top = 0
            stack[top] = s
            top += 1
            while top > 0:
                top -= 1
                u = stack[top]
                for k in range(start[u], start[u + 1]):
                    e = adj[k]
                    v = hd[e] if tl[e] == u else tl[e]
                    if labels[v] < 0:
                        labels[v] = count
                        stack[top] = v
                        top += 1
            count += 1
        return [labels[s] for s in range(n)]
    finally:
        free(start); free(adj); free(tl); free(hd); free(labels); free(stack)


def bfs_tree(int n, list tails, list heads, int root):
    cdef int m = len(tails)
    cdef int *start
    cdef int *adj
    cdef int *tl = <int *> malloc((m + 1) * sizeof(int))
    cdef int *hd = <int *> malloc((m + 1) * sizeof(int))
    cdef int *par = <int *> malloc((n + 1) * sizeof(int))
    cdef int *pe = <int *> malloc((n + 1) * sizeof(int))
    cdef int *queue = <int *> malloc((n + 1) * sizeof(int))
    cdef char *seen = <char *> malloc((n + 1) * sizeof(char))
    cdef int head = 0, tail = 0, u, v, e, k, i
    if tl == NULL or hd == NULL or par == NULL or pe == NULL or queue == NULL or seen == NULL:
        free(tl); free(hd); free(par); free(pe); free(queue); free(seen)
        raise MemoryError()
    for e in range(m):
        tl[e] = tails[e]
        hd[e] = heads[e]
    _csr(n, tails, heads, &start, &adj)
    try:
        for i in range(n):
            par[i] = -1
            pe[i] = -1
            seen[i] = 0
        seen[root] = 1
        queue[tail] = root
        tail += 1
        while head < tail:
            u = queue[head]
            head += 1
            for k in range(start[u], start[u + 1]):
                e = adj[k]
                v = hd[e] if tl[e] == u else tl[e]
                if not seen[v]:
                    seen[v] = 1
                    par[v] = u
                    pe[v] = e
                    queue[tail] = v
                    tail += 1
        return ([queue[i] for i in range(tail)],
                [par[i] for i in range(n)],
                [pe[i] for i in range(n)])
    finally:
        free(start); free(adj); free(tl); free(hd)
        free(par); free(pe); free(queue); free(seen)


def tree_flow(list order, list parent, list parent_edge, list tails, list demands, int n_edges):
    """Integer leaf elimination.  Callers guarantee sum(|demands|) < 2**62."""
    cdef int n = len(demands)
    cdef int cnt = len(order)
    cdef long long *r = <long long *> malloc((n + 1) * sizeof(long long))
    cdef long long *x = <long long *> malloc((n_edges + 1) * sizeof(long long))
    cdef int k, v, e
    if r == NULL or x == NULL:
        free(r); free(x)
        raise MemoryError()
    try:
        for k in range(n):
            r[k] = demands[k]
        for k in range(n_edges):
            x[k] = 0
        for k in range(cnt - 1, 0, -1):
            v = order[k]
            e = parent_edge[v]
            if <int> tails[e] == v:
                x[e] = -r[v]
            else:
                x[e] = r[v]
            r[<int> parent[v]] += r[v]
        return [x[k] for k in range(n_edges)], r[<int> order[0]]
    finally:
        free(r); free(x)
