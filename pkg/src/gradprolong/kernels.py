"""Kernel backend selection.

The compiled ``_ckernels`` module is used when it was built and imports
cleanly; otherwise the pure-Python ``_pykernels`` are used.  Setting
``GRADPROLONG_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _pykernels

_INT64_SAFE = 1 << 62

try:
    if os.environ.get("GRADPROLONG_PURE_PYTHON"):
        raise ImportError("pure-Python kernels requested")
    from . import _ckernels as _impl

    BACKEND = "compiled"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"


def components(n, tails, heads):
    return _impl.components(n, list(tails), list(heads))


def bfs_tree(n, tails, heads, root):
    return _impl.bfs_tree(n, list(tails), list(heads), root)


def tree_flow(order, parent, parent_edge, tails, demands, n_edges):
    demands = list(demands)
    # Tree flows are bounded by the total demand, so int64 cannot overflow below this.
    if _impl is not _pykernels and sum(abs(d) for d in demands) < _INT64_SAFE:
        return _impl.tree_flow(list(order), list(parent), list(parent_edge), list(tails), demands, n_edges)
    return _pykernels.tree_flow(order, parent, parent_edge, tails, demands, n_edges)
