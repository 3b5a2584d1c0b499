"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--nodes 200000] [--repeat 5]

Kernel timings call both modules directly on the same large random graph.
The end-to-end timing re-runs the corpus solve in a subprocess per backend
so that import-time selection is exercised as in normal use.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from gradprolong import _pykernels

try:
    from gradprolong import _ckernels
except ImportError:
    _ckernels = None

END_TO_END = """
import random, time
from gradprolong import BACKEND, build_topology, default_alpha, solve
from gradprolong.generate import generate_instance
start = time.perf_counter()
for seed in range({seeds}):
    rng = random.Random(seed)
    n = rng.randint(10, 200)
    inst = generate_instance(seed, n, min(1.0, 5 / (n - 1)), rng.randint(2, min(20, n)), rng.uniform(0, 0.5))
    solve(build_topology(inst.fine, inst.aggregation), default_alpha(inst.aggregation))
print(BACKEND, time.perf_counter() - start)
"""


def random_graph(rng, n, avg_degree):
    tails, heads = [], []
    # a random spanning path keeps the graph connected
    perm = list(range(n))
    rng.shuffle(perm)
    for a, b in zip(perm, perm[1:]):
        tails.append(a)
        heads.append(b)
    for _ in range(n * (avg_degree - 2) // 2):
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b:
            tails.append(a)
            heads.append(b)
    return tails, heads


def bench(label, fn, repeat):
    best = min(timeit.repeat(fn, number=1, repeat=repeat))
    print(f"  {label:<10} {best * 1e3:10.2f} ms")
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nodes", type=int, default=200_000)
    ap.add_argument("--degree", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seeds", type=int, default=100)
    args = ap.parse_args()

    rng = random.Random(0)
    n = args.nodes
    tails, heads = random_graph(rng, n, args.degree)
    order, parent, parent_edge = _pykernels.bfs_tree(n, tails, heads, 0)
    demands = [rng.randint(-1000, 1000) for _ in range(n)]
    demands[0] -= sum(demands)
    print(f"graph: {n} nodes, {len(tails)} edges")

    modules = [("python", _pykernels)] + ([("compiled", _ckernels)] if _ckernels else [])
    if _ckernels is None:
        print("compiled extension not built; only the fallback is timed")
    else:
        assert _ckernels.components(n, tails, heads) == _pykernels.components(n, tails, heads)
        assert _ckernels.bfs_tree(n, tails, heads, 0) == (order, parent, parent_edge)
        assert (_ckernels.tree_flow(order, parent, parent_edge, tails, demands, len(tails))
                == _pykernels.tree_flow(order, parent, parent_edge, tails, demands, len(tails)))

    kernels = {
        "components": lambda m: m.components(n, tails, heads),
        "bfs_tree": lambda m: m.bfs_tree(n, tails, heads, 0),
        "tree_flow": lambda m: m.tree_flow(order, parent, parent_edge, tails, demands, len(tails)),
    }
    for name, call in kernels.items():
        print(name)
        times = {label: bench(label, lambda m=m: call(m), args.repeat) for label, m in modules}
        if len(times) == 2:
            print(f"  speedup    {times['python'] / times['compiled']:10.1f} x")

    print(f"end-to-end solve, {args.seeds} random instances")
    for pure in (False, True):
        env = dict(os.environ)
        env.pop("GRADPROLONG_PURE_PYTHON", None)
        if pure:
            env["GRADPROLONG_PURE_PYTHON"] = "1"
        out = subprocess.run([sys.executable, "-c", END_TO_END.format(seeds=args.seeds)],
                             env=env, capture_output=True, text=True, check=True).stdout.split()
        print(f"  {out[0]:<10} {float(out[1]):10.2f} s")


if __name__ == "__main__":
    main()
