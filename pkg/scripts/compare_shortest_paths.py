"""Time Dijkstra (all sources), Floyd-Warshall and the Bellman-style oracle
on random connected graphs and confirm they agree.

    python3 scripts/compare_shortest_paths.py --sizes 10 20 40 --trials 5
"""

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from conftest import random_connected_topology  # noqa: E402
from wanplan.routing import brute_force_distances, dijkstra_all, floyd_warshall  # noqa: E402


def timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", type=int, nargs="+", default=[10, 20, 40])
    parser.add_argument("--trials", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    print(f"{'n':>4} {'dijkstra ms':>12} {'fw ms':>10} {'oracle ms':>10}  agree")
    for n in args.sizes:
        totals = [0.0, 0.0, 0.0]
        agree = True
        for _ in range(args.trials):
            topo = random_connected_topology(rng, n, 2 * n, max_weight=100)
            results = []
            for i, fn in enumerate((dijkstra_all, floyd_warshall, brute_force_distances)):
                out, dt = timed(fn, topo)
                totals[i] += dt
                results.append(out.dist)
            agree &= results[0] == results[1] == results[2]
        ms = [1000 * t / args.trials for t in totals]
        print(f"{n:>4} {ms[0]:>12.2f} {ms[1]:>10.2f} {ms[2]:>10.2f}  {agree}")


if __name__ == "__main__":
    main()
