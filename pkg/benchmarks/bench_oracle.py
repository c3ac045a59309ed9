"""Compiled versus pure-Python search kernel on the same encoded instances.

Only the kernel call is timed; encoding and decoding are shared. Both kernels
must return identical status, choices and node counts.

    python benchmarks/bench_oracle.py [--repeat 3]
"""
import argparse
import random
import sys
import time

from conewalk import oracle
from conewalk.io import generate_random_complex, parse_complex


def free_instances():
    for kind, n, seed in [("dodecahedron", 16, 0), ("dodecahedron", 32, 0),
                          ("cube", 32, 0), ("cube", 64, 1)]:
        cx = parse_complex(generate_random_complex(n, kind, seed))
        yield f"{kind} x{n} seed {seed}", cx, None


def restricted_instances(scan=40, min_nodes=1000):
    """Cube complexes with single-value restrictions on about half the 2-cells.

    Most draws are trivial; keep those needing at least ``min_nodes`` nodes.
    """
    rng = random.Random(5)
    fast = oracle.kernel("cython")
    for seed in range(scan):
        cx = parse_complex(generate_random_complex(12, "cube", seed))
        restriction = {tc.id: {rng.randrange(2)} for tc in cx.two_cells if rng.random() < 0.5}
        arrays, _ = oracle.encode(cx, restriction)
        if fast(*arrays, oracle.DEFAULT_BUDGET)[2] >= min_nodes:
            yield f"cube x12 restricted seed {seed}", cx, restriction


def best_time(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    args = ap.parse_args(argv)
    if oracle._search_ext is None:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1
    fast, slow = oracle.kernel("cython"), oracle.kernel("python")
    print(f"{'instance':34s} {'status':>6s} {'nodes':>8s} {'cython s':>10s} {'python s':>10s} {'speedup':>8s}")
    total_fast = total_slow = 0.0
    for name, cx, restriction in list(free_instances()) + list(restricted_instances()):
        arrays, _ = oracle.encode(cx, restriction)
        tf, rf = best_time(lambda: fast(*arrays, args.budget), args.repeat)
        ts, rs = best_time(lambda: slow(*arrays, args.budget), args.repeat)
        if (rf[0], list(rf[1] or ()), rf[2]) != (rs[0], list(rs[1] or ()), rs[2]):
            print(f"kernels disagree on {name}: {rf[0]}/{rf[2]} vs {rs[0]}/{rs[2]}", file=sys.stderr)
            return 1
        status = {1: "sat", 0: "unsat", -1: "budget"}[rf[0]]
        total_fast += tf
        total_slow += ts
        print(f"{name:34s} {status:>6s} {rf[2]:8d} {tf:10.5f} {ts:10.5f} {ts / max(tf, 1e-9):7.1f}x")
    print(f"{'total':34s} {'':>6s} {'':>8s} {total_fast:10.5f} {total_slow:10.5f} "
          f"{total_slow / max(total_fast, 1e-9):7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
