"""Compare the compiled and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--n 1024] [--seed 0]
"""
import argparse
import logging

from densecsp import bench

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1024, help="projection game size for squaring")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    logging.basicConfig(level=logging.ERROR)
    print(bench.format_table(bench.run_suite("kernels", seeds=args.n, seed=args.seed)), end="")
