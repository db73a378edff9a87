"""Compare the compiled geometry extension against the pure-Python kernels.

Usage: python3 benchmarks/bench_kernels.py [ticks]
"""

import sys

from tiniscript.bench import run_bench

if __name__ == "__main__":
    run_bench(int(sys.argv[1]) if len(sys.argv) > 1 else 200_000)
