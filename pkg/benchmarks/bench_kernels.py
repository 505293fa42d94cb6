"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--seed 0]
"""

import argparse
import random
import sys
import timeit

from updown import kernels
from updown.rules_symmetric import scaled_harmonics


def _cases(seed):
    rng = random.Random(seed)
    n, m, k = 16, 10, 4
    full = (1 << m) - 1
    app = [rng.getrandbits(m) for _ in range(n)]
    dis = [rng.getrandbits(m) & ~a & full for a in app]
    weights = scaled_harmonics(m)
    return {
        f"subset_sweep n={n}": lambda b: kernels.subset_sweep(app, dis, full, backend=b),
        f"extension_profile m={m} k={k}": lambda b: kernels.extension_profile(0b111, 0b11000, m, k, backend=b),
        f"pav_best n={n} m={m} k={k}": lambda b: kernels.pav_best(app, dis, m, k, weights, backend=b),
    }


def _plain(x):
    if isinstance(x, (tuple, list)):
        return [_plain(v) for v in x]
    return list(x) if hasattr(x, "__len__") and not isinstance(x, (str, bytes)) else x


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    if kernels.BACKEND != "compiled":
        print("compiled kernels unavailable or disabled; showing Python timings only")
    print(f"{'kernel':34} {'python (s)':>11} {'compiled (s)':>13} {'speedup':>8}")
    for name, run in _cases(args.seed).items():
        py = min(timeit.repeat(lambda: run("python"), number=1, repeat=args.repeat))
        if kernels.BACKEND == "compiled":
            if _plain(run("python")) != _plain(run("compiled")):
                raise SystemExit(f"backends disagree on {name}")
            cc = min(timeit.repeat(lambda: run("compiled"), number=1, repeat=args.repeat))
            print(f"{name:34} {py:11.4f} {cc:13.4f} {py / cc:7.1f}x")
        else:
            print(f"{name:34} {py:11.4f} {'-':>13} {'-':>8}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
