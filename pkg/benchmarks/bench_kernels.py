"""Compare the compiled and numpy kernels.

    python3 benchmarks/bench_kernels.py [--n 200000] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from ftl import _kernels_py

try:
    from ftl import _ckernels
except ImportError:
    _ckernels = None


def cases(n: int, rng: np.random.Generator):
    z = rng.normal(size=n) + 1j * rng.normal(size=n)
    w = rng.normal(size=n) + 1j * rng.normal(size=n)
    # upper half of a degree-6 real polynomial with every mixed term present
    terms = [(j, k) for j in range(1, 6) for k in range(1, j + 1) if j + k <= 6]
    js = np.array([t[0] for t in terms], dtype=np.int64)
    ks = np.array([t[1] for t in terms], dtype=np.int64)
    cs = rng.normal(size=len(terms)) + 1j * rng.normal(size=len(terms))
    return {
        "eval_mixed": lambda mod: mod.eval_mixed(js, ks, cs, z),
        "chordal": lambda mod: mod.chordal(z, w),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(0)
    print(f"{'kernel':<12}{'numpy ms':>12}{'cython ms':>12}{'speedup':>10}{'max diff':>12}")
    for name, call in cases(args.n, rng).items():
        t_py = min(timeit.repeat(lambda: call(_kernels_py), number=1, repeat=args.repeat)) * 1e3
        if _ckernels is None:
            print(f"{name:<12}{t_py:>12.2f}{'n/a':>12}")
            continue
        t_c = min(timeit.repeat(lambda: call(_ckernels), number=1, repeat=args.repeat)) * 1e3
        diff = float(np.max(np.abs(np.asarray(call(_kernels_py)) - np.asarray(call(_ckernels)))))
        print(f"{name:<12}{t_py:>12.2f}{t_c:>12.2f}{t_py / t_c:>10.2f}{diff:>12.2e}")


if __name__ == "__main__":
    main()
