"""Compare the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--order 2048] [--points 256] [--repeat 5]

Each kernel is timed on the same inputs with both implementations; the
outputs are also compared so a speedup never hides a wrong answer.
"""

import argparse
import timeit

import numpy as np

from qbohr import _pykernels

try:
    from qbohr import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=2048)
    ap.add_argument("--points", type=int, default=256)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    n = args.order + 1
    a = rng.uniform(-1, 1, (n, 4))
    b = rng.uniform(-1, 1, (n, 4))
    pts = rng.uniform(-0.5, 0.5, (args.points, 4))
    # sum |s_k| over k >= 1 stays below s_0, so the inverse series decays
    s = np.concatenate([[2.0], 0.2 * rng.uniform(-1, 1, 8)])

    cases = {
        f"star_convolve  {n}x{n}": lambda m: m.star_convolve(a, b, n),
        f"horner         K={args.order}, {args.points} pts": lambda m: m.horner(a, pts),
        f"real_inverse   {n} terms": lambda m: m.real_inverse(s, n),
    }
    if _ckernels is None:
        print("compiled extension not built; timing the numpy fallback only")
    print(f"{'kernel':<40}{'numpy (ms)':>12}{'cython (ms)':>13}{'speedup':>9}{'rel diff':>12}")
    for name, call in cases.items():
        t_py = best_of(lambda: call(_pykernels), args.repeat)
        if _ckernels is None:
            print(f"{name:<40}{t_py * 1e3:>12.3f}")
            continue
        t_c = best_of(lambda: call(_ckernels), args.repeat)
        ref = call(_pykernels)
        diff = float(np.abs(ref - call(_ckernels)).max() / max(np.abs(ref).max(), 1e-300))
        print(f"{name:<40}{t_py * 1e3:>12.3f}{t_c * 1e3:>13.3f}{t_py / t_c:>8.1f}x{diff:>12.1e}")


if __name__ == "__main__":
    main()
