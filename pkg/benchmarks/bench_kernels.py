"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both implementations are imported directly, so the comparison does not
depend on FFCN_PURE_PYTHON.  Results of the two are checked for equality.
"""

from __future__ import annotations

import argparse
import random
import timeit

from ffcn import _kernels_py

try:
    from ffcn import _kernels
except ImportError:
    _kernels = None


def _cases(rng: random.Random):
    d0_q3 = [rng.randrange(3) for _ in range(6)] + [1]
    d0_q5 = [rng.randrange(5) for _ in range(4)] + [2]
    curve = [1, 2, 0, 1]  # t^3 + 2t + 1
    f7 = [2, 0, 1, 0, 0, 0, 0, 1]  # t^7 + t^2 + 2, irreducible
    pairs = [
        ([rng.randrange(5) for _ in range(13)], [rng.randrange(5) for _ in range(10)] + [1])
        for _ in range(200)
    ]
    return [
        ("jacobi q=5 deg 12/10 x200", lambda k: [k.jacobi(a, b, 5) for a, b in pairs]),
        ("char_sums q=3 deg 7, n<=7", lambda k: k.char_sums(3, d0_q3, 7)),
        ("char_sums q=5 deg 5, n<=5", lambda k: k.char_sums(5, d0_q5, 5)),
        ("quadratic_char_sum F_3^7", lambda k: k.quadratic_char_sum(3, f7, curve)),
    ]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled extension not built; run `python3 setup.py build_ext --inplace`")
        return
    print(f"{'kernel':32s} {'python (s)':>11s} {'cython (s)':>11s} {'speedup':>8s}")
    for name, fn in _cases(random.Random(0)):
        if fn(_kernels_py) != fn(_kernels):
            raise SystemExit(f"{name}: backends disagree")
        t_py = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat))
        t_cy = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat))
        print(f"{name:32s} {t_py:11.4f} {t_cy:11.4f} {t_py / t_cy:7.1f}x")


if __name__ == "__main__":
    main()
