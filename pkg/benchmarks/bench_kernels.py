"""Time the compiled kernels against their pure-Python twins.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import sys
import timeit

from abcmod import _pykernels

try:
    from abcmod import _ckernels
except ImportError:
    sys.exit("compiled kernels not built; run pip install -e . --no-build-isolation")


def cases(rng):
    tall = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(12)]
    sq = [[rng.randint(-9, 9) for _ in range(8)] for _ in range(8)]
    pm = [[rng.choice([-1, 0, 1]) for _ in range(5)] for _ in range(9)]
    C = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(6)]
    g = [rng.randint(0, 8) for _ in range(6)]
    w = [rng.randint(-3, 3) for _ in range(4)]
    return {
        "bareiss_det 8x8": lambda k: k.bareiss_det(sq),
        "minor_abs_values 12x4": lambda k: k.minor_abs_values(tall, 4),
        "ghouila_houri 9x5": lambda k: k.ghouila_houri(pm),
        "first_bad_minor 9x5": lambda k: k.first_bad_minor(pm, 1),
        "box_argmax 4d [-4,4]": lambda k: k.box_argmax(C, g, w, [-4] * 4, [4] * 4),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    print(f"{'kernel':<24}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, fn in cases(random.Random(args.seed)).items():
        assert fn(_pykernels) == fn(_ckernels), name
        t_py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat))
        t_c = min(timeit.repeat(lambda: fn(_ckernels), number=1, repeat=args.repeat))
        print(f"{name:<24}{t_py * 1e3:>12.3f}{t_c * 1e3:>12.3f}{t_py / t_c:>9.1f}x")


if __name__ == "__main__":
    main()
