"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each kernel is fed identical inputs on both backends; the script checks the
outputs agree before reporting timings.
"""

import argparse
import random
import timeit

from wreathlie import oracle
from wreathlie._ext import _pure
from wreathlie.polyring import PrimeParams

try:
    from wreathlie._ext import _speedups
except ImportError:
    _speedups = None


def poly_inputs(rng, p, nvars, count=40):
    size = p**nvars
    return [
        ({i: rng.randrange(1, p) for i in range(size) if rng.random() < 0.5},
         {i: rng.randrange(1, p) for i in range(size) if rng.random() < 0.5})
        for _ in range(count)
    ]


def perm_inputs(rng, degree, count=2000):
    out = []
    for _ in range(count):
        u, v = list(range(degree)), list(range(degree))
        rng.shuffle(u)
        rng.shuffle(v)
        out.append((bytes(u), bytes(v)))
    return out


def cases():
    rng = random.Random(0)
    for p, nvars in [(3, 4), (5, 3), (7, 2)]:
        pairs = poly_inputs(rng, p, nvars)
        yield f"poly_mul p={p} nvars={nvars}", lambda m, pairs=pairs, p=p, nvars=nvars: [
            m.poly_mul(a, b, p, nvars) for a, b in pairs
        ]
    pairs = perm_inputs(rng, 243)
    yield "compose degree 243", lambda m: [m.compose(u, v) for u, v in pairs]
    gens = list(oracle.basis_perms(PrimeParams(3, 2)).values())
    yield "generate W_2, p=3", lambda m: m.generate_subgroup(gens, 9)
    gens5 = list(oracle.basis_perms(PrimeParams(5, 2)).values())
    yield "generate W_2, p=5", lambda m: m.generate_subgroup(gens5, 25)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _speedups is None:
        print("compiled extension not built; only the pure backend is available")
    print(f"{'kernel':40s} {'python (ms)':>12s} {'cython (ms)':>12s} {'speedup':>8s}")
    for name, fn in cases():
        if fn is None:
            continue
        t_pure = min(timeit.repeat(lambda: fn(_pure), number=1, repeat=args.repeat)) * 1e3
        if _speedups is None:
            print(f"{name:40s} {t_pure:12.2f} {'-':>12s} {'-':>8s}")
            continue
        if fn(_pure) != fn(_speedups):
            raise SystemExit(f"backends disagree on {name}")
        t_ext = min(timeit.repeat(lambda: fn(_speedups), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:40s} {t_pure:12.2f} {t_ext:12.2f} {t_pure / t_ext:7.1f}x")


if __name__ == "__main__":
    main()
