"""Compare the compiled and pure Python mod-p kernels.

Times the two raw kernels (row reduction and matrix multiplication) and two
library workloads that lean on them (isoclinism search on the worked example
pair and classification of a random batch), once per available backend.

Run from the repository root:

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --quick
"""

import argparse
import random
import time

from leibalg import _backend
from leibalg.algebra import LeibnizAlgebra, validate
from leibalg.extensions import canonical_extension
from leibalg.fields import Field
from leibalg.isoclinism import classify, search_isoclinism

F3 = Field.prime(3)


def random_flat_matrix(rng, nrows, ncols, p):
    return [rng.randrange(p) for _ in range(nrows * ncols)]


def random_leibniz_batch(rng, count):
    """Rejection-sample sparse structure tensors over F_3 with dim <= 3."""
    out = []
    while len(out) < count:
        dim = rng.choice((2, 2, 3, 3))
        table = {}
        for _ in range(rng.randrange(0, 2 * dim + 1)):
            i, j = rng.randrange(dim), rng.randrange(dim)
            vec = [0] * dim
            vec[rng.randrange(dim)] = rng.randrange(1, 3)
            table[(i, j)] = tuple(vec)
        alg = LeibnizAlgebra.from_structure(F3, dim, table)
        if validate(alg).ok:
            out.append(alg)
    return out


def time_call(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_rref(kernels, rng, size, p, repeat):
    data = random_flat_matrix(rng, size, size, p)
    return time_call(lambda: kernels.rref_mod(size, size, data, p), repeat)


def bench_matmul(kernels, rng, size, p, repeat):
    a = random_flat_matrix(rng, size, size, p)
    b = random_flat_matrix(rng, size, size, p)
    return time_call(lambda: kernels.matmul_mod(size, size, size, a, b, p), repeat)


def bench_search(repeat):
    g1 = LeibnizAlgebra.from_structure(F3, 2, {(0, 0): (0, 1), (1, 0): (0, 1)})
    g2 = LeibnizAlgebra.from_structure(
        F3, 3, {(0, 0): (0, 0, 1), (1, 0): (0, 0, 1), (2, 0): (0, 0, 1)})
    e1, e2 = canonical_extension(g1), canonical_extension(g2)

    def run():
        assert search_isoclinism(e1, e2) is not None

    return time_call(run, repeat)


def bench_classify(batch, repeat):
    return time_call(lambda: classify(batch), repeat)


def fmt(seconds):
    return f"{seconds * 1e3:9.3f} ms"


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[20, 60, 120],
                        help="square matrix sizes for the raw kernels")
    parser.add_argument("--primes", type=int, nargs="+", default=[3, 101])
    parser.add_argument("--repeat", type=int, default=5,
                        help="repetitions per measurement (best is kept)")
    parser.add_argument("--batch", type=int, default=120,
                        help="number of random algebras for the classify workload")
    parser.add_argument("--seed", type=int, default=20260814)
    parser.add_argument("--quick", action="store_true",
                        help="small sizes and fewer repetitions")
    args = parser.parse_args()
    if args.quick:
        args.sizes, args.primes, args.repeat, args.batch = [20, 40], [3], 3, 40

    backends = _backend.available_backends()
    print(f"backends: {', '.join(sorted(backends))}")
    rng = random.Random(args.seed)
    batch = random_leibniz_batch(rng, args.batch)

    rows = []
    for p in args.primes:
        for size in args.sizes:
            for label, bench in (("rref", bench_rref), ("matmul", bench_matmul)):
                timings = {name: bench(mod, random.Random(args.seed), size, p,
                                       args.repeat)
                           for name, mod in backends.items()}
                rows.append((f"{label} {size}x{size} mod {p}", timings))

    workload_rows = []
    original = _backend.BACKEND
    try:
        for name in sorted(backends):
            _backend.set_backend(name)
            search_t = bench_search(args.repeat)
            classify_t = bench_classify(batch, max(1, args.repeat // 2))
            workload_rows.append((name, search_t, classify_t))
    finally:
        _backend.set_backend(original)

    print(f"\n{'kernel':28s}" + "".join(f"{name:>16s}" for name in sorted(backends))
          + ("         speedup" if len(backends) > 1 else ""))
    for label, timings in rows:
        line = f"{label:28s}"
        for name in sorted(timings):
            line += f"{fmt(timings[name]):>16s}"
        if len(timings) > 1 and timings.get("cython"):
            line += f"{timings['python'] / timings['cython']:>14.1f}x"
        print(line)

    print(f"\n{'workload':28s}{'search':>16s}{'classify':>16s}")
    for name, search_t, classify_t in workload_rows:
        print(f"{name:28s}{fmt(search_t):>16s}{fmt(classify_t):>16s}")


if __name__ == "__main__":
    main()
