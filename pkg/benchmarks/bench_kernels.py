"""Time the numba kernels against the pure-numpy fallback.

Run as a script:

    python3 benchmarks/bench_kernels.py [--sizes 64,256,1024] [--repeat 5]

Both backends live in qlcm._kernels; the jitted functions exist whenever
numba imports (and QLCM_NO_JIT is unset), so a single process can time
both and also assert they agree on the benchmark inputs.  All kernels
work mod a 30-bit prime on int64 arrays.
"""

import argparse
import time

import numpy as np

from qlcm import _kernels as K

P = K.PRIMES30[0]


def _timeit(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def _inputs(size, rng):
    a = rng.integers(0, P, size=size, dtype=np.int64)
    b = rng.integers(0, P, size=size // 2 + 1, dtype=np.int64)
    d = rng.integers(0, P, size=size, dtype=np.int64)
    a[-1] = b[-1] = d[-1] = 1
    # a*b and d*b share the factor b, so the gcd walk does real work
    return a, b, K.polmul_modp(a, b, P), K.polmul_modp(d, b, P)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="64,256,1024")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if K.BACKEND != "numba":
        print(f"active backend: {K.BACKEND} (numba unavailable or QLCM_NO_JIT set)")
        print("timing the numpy implementations only")
        pairs = [
            ("polmul", K._np_polmul, None),
            ("polmod", K._np_polmod, None),
            ("euclid_gcd", K._np_euclid_gcd, None),
        ]
    else:
        # warm the jit cache outside the timed region
        small = np.ones(4, dtype=np.int64)
        K._nb_polmul(small, small, P)
        K._nb_polmod(small * 2, small, P)
        K._nb_euclid(small, small, P)
        pairs = [
            ("polmul", K._np_polmul, K._nb_polmul),
            ("polmod", K._np_polmod, K._nb_polmod),
            ("euclid_gcd", K._np_euclid_gcd, K._nb_euclid),
        ]

    rng = np.random.default_rng(7)
    header = f"{'kernel':<12}{'size':>6}{'numpy':>12}{'numba':>12}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for size in sizes:
        a, b, c, e = _inputs(size, rng)
        cases = {"polmul": (a, b, P), "polmod": (c, b, P), "euclid_gcd": (c, e, P)}
        for name, np_fn, nb_fn in pairs:
            in_ = cases[name]
            t_np = _timeit(np_fn, in_, args.repeat)
            if nb_fn is None:
                print(f"{name:<12}{size:>6}{t_np * 1e3:>10.2f}ms{'-':>12}{'-':>9}")
                continue
            t_nb = _timeit(nb_fn, in_, args.repeat)
            got_np, got_nb = np_fn(*in_), nb_fn(*in_)
            assert np.array_equal(np.asarray(got_np), np.asarray(got_nb)), name
            print(
                f"{name:<12}{size:>6}{t_np * 1e3:>10.2f}ms{t_nb * 1e3:>10.2f}ms{t_np / t_nb:>8.1f}x"
            )


if __name__ == "__main__":
    main()
