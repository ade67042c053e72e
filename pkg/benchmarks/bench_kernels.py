"""Time the numba kernels against their pure-numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json]

Each pair is run once untimed (JIT compile, cache warm-up), checked for
agreement, then timed as the best of ``--repeat`` runs.
"""
import argparse
import json
import sys
import timeit

import numpy as np

from ldaroc import _kernels as k
from ldaroc._accel import HAVE_NUMBA

if not HAVE_NUMBA:
    sys.exit("numba is not installed; nothing to compare")


def _spd(n, seed=0):
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.normal(size=(n, n)))
    return (q * np.linspace(0.1, 2.0, n)) @ q.T


def cases():
    key = k.stream_key(7, 0)
    x = np.linspace(-8, 8, 200_000)
    a5, a40 = _spd(5), _spd(40)
    chol5 = np.linalg.cholesky(a5)
    mu0, mu1 = np.zeros(5), np.full(5, 0.4)
    alpha = np.linalg.solve(a5, mu1 - mu0)
    beta = 0.5 * float(mu0 @ alpha - mu1 @ alpha)
    ckey, fkey = k.stream_key(7, 1), k.stream_key(7, 2)
    return [
        ("normals 1e6", (key, 0, 10**6), k.nb_normals, k.np_normals),
        ("normal_cdf 2e5", (x,), k.nb_normal_cdf, k.np_normal_cdf),
        ("jacobi 5x5", (a5, 1e-15, 64), k.nb_jacobi_eigh, k.np_jacobi_eigh),
        ("jacobi 40x40", (a40, 1e-15, 64), k.nb_jacobi_eigh, k.np_jacobi_eigh),
        ("cholesky 40x40", (a40, 1e-12), k.nb_cholesky, k.np_cholesky),
        ("count_below n=5 1e6", (mu0, chol5, alpha, beta, 10**6, key), k.nb_count_below, k.np_count_below),
        ("confusion n=5 1e6", (mu0, mu1, chol5, alpha, beta, 0.5, 0.0, 10**6, ckey, fkey),
         k.nb_confusion_tally, k.np_confusion_tally),
    ]


def _agree(a, b):
    a = a if isinstance(a, tuple) else (a,)
    b = b if isinstance(b, tuple) else (b,)
    return all(np.allclose(np.asarray(u, dtype=float), np.asarray(v, dtype=float), rtol=1e-9, atol=1e-12)
               for u, v in zip(a, b))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    rows = []
    for name, call_args, nb, npf in cases():
        ok = _agree(nb(*call_args), npf(*call_args))
        t_nb = min(timeit.repeat(lambda: nb(*call_args), number=1, repeat=args.repeat))
        t_np = min(timeit.repeat(lambda: npf(*call_args), number=1, repeat=args.repeat))
        rows.append({"kernel": name, "numba_s": t_nb, "numpy_s": t_np, "speedup": t_np / t_nb, "agree": ok})

    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'kernel':<22}{'numba [ms]':>12}{'numpy [ms]':>12}{'speedup':>10}  agree")
    for r in rows:
        print(f"{r['kernel']:<22}{1e3 * r['numba_s']:>12.3f}{1e3 * r['numpy_s']:>12.3f}"
              f"{r['speedup']:>9.1f}x  {r['agree']}")


if __name__ == "__main__":
    main()
