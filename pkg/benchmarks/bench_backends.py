"""Time the numba and NumPy backends on the kernels the solver spends its time in.

    python3 benchmarks/bench_backends.py [--nodes 128 256] [--repeat 5]

Reports the best of ``--repeat`` runs for the Bessel grid evaluation and for
one evaluation T(z) of the clamped family, plus the max difference between
the backends. ``CLAMPEDTE_BACKEND`` does not matter here: both are run.
"""
import argparse
import time

import numpy as np

from clampedte import _accel, bie, geometry, specfun


def best_of(fn, repeat):
    fn()                                    # warm-up (JIT compile / caches)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_grid(size, repeat):
    from clampedte import _jit
    rng = np.random.default_rng(0)
    w = rng.uniform(1e-3, 30.0, size) * np.exp(1j * rng.uniform(-0.1, 0.1, size))
    rows = []
    for label, fn_nb, fn_np in (("J0,J1,Y0,Y1", _jit.jy01_grid, specfun.jy01),
                                ("I0,I1,K0,K1", _jit.ik01_grid, specfun.ik01)):
        t_nb = best_of(lambda: fn_nb(w), repeat)
        t_np = best_of(lambda: fn_np(w), repeat)
        diff = max(float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))
                   for a, b in zip(fn_nb(w), fn_np(w)))
        rows.append((f"{label} on {size} points", t_nb, t_np, diff))
    return rows


def bench_family(nodes, repeat, z=3.1 + 0.2j):
    bd = geometry.kite().discretize(nodes)
    fams = {b: bie.clamped_te_family(bd, backend=b) for b in _accel.BACKENDS}
    t_nb = best_of(lambda: fams["numba"](z), repeat)
    t_np = best_of(lambda: fams["numpy"](z), repeat)
    a, b = fams["numba"](z), fams["numpy"](z)
    diff = float(np.max(np.abs(a - b)) / np.max(np.abs(b)))
    return (f"clamped T(z), kite, {nodes} nodes", t_nb, t_np, diff)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--nodes", type=int, nargs="+", default=[64, 128, 256])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    rows = bench_grid(128 * 128, args.repeat)
    rows += [bench_family(n, args.repeat) for n in args.nodes]
    print(f"{'kernel':38s} {'numba [ms]':>11s} {'numpy [ms]':>11s} {'speed-up':>9s} {'max rel diff':>13s}")
    for label, t_nb, t_np, diff in rows:
        print(f"{label:38s} {1e3 * t_nb:11.2f} {1e3 * t_np:11.2f} {t_np / t_nb:8.1f}x {diff:13.1e}")


if __name__ == "__main__":
    main()
