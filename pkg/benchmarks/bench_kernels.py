"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 3]

Each kernel is run once untimed (JIT warm-up), then timed; the max absolute
difference between the two backends is printed alongside.
"""
import argparse
import time

import numpy as np

from sharpconj import _accel
from sharpconj.halfstrip import _coeff_rule, eigenvalues


def _best(fn, repeat):
    best = np.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases():
    nodes, weights = _coeff_rule(1024)
    lam = eigenvalues(1023)
    xs = np.linspace(0.01, 4.0, 200)
    ys = np.linspace(-1.0, 1.0, 202)[1:-1]
    lam_grid = eigenvalues(1200)
    coef = 1.0 / lam_grid ** 2
    rng = np.random.default_rng(0)
    freqs = np.sort(rng.choice(np.arange(1, 513), 32, replace=False))
    coeffs = np.exp(2j * np.pi * rng.random(32))
    pts = rng.random(20000) * 2 * np.pi
    xs_fine = np.geomspace(1e-3, 5.0, 2000)
    return {
        "coeff_table p=1.5 J=1023": ("coeff_table", (1.5, lam, nodes, weights)),
        "sin_series_grid 200x200 J=1200": ("sin_series_grid", (coef, lam_grid, xs, 1.0 - np.abs(ys))),
        "exp_series 2000 x J=1200": ("exp_series", (coef, lam_grid, xs_fine)),
        "trig_direct 32 terms x 20000 pts": ("trig_direct", (freqs, coeffs, pts)),
        "rudin_shapiro n<=2^20": ("rudin_shapiro", (1 << 20,)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        print("numba unavailable or disabled (SHARPCONJ_NO_NUMBA); nothing to compare")
        return
    print(f"{'kernel':36s} {'numpy [s]':>10s} {'numba [s]':>10s} {'speedup':>8s} {'max |diff|':>11s}")
    for label, (name, argv) in cases().items():
        np_fn = getattr(_accel, "np_" + name)
        nb_fn = getattr(_accel, "nb_" + name)
        nb_fn(*argv)  # compile
        t_np, r_np = _best(lambda: np_fn(*argv), args.repeat)
        t_nb, r_nb = _best(lambda: nb_fn(*argv), args.repeat)
        if isinstance(r_np, tuple):
            diff = max(float(np.max(np.abs(a - b))) for a, b in zip(r_np, r_nb))
        else:
            diff = float(np.max(np.abs(r_np - r_nb)))
        print(f"{label:36s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f} {diff:11.2e}")


if __name__ == "__main__":
    main()
