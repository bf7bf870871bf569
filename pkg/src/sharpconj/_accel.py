"""Hot inner loops, with a numba backend and a pure-numpy fallback.

The backend is picked once at import time. Set ``SHARPCONJ_NO_NUMBA=1`` to
force the numpy path (useful for debugging and for the benchmark); numba is
also skipped silently when it is not importable.

Both implementations of every kernel are importable under their own names
(``np_*`` / ``nb_*``) so the test-suite can compare them directly.
"""
import os

import numpy as np

_DISABLED = os.environ.get("SHARPCONJ_NO_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:
    if _DISABLED:
        raise ImportError("numba disabled by SHARPCONJ_NO_NUMBA")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"

# cap on the size of temporary (rows x cols) blocks in the numpy fallback
_BLOCK = 1 << 22
# numba coefficient kernel: exact phase recomputation interval
_REANCHOR = 32


# ---------------------------------------------------------------------------
# numpy reference implementations
# ---------------------------------------------------------------------------

def np_coeff_table(p, lam, nodes, weights):
    """Return (c, c*lam) for every eigenvalue in ``lam`` (equally spaced).

    c_j      = 2   sum_i w_i (1 - y_i^p)     cos(lam_j y_i)
    c_j*lam_j = 2p sum_i w_i  y_i^(p-1)      sin(lam_j y_i)
    """
    a = weights * (1.0 - nodes ** p)
    b = weights * nodes ** (p - 1.0)
    c = np.empty(lam.size)
    cl = np.empty(lam.size)
    # exp(i lam_{j0+k} y) = exp(i lam_{j0} y) * exp(i k dlam y): exact anchors
    # every _REANCHOR rows times a fixed table of in-block rotations
    dlam = lam[1] - lam[0] if lam.size > 1 else 0.0
    rot = np.exp(1j * np.outer(dlam * np.arange(_REANCHOR), nodes))
    for start in range(0, lam.size, _REANCHOR):
        stop = min(start + _REANCHOR, lam.size)
        z = np.exp(1j * lam[start] * nodes) * rot[:stop - start]
        c[start:stop] = 2.0 * (z.real @ a)
        cl[start:stop] = 2.0 * p * (z.imag @ b)
    return c, cl


def np_cos_series_grid(coef, lam, xs, ys):
    """out[a, b] = sum_j coef_j exp(-lam_j xs[a]) cos(lam_j ys[b])."""
    decay = np.exp(-np.outer(xs, lam)) * coef
    return decay @ np.cos(np.outer(lam, ys))


def np_sin_series_grid(coef, lam, xs, ys):
    """out[a, b] = sum_j coef_j exp(-lam_j xs[a]) sin(lam_j ys[b])."""
    decay = np.exp(-np.outer(xs, lam)) * coef
    return decay @ np.sin(np.outer(lam, ys))


def np_exp_series(coef, lam, xs):
    """out[a] = sum_j coef_j exp(-lam_j xs[a])."""
    return np.exp(-np.outer(xs, lam)) @ coef


def np_trig_direct(freqs, coeffs, xs):
    """Direct summation of sum_k a_k exp(i n_k x) at the points ``xs``."""
    out = np.zeros(xs.size, dtype=np.complex128)
    step = max(1, _BLOCK // max(freqs.size, 1))
    for start in range(0, xs.size, step):
        ph = np.outer(xs[start:start + step], freqs.astype(np.float64))
        out[start:start + step] = np.exp(1j * ph) @ coeffs
    return out


def np_rudin_shapiro(n_max):
    """Signs (-1)^(number of '11' blocks in binary n) for n = 0..n_max."""
    n = np.arange(n_max + 1, dtype=np.int64)
    pairs = n & (n >> 1)
    count = np.zeros_like(n)
    while np.any(pairs):
        count += pairs & 1
        pairs >>= 1
    return np.where(count % 2 == 0, 1, -1).astype(np.int64)


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def nb_coeff_table(p, lam, nodes, weights):
        m = nodes.size
        a = np.empty(m)
        b = np.empty(m)
        for i in range(m):
            a[i] = weights[i] * (1.0 - nodes[i] ** p)
            b[i] = weights[i] * nodes[i] ** (p - 1.0)
        c = np.zeros(lam.size)
        cl = np.zeros(lam.size)
        # lam is equally spaced; rotate exp(i lam_j y) by exp(i dlam y) and
        # re-anchor exactly every _REANCHOR steps to bound rounding drift
        dlam = lam[1] - lam[0] if lam.size > 1 else 0.0
        for i in range(m):
            y = nodes[i]
            sr = np.cos(dlam * y)
            si = np.sin(dlam * y)
            zr = 0.0
            zi = 0.0
            for j in range(lam.size):
                if j % _REANCHOR == 0:
                    zr = np.cos(lam[j] * y)
                    zi = np.sin(lam[j] * y)
                c[j] += a[i] * zr
                cl[j] += b[i] * zi
                zr, zi = zr * sr - zi * si, zr * si + zi * sr
        for j in range(lam.size):
            c[j] *= 2.0
            cl[j] *= 2.0 * p
        return c, cl

    @njit(cache=True)
    def _nb_series_grid(coef, lam, xs, ys, use_sin):
        nj = lam.size
        basis = np.empty((nj, ys.size))
        for j in range(nj):
            for b in range(ys.size):
                if use_sin:
                    basis[j, b] = np.sin(lam[j] * ys[b])
                else:
                    basis[j, b] = np.cos(lam[j] * ys[b])
        out = np.zeros((xs.size, ys.size))
        for a in range(xs.size):
            for j in range(nj):
                wj = coef[j] * np.exp(-lam[j] * xs[a])
                if wj == 0.0:
                    continue
                for b in range(ys.size):
                    out[a, b] += wj * basis[j, b]
        return out

    def nb_cos_series_grid(coef, lam, xs, ys):
        return _nb_series_grid(coef, lam, xs, ys, False)

    def nb_sin_series_grid(coef, lam, xs, ys):
        return _nb_series_grid(coef, lam, xs, ys, True)

    @njit(cache=True)
    def nb_exp_series(coef, lam, xs):
        out = np.zeros(xs.size)
        for a in range(xs.size):
            s = 0.0
            for j in range(lam.size):
                s += coef[j] * np.exp(-lam[j] * xs[a])
            out[a] = s
        return out

    @njit(cache=True)
    def nb_trig_direct(freqs, coeffs, xs):
        out = np.zeros(xs.size, dtype=np.complex128)
        for a in range(xs.size):
            re = 0.0
            im = 0.0
            for k in range(freqs.size):
                ph = freqs[k] * xs[a]
                c = np.cos(ph)
                s = np.sin(ph)
                re += coeffs[k].real * c - coeffs[k].imag * s
                im += coeffs[k].real * s + coeffs[k].imag * c
            out[a] = complex(re, im)
        return out

    @njit(cache=True)
    def nb_rudin_shapiro(n_max):
        out = np.empty(n_max + 1, dtype=np.int64)
        for n in range(n_max + 1):
            pairs = n & (n >> 1)
            count = 0
            while pairs:
                count += pairs & 1
                pairs >>= 1
            out[n] = 1 if count % 2 == 0 else -1
        return out

    coeff_table = nb_coeff_table
    cos_series_grid = nb_cos_series_grid
    sin_series_grid = nb_sin_series_grid
    exp_series = nb_exp_series
    trig_direct = nb_trig_direct
    rudin_shapiro = nb_rudin_shapiro
else:
    coeff_table = np_coeff_table
    cos_series_grid = np_cos_series_grid
    sin_series_grid = np_sin_series_grid
    exp_series = np_exp_series
    trig_direct = np_trig_direct
    rudin_shapiro = np_rudin_shapiro
