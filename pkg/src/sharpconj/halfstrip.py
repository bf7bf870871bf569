"""Harmonic majorant of |y|^p in the half-strip {x > 0, |y| < 1}.

U_p is harmonic with U_p(0, y) = |y|^p and U_p(x, +-1) = 1. Its complement
W_p = 1 - U_p expands in the even Dirichlet eigenfunctions of (-1, 1):

    W_p(x, y) = sum_j c_j exp(-lam_j x) cos(lam_j y),   lam_j = (j + 1/2) pi,
    c_j       = 2 int_0^1 (1 - t^p) cos(lam_j t) dt,
    c_j lam_j = 2p int_0^1 t^(p-1) sin(lam_j t) dt     (so |c_j lam_j| <= 2).

Two evaluation routes are provided for W, U, g(x) = U(x, 0) and g'(x):

* ``"series"``: the truncated eigenfunction series with a rigorous tail
  bound, using sum_{j>J} 2/lam_j exp(-lam_j x) <= (2/lam_{J+1}) exp(-lam_{J+1} x) / (1 - exp(-pi x));
* ``"integral"``: the series summed in closed form under the integral sign.
  With w = exp(-pi (x - i s)/2),

      sum_j exp(-lam_j x) sin(lam_j s) / lam_j = (2/pi) Im artanh(w)
                                                = (1/pi) atan2(2 e^{-pi x/2} sin(pi s/2), 1 - e^{-pi x}),

  which turns W, g and g' into integrals over t in (0, 1) against t^(p-1).
  This route needs no truncation and is preferred for small x, where the
  series would need ~12/x terms.

``"auto"`` picks the series whenever its default truncation stays under
``SERIES_TERM_CAP``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _accel
from .quadrature import graded_breaks, graded_integral, panel_rule

PI = math.pi
SERIES_TERM_CAP = 2048
_COEFF_ORDER = 12


def lam(j) -> float | np.ndarray:
    """Even Dirichlet eigenvalue (j + 1/2) pi of the interval (-1, 1)."""
    return (np.asarray(j, dtype=float) + 0.5) * PI if np.ndim(j) else (j + 0.5) * PI


def eigenvalues(J: int) -> np.ndarray:
    return (np.arange(J + 1) + 0.5) * PI


def default_terms(x: float) -> int:
    """Truncation that makes exp(-lam_J x) negligible: max(50, ceil(12 / x))."""
    return max(50, math.ceil(12.0 / x))


def _check_p(p: float) -> float:
    p = float(p)
    if not p > 1.0:
        raise ValueError(f"p must exceed 1, got {p}")
    return p


def _check_x(x, what: str = "x") -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise ValueError(f"{what} must be > 0 (the boundary x = 0 is reached only as a limit)")
    return x


def _check_y(y) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if np.any(~(np.abs(y) <= 1.0)):
        raise ValueError("y must lie in [-1, 1]")
    return y


@dataclass(frozen=True)
class StripPoint:
    x: float
    y: float

    def __post_init__(self):
        if not (self.x >= 0 and abs(self.y) <= 1):
            raise ValueError(f"({self.x}, {self.y}) is not in the closed half-strip")


@dataclass(frozen=True)
class SeriesValue:
    value: float
    error_bound: float
    method: str
    terms: int = 0


# ---------------------------------------------------------------------------
# coefficients
# ---------------------------------------------------------------------------

@lru_cache(maxsize=16)
def _coeff_rule(size: int):
    # one panel per half period of the top frequency, graded towards t = 0
    breaks = graded_breaks([0.0], 0.0, 1.0, uniform=size, depth=50)
    return panel_rule(breaks, _COEFF_ORDER)


@lru_cache(maxsize=64)
def _coeff_table(p: float, size: int):
    nodes, weights = _coeff_rule(size)
    c, cl = _accel.coeff_table(p, eigenvalues(size - 1), nodes, weights)
    c.setflags(write=False)
    cl.setflags(write=False)
    return c, cl


def _table_size(J: int) -> int:
    return max(64, 1 << J.bit_length())


@dataclass(frozen=True)
class MajorantSeries:
    """Truncated eigenfunction expansion of W_p = 1 - U_p (terms j = 0..J)."""

    p: float
    J: int
    c: np.ndarray
    c_lambda: np.ndarray

    @property
    def lam(self) -> np.ndarray:
        return eigenvalues(self.J)

    def tail_bound(self, x) -> np.ndarray:
        """Bound on sum_{j > J} |c_j| exp(-lam_j x)."""
        x = _check_x(x)
        l1 = (self.J + 1.5) * PI
        return (2.0 / l1) * np.exp(-l1 * x) / -np.expm1(-PI * x)

    def derivative_tail_bound(self, x) -> np.ndarray:
        """Bound on sum_{j > J} |c_j lam_j| exp(-lam_j x)."""
        x = _check_x(x)
        l1 = (self.J + 1.5) * PI
        return 2.0 * np.exp(-l1 * x) / -np.expm1(-PI * x)

    def W_grid(self, xs, ys) -> np.ndarray:
        """W on the tensor grid xs x ys (shape (len(xs), len(ys)))."""
        xs = _check_x(np.atleast_1d(xs))
        ys = _check_y(np.atleast_1d(ys))
        # cos(lam_j y) = (-1)^j sin(lam_j (1 - |y|)) vanishes exactly at |y| = 1
        sign = np.where(np.arange(self.J + 1) % 2 == 0, 1.0, -1.0)
        return _accel.sin_series_grid(self.c * sign, self.lam, xs, 1.0 - np.abs(ys))

    def g_prime(self, xs) -> np.ndarray:
        xs = _check_x(np.atleast_1d(xs))
        return _accel.exp_series(np.ascontiguousarray(self.c_lambda), self.lam, xs)


def majorant_series(p: float, J: int) -> MajorantSeries:
    p = _check_p(p)
    if J < 0:
        raise ValueError("J must be non-negative")
    c, cl = _coeff_table(p, _table_size(J))
    return MajorantSeries(p, J, np.ascontiguousarray(c[:J + 1]), np.ascontiguousarray(cl[:J + 1]))


def coeff_c(p: float, j: int) -> float:
    """c_j^(p) = 2 int_0^1 (1 - t^p) cos(lam_j t) dt by oscillation-resolving quadrature."""
    p = _check_p(p)
    return float(_coeff_table(p, _table_size(j))[0][j])


def coeff_c_lambda(p: float, j: int) -> float:
    """c_j^(p) lam_j from the integrated-by-parts form 2p int_0^1 t^(p-1) sin(lam_j t) dt."""
    p = _check_p(p)
    return float(_coeff_table(p, _table_size(j))[1][j])


# ---------------------------------------------------------------------------
# closed-form pieces used by the integral route
# ---------------------------------------------------------------------------

def summed_sine(x, s) -> np.ndarray:
    """sum_j exp(-lam_j x) sin(lam_j s) / lam_j in closed form (x > 0)."""
    x = np.asarray(x, dtype=float)
    s = np.asarray(s, dtype=float)
    return np.arctan2(2.0 * np.exp(-0.5 * PI * x) * np.sin(0.5 * PI * s), -np.expm1(-PI * x)) / PI


def _half_minus_summed_sine(x: float, t: np.ndarray) -> np.ndarray:
    # 1/2 - summed_sine(x, t) for t in (0, 1], without cancellation
    return np.arctan2(-math.expm1(-PI * x), 2.0 * math.exp(-0.5 * PI * x) * np.sin(0.5 * PI * t)) / PI


def _resolve(method: str, x: float, J: int | None) -> tuple[str, int]:
    if method not in ("auto", "series", "integral"):
        raise ValueError(f"unknown method {method!r}")
    if J is None:
        J = default_terms(x)
        if method == "auto":
            method = "series" if J <= SERIES_TERM_CAP else "integral"
    elif method == "auto":
        method = "series"
    return method, J


# ---------------------------------------------------------------------------
# W, U, g, g'
# ---------------------------------------------------------------------------

def W(p: float, x: float, y: float, J: int | None = None, method: str = "auto") -> SeriesValue:
    """W_p(x, y) = 1 - U_p(x, y) with an error bound."""
    p = _check_p(p)
    x = float(_check_x(x))
    y = float(_check_y(y))
    if abs(y) == 1.0:
        return SeriesValue(0.0, 0.0, "boundary", 0)
    method, J = _resolve(method, x, J)
    if method == "series":
        ser = majorant_series(p, J)
        val = float(ser.W_grid([x], [y])[0, 0])
        return SeriesValue(val, float(ser.tail_bound(x)), "series", J)
    ay = abs(y)

    def integrand(t):
        return t ** (p - 1.0) * (summed_sine(x, t + ay) + summed_sine(x, t - ay))

    q = graded_integral(integrand, [0.0, ay])
    return SeriesValue(p * q.value, p * q.abs_error, "integral", 0)


def U(p: float, x: float, y: float, J: int | None = None, method: str = "auto") -> SeriesValue:
    w = W(p, x, y, J, method)
    return SeriesValue(1.0 - w.value, w.error_bound, w.method, w.terms)


def g(p: float, x: float, J: int | None = None, method: str = "auto") -> SeriesValue:
    """g_p(x) = U_p(x, 0), with g_p(0) = 0."""
    p = _check_p(p)
    if x == 0:
        return SeriesValue(0.0, 0.0, "boundary", 0)
    x = float(_check_x(x))
    method, J = _resolve(method, x, J)
    if method == "series":
        w = W(p, x, 0.0, J, "series")
        return SeriesValue(1.0 - w.value, w.error_bound, "series", J)

    def integrand(t):
        return t ** (p - 1.0) * _half_minus_summed_sine(x, t)

    q = graded_integral(integrand, [0.0])
    return SeriesValue(2.0 * p * q.value, 2.0 * p * q.abs_error, "integral", 0)


def g_prime(p: float, x: float, J: int | None = None, method: str = "auto") -> SeriesValue:
    """g_p'(x) = sum_j c_j lam_j exp(-lam_j x) = 2p int_0^1 t^(p-1) K_x(t) dt."""
    p = _check_p(p)
    x = float(_check_x(x))
    method, J = _resolve(method, x, J)
    if method == "series":
        ser = majorant_series(p, J)
        return SeriesValue(float(ser.g_prime([x])[0]), float(ser.derivative_tail_bound(x)), "series", J)

    def integrand(t):
        return t ** (p - 1.0) * kernel_closed(x, t)

    q = graded_integral(integrand, [0.0])
    return SeriesValue(2.0 * p * q.value, 2.0 * p * q.abs_error, "integral", 0)


# ---------------------------------------------------------------------------
# kernel
# ---------------------------------------------------------------------------

def kernel_closed(x, y) -> np.ndarray | float:
    """K_x(y) = r^(1/2) (1 + r) sin(theta/2) / (1 - 2 r cos(theta) + r^2), r = e^(-pi x), theta = pi y."""
    x = _check_x(x)
    y = np.asarray(y, dtype=float)
    r = np.exp(-PI * x)
    one_minus_r = -np.expm1(-PI * x)
    s = np.sin(0.5 * PI * y)
    # 1 - 2 r cos(theta) + r^2 = (1 - r)^2 + 4 r sin^2(theta/2)
    den = one_minus_r ** 2 + 4.0 * r * s * s
    out = np.exp(-0.5 * PI * x) * (1.0 + r) * s / den
    return float(out) if out.ndim == 0 else out


def kernel_series(x: float, y: float, J: int = 50) -> SeriesValue:
    """Truncated sum_{j<=J} exp(-lam_j x) sin(lam_j y) with its tail bound."""
    x = float(_check_x(x))
    y = float(_check_y(y))
    lj = eigenvalues(J)
    val = float(_accel.sin_series_grid(np.ones(J + 1), lj, np.array([x]), np.array([y]))[0, 0])
    l1 = (J + 1.5) * PI
    tail = math.exp(-l1 * x) / -math.expm1(-PI * x)
    return SeriesValue(val, tail, "series", J)


@dataclass(frozen=True)
class KernelBoundCheck:
    """Slack in K_x(y) <= 1 / (2 sin(pi y / 2)) and its algebraic certificate.

    With a = e^(-pi x / 2), s = sin(pi y / 2) and D = (1 - a^2)^2 + 4 a^2 s^2,
    slack = numerator / (2 s D) where numerator = D - 2 a (1 + a^2) s^2
    factors as (1 - a)^2 ((1 + a)^2 - 2 a s^2).
    """

    slack: np.ndarray
    certificate: np.ndarray
    numerator: np.ndarray
    slack_from_certificate: np.ndarray
    product: np.ndarray  # 2 s K_x(y), which the bound caps at 1

    @property
    def holds(self) -> bool:
        return bool(np.all(self.certificate >= 0))


def kernel_bound_check(x, y) -> KernelBoundCheck:
    x = _check_x(x)
    y = np.asarray(y, dtype=float)
    if np.any(~((y > 0) & (y <= 1))):
        raise ValueError("y must lie in (0, 1]")
    a = np.exp(-0.5 * PI * x)
    one_minus_a = -np.expm1(-0.5 * PI * x)
    s = np.sin(0.5 * PI * y)
    k = kernel_closed(x, y)
    one_minus_a2 = one_minus_a * (1.0 + a)
    den = one_minus_a2 ** 2 + 4.0 * a * a * s * s
    numerator = den - 2.0 * a * (1.0 + a * a) * s * s
    certificate = one_minus_a ** 2 * ((1.0 + a) ** 2 - 2.0 * a * s * s)
    return KernelBoundCheck(
        slack=1.0 / (2.0 * s) - k,
        certificate=certificate,
        numerator=numerator,
        slack_from_certificate=certificate / (2.0 * s * den),
        product=2.0 * s * k,
    )


# ---------------------------------------------------------------------------
# sharpness and the majorant property
# ---------------------------------------------------------------------------

def sharpness_limit(p: float, x_seq) -> np.ndarray:
    """Ratios g_p(x) / x along a decreasing sequence of x > 0; they rise towards A_p."""
    p = _check_p(p)
    xs = np.asarray(x_seq, dtype=float)
    _check_x(xs, "every x in the sequence")
    if np.any(np.diff(xs) >= 0):
        raise ValueError("x_seq must be strictly decreasing")
    return np.array([g(p, x).value / x for x in xs])


@dataclass(frozen=True)
class MajorantGrid:
    p: float
    xs: np.ndarray
    ys: np.ndarray
    U: np.ndarray
    tail: np.ndarray  # per-x truncation bound, broadcast over y
    J: int

    @property
    def margin(self) -> np.ndarray:
        """U - |y|^p + tail; the majorant property says this is >= 0."""
        return self.U - np.abs(self.ys)[None, :] ** self.p + self.tail[:, None]


def majorant_grid(p: float, xs, ys, J: int | None = None) -> MajorantGrid:
    """U_p on a tensor grid by the eigen-series (one truncation for the whole grid)."""
    p = _check_p(p)
    xs = _check_x(np.atleast_1d(xs))
    ys = _check_y(np.atleast_1d(ys))
    if J is None:
        J = min(default_terms(float(xs.min())), SERIES_TERM_CAP)
    ser = majorant_series(p, J)
    u = 1.0 - ser.W_grid(xs, ys)
    return MajorantGrid(p, xs, ys, u, ser.tail_bound(xs), J)
