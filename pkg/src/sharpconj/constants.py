"""Sharp constants: A_p, Catalan's constant and the p = 2 identity between them."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .quadrature import tanh_sinh

_EPS = float(np.finfo(float).eps)

SUPPORTED_P = (1.01, 100.0)


@dataclass(frozen=True)
class ConstantResult:
    value: float
    abs_error_estimate: float
    method: str  # "quadrature" | "series" | "identity"

    def __float__(self) -> float:
        return self.value


def catalan_term(j: int) -> float:
    return (-1.0) ** j / (2 * j + 1) ** 2


def catalan_partial_sum(j_max: int) -> float:
    """Sum of the alternating Catalan series over j = 0..j_max."""
    if j_max < 0:
        return 0.0
    j = np.arange(j_max + 1, dtype=np.float64)
    terms = np.where(j % 2 == 0, 1.0, -1.0) / (2.0 * j + 1.0) ** 2
    return math.fsum(terms)


@lru_cache(maxsize=None)
def catalan(n: int = 40) -> ConstantResult:
    """Catalan's constant via Cohen-Villegas-Zagier acceleration of the alternating series.

    The terms 1/(2j+1)^2 are a moment sequence (of -log(t) dt on [0, 1] in
    t^2), so the acceleration error is at most 2 a_0 / (3 + sqrt 8)^n.
    """
    d = (3.0 + math.sqrt(8.0)) ** n
    d = 0.5 * (d + 1.0 / d)
    b = -1.0
    c = -d
    s = 0.0
    for k in range(n):
        c = b - c
        s += c / (2 * k + 1) ** 2
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1))
    value = s / d
    tail = 2.0 / (3.0 + math.sqrt(8.0)) ** n
    return ConstantResult(value, max(tail, 8.0 * n * _EPS), "series")


def _inv_sin_minus_inv(z: np.ndarray) -> np.ndarray:
    """1/sin(z) - 1/z on (0, pi/2], with a series below 0.1 to avoid cancellation."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    small = z < 0.1
    zs = z[small]
    z2 = zs * zs
    out[small] = zs * (1.0 / 6.0 + z2 * (7.0 / 360.0 + z2 * (31.0 / 15120.0
                       + z2 * (127.0 / 604800.0 + z2 * 73.0 / 3421440.0))))
    zb = z[~small]
    out[~small] = 1.0 / np.sin(zb) - 1.0 / zb
    return out


@lru_cache(maxsize=256)
def sharp_constant_Ap(p: float) -> ConstantResult:
    """A_p = p * int_0^1 t^(p-1) / sin(pi t / 2) dt for p > 1.

    The t^(p-2) endpoint behaviour is split off exactly: near 0 the
    integrand equals (2/pi) t^(p-2) plus a remainder that vanishes like
    t^p, and the remainder goes through the tanh-sinh ladder.
    """
    p = float(p)
    if not p > 1.0:
        raise ValueError(f"A_p diverges for p <= 1 (got p={p}): the integrand behaves like t^(p-2) at 0")
    if not SUPPORTED_P[0] <= p <= SUPPORTED_P[1]:
        warnings.warn(
            f"p={p} is outside the supported range {SUPPORTED_P}; error estimate not validated",
            RuntimeWarning,
            stacklevel=2,
        )
    singular = 2.0 / (math.pi * (p - 1.0))

    def remainder(t):
        return t ** (p - 1.0) * _inv_sin_minus_inv(0.5 * math.pi * t)

    q = tanh_sinh(remainder, 0.0, 1.0)
    value = p * (singular + q.value)
    err = p * q.abs_error + 4.0 * _EPS * abs(value)
    return ConstantResult(value, err, "quadrature")


def a2_from_catalan() -> ConstantResult:
    """A_2 through the closed form 16 G / pi^2."""
    g = catalan()
    return ConstantResult(16.0 * g.value / math.pi ** 2,
                          16.0 * g.abs_error_estimate / math.pi ** 2 + 4 * _EPS, "identity")


def corollary2_constant() -> ConstantResult:
    """pi^2 / (32 G), the constant in front of sum |a_k|^2 / ||f~||_inf."""
    g = catalan()
    value = math.pi ** 2 / (32.0 * g.value)
    err = value * g.abs_error_estimate / g.value + 4 * _EPS
    return ConstantResult(value, err, "identity")
