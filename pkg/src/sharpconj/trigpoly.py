"""Trigonometric polynomials: representation, conjugation, norms and certified extrema.

An analytic polynomial P(x) = sum_k a_k exp(i n_k x) with distinct positive
frequencies splits as P = f + i f~, where f~ is the conjugate function of f.
Real polynomials are stored in cosine/sine coefficient form.

Extrema are certified from grid values. The default certificate is the
Lipschitz one: with L = sum_k n_k (|cos_k| + |sin_k|) >= ||f'||_inf every
point is within h/2 of a grid node, so the true extremum lies within L*h/2 of
the grid extremum. A tighter Bernstein certificate is available for large
degrees: a degree-n polynomial attaining its sup norm S at x0 satisfies
T(x0 + t) >= S cos(n t) for |t| <= pi/n, so some node sees at least
S cos(n h / 2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _accel

LOWER_BOUND_OF_MIN = "lower_bound_of_min"
UPPER_BOUND_OF_SUP = "upper_bound_of_sup"
CERTIFICATES = ("lipschitz", "bernstein")

TWO_PI = 2.0 * math.pi
_EPS = float(np.finfo(float).eps)


class PolynomialError(ValueError):
    """Invalid polynomial data; ``index`` names the offending term when known."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message if index is None else f"term {index}: {message}")
        self.index = index


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


def _check_freqs(freqs: np.ndarray) -> None:
    if freqs.ndim != 1 or freqs.size == 0:
        raise PolynomialError("at least one term is required")
    for i, n in enumerate(freqs):
        if n < 1:
            raise PolynomialError(f"frequency must be >= 1, got {n}", i)
        if i and n <= freqs[i - 1]:
            raise PolynomialError(f"frequencies must be strictly increasing ({freqs[i - 1]} then {n})", i)


def _as_freqs(freqs) -> np.ndarray:
    raw = np.asarray(freqs)
    if raw.dtype.kind == "f":
        if not np.all(raw == np.round(raw)):
            raise PolynomialError("frequencies must be integers")
    elif raw.dtype.kind not in "iu":
        raise PolynomialError("frequencies must be integers")
    return raw.astype(np.int64)


@dataclass(frozen=True)
class TrigPoly:
    """P(x) = sum_k coeffs[k] * exp(i * freqs[k] * x)."""

    freqs: np.ndarray
    coeffs: np.ndarray

    def __post_init__(self):
        freqs = _as_freqs(self.freqs)
        coeffs = np.asarray(self.coeffs, dtype=np.complex128)
        _check_freqs(freqs)
        if coeffs.shape != freqs.shape:
            raise PolynomialError("coefficient and frequency arrays differ in length")
        if not np.all(np.isfinite(coeffs)):
            bad = int(np.flatnonzero(~np.isfinite(coeffs))[0])
            raise PolynomialError("coefficient is not finite", bad)
        object.__setattr__(self, "freqs", _frozen(freqs))
        object.__setattr__(self, "coeffs", _frozen(coeffs))

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, complex]]) -> "TrigPoly":
        terms = list(terms)
        return cls([n for n, _ in terms], [a for _, a in terms])

    @property
    def N(self) -> int:
        return int(self.freqs.size)

    @property
    def degree(self) -> int:
        return int(self.freqs[-1])

    def __call__(self, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return _accel.trig_direct(self.freqs, self.coeffs, x)

    def real_part(self) -> "RealTrig":
        # Re(a e^{inx}) = alpha cos(nx) - beta sin(nx)
        return RealTrig(self.freqs, self.coeffs.real, -self.coeffs.imag)

    def imag_part(self) -> "RealTrig":
        # Im(a e^{inx}) = alpha sin(nx) + beta cos(nx)
        return RealTrig(self.freqs, self.coeffs.imag, self.coeffs.real)

    def scaled(self, c: complex) -> "TrigPoly":
        return TrigPoly(self.freqs, c * self.coeffs)

    def shifted(self, tau: float) -> "TrigPoly":
        """The polynomial x -> P(x + tau)."""
        return TrigPoly(self.freqs, self.coeffs * np.exp(1j * self.freqs * tau))

    def to_json(self) -> dict:
        return {"terms": [{"n": int(n), "re": float(a.real), "im": float(a.imag)}
                          for n, a in zip(self.freqs, self.coeffs)]}

    @classmethod
    def from_json(cls, data) -> "TrigPoly":
        if not isinstance(data, dict) or "terms" not in data:
            raise PolynomialError('expected an object with a "terms" list')
        terms = data["terms"]
        if not isinstance(terms, list) or not terms:
            raise PolynomialError('"terms" must be a non-empty list')
        freqs, coeffs = [], []
        for i, t in enumerate(terms):
            if not isinstance(t, dict) or "n" not in t:
                raise PolynomialError('expected {"n": int, "re": float, "im": float}', i)
            n = t["n"]
            if isinstance(n, bool) or not isinstance(n, int):
                raise PolynomialError(f"frequency must be an integer, got {n!r}", i)
            try:
                re = float(t.get("re", 0.0))
                im = float(t.get("im", 0.0))
            except (TypeError, ValueError):
                raise PolynomialError("re/im must be numbers", i) from None
            if not (math.isfinite(re) and math.isfinite(im)):
                raise PolynomialError("coefficient is not finite", i)
            if n < 1:
                raise PolynomialError(f"frequency must be >= 1, got {n}", i)
            if freqs and n <= freqs[-1]:
                raise PolynomialError(f"frequencies must be strictly increasing ({freqs[-1]} then {n})", i)
            freqs.append(n)
            coeffs.append(complex(re, im))
        return cls(freqs, coeffs)


@dataclass(frozen=True)
class RealTrig:
    """f(x) = mean + sum_k cos_coeffs[k] cos(n_k x) + sin_coeffs[k] sin(n_k x)."""

    freqs: np.ndarray
    cos_coeffs: np.ndarray
    sin_coeffs: np.ndarray
    mean: float = 0.0

    def __post_init__(self):
        freqs = _as_freqs(self.freqs)
        _check_freqs(freqs)
        c = np.asarray(self.cos_coeffs, dtype=float)
        s = np.asarray(self.sin_coeffs, dtype=float)
        if c.shape != freqs.shape or s.shape != freqs.shape:
            raise PolynomialError("coefficient and frequency arrays differ in length")
        object.__setattr__(self, "freqs", _frozen(freqs))
        object.__setattr__(self, "cos_coeffs", _frozen(c))
        object.__setattr__(self, "sin_coeffs", _frozen(s))
        object.__setattr__(self, "mean", float(self.mean))

    @property
    def degree(self) -> int:
        return int(self.freqs[-1])

    def analytic(self) -> TrigPoly:
        """The TrigPoly whose real part is this (mean-zero) polynomial."""
        if self.mean != 0.0:
            raise ValueError("only mean-zero polynomials have an analytic completion here")
        return TrigPoly(self.freqs, self.cos_coeffs - 1j * self.sin_coeffs)

    def __call__(self, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        a = self.cos_coeffs - 1j * self.sin_coeffs
        return self.mean + _accel.trig_direct(self.freqs, a, x).real

    def derivative(self, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        n = self.freqs.astype(float)
        # d/dx (c cos + s sin) = n (s cos - c sin)
        a = n * (self.sin_coeffs + 1j * self.cos_coeffs)
        return _accel.trig_direct(self.freqs, a, x).real

    def scaled(self, c: float) -> "RealTrig":
        return RealTrig(self.freqs, c * self.cos_coeffs, c * self.sin_coeffs, c * self.mean)


@dataclass(frozen=True)
class CertifiedExtremum:
    """A grid extremum plus a rigorous enclosure of the true extremum.

    For a minimum the true value lies in [grid_value - error_radius, grid_value];
    for a sup it lies in [grid_value, grid_value + error_radius].
    """

    grid_value: float
    refined_value: float
    error_radius: float
    arg: float
    direction: str
    certificate: str = "lipschitz"
    grid: int = 0

    @property
    def lower(self) -> float:
        if self.direction == LOWER_BOUND_OF_MIN:
            return self.grid_value - self.error_radius
        return self.grid_value

    @property
    def upper(self) -> float:
        if self.direction == LOWER_BOUND_OF_MIN:
            return self.grid_value
        return self.grid_value + self.error_radius

    def contains(self, value: float, tol: float = 0.0) -> bool:
        return self.lower - tol <= value <= self.upper + tol


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def conjugate(f: RealTrig) -> RealTrig:
    """cos(nx) -> sin(nx), sin(nx) -> -cos(nx), termwise."""
    if f.mean != 0.0:
        raise ValueError(f"conjugate is defined here only for mean-zero polynomials (mean={f.mean})")
    return RealTrig(f.freqs, -f.sin_coeffs, f.cos_coeffs)


def _is_pow2(k: int) -> bool:
    return k > 0 and (k & (k - 1)) == 0


def default_grid(degree: int) -> int:
    """Next power of two >= max(4096, 16 * degree)."""
    target = max(4096, 16 * int(degree))
    return 1 << (target - 1).bit_length()


def grid_points(K: int) -> np.ndarray:
    return TWO_PI * np.arange(K) / K


def _check_grid(K: int, degree: int, factor: int = 1) -> None:
    if not isinstance(K, (int, np.integer)) or not _is_pow2(int(K)):
        raise ValueError(f"grid size must be a power of two, got {K}")
    if K <= factor * degree:
        what = "aliasing" if factor == 1 else "grid too coarse for certification"
        raise ValueError(f"grid size {K} must exceed {factor} * max frequency {degree} ({what})")


def _synthesize(freqs: np.ndarray, coeffs: np.ndarray, K: int) -> np.ndarray:
    bins = np.zeros(K, dtype=np.complex128)
    bins[freqs] = coeffs
    return K * np.fft.ifft(bins)


def grid_eval(p: TrigPoly, K: int) -> np.ndarray:
    """P(2 pi j / K), j = 0..K-1, by one inverse FFT."""
    _check_grid(K, p.degree)
    return _synthesize(p.freqs, p.coeffs, K)


def real_grid_eval(f: RealTrig, K: int) -> np.ndarray:
    _check_grid(K, f.degree)
    return f.mean + _synthesize(f.freqs, f.cos_coeffs - 1j * f.sin_coeffs, K).real


def lipschitz_bound(f: RealTrig) -> float:
    """sum_k n_k (|cos_k| + |sin_k|), an upper bound for ||f'||_inf."""
    return float(np.sum(f.freqs * (np.abs(f.cos_coeffs) + np.abs(f.sin_coeffs))))


def _refine(fun, dfun, x_left: float, x_mid: float, x_right: float,
            y_left: float, y_mid: float, y_right: float, steps: int = 30) -> float:
    """Locate a local minimiser of fun near x_mid: parabolic vertex, then bisection on dfun."""
    denom = y_left - 2.0 * y_mid + y_right
    h = x_mid - x_left
    x0 = x_mid
    if denom > 0:
        x0 = x_mid + 0.5 * h * (y_left - y_right) / denom
    a, b = x_left, x_right
    da, db = float(dfun(a)), float(dfun(b))
    if not (da <= 0.0 <= db):
        return x0
    x = x0 if a < x0 < b else 0.5 * (a + b)
    for _ in range(steps):
        d = float(dfun(x))
        if d == 0.0:
            break
        if d < 0.0:
            a = x
        else:
            b = x
        x = 0.5 * (a + b)
    return x if fun(x) <= fun(x0) else x0


def _bernstein_cos(degree: int, K: int) -> float:
    return math.cos(degree * math.pi / K)


def certified_min(f: RealTrig, K: int | None = None, certificate: str = "lipschitz") -> CertifiedExtremum:
    """Certified enclosure of min_x f(x)."""
    K = default_grid(f.degree) if K is None else K
    _check_grid(K, f.degree, factor=8)
    if certificate not in CERTIFICATES:
        raise ValueError(f"unknown certificate {certificate!r}")
    vals = real_grid_eval(f, K)
    j = int(np.argmin(vals))
    gmin = float(vals[j])
    h = TWO_PI / K
    if certificate == "lipschitz":
        radius = 0.5 * h * lipschitz_bound(f)
    else:
        cb = _bernstein_cos(f.degree, K)
        sup_centered = float(np.max(np.abs(vals - f.mean))) / cb
        radius = sup_centered * (1.0 - cb)
    xs = grid_points(K)
    x_ref = _refine(lambda x: f(x)[0], lambda x: f.derivative(x)[0],
                    xs[j] - h, xs[j], xs[j] + h,
                    float(vals[j - 1]), gmin, float(vals[(j + 1) % K]))
    refined = min(gmin, float(f(x_ref)[0]))
    refined = max(refined, gmin - radius)
    return CertifiedExtremum(gmin, refined, radius, float(x_ref % TWO_PI), LOWER_BOUND_OF_MIN, certificate, K)


def certified_sup_abs(f: RealTrig, K: int | None = None, certificate: str = "lipschitz") -> CertifiedExtremum:
    """Certified enclosure of sup_x |f(x)|."""
    K = default_grid(f.degree) if K is None else K
    _check_grid(K, f.degree, factor=8)
    if certificate not in CERTIFICATES:
        raise ValueError(f"unknown certificate {certificate!r}")
    vals = real_grid_eval(f, K)
    absvals = np.abs(vals)
    j = int(np.argmax(absvals))
    gmax = float(absvals[j])
    h = TWO_PI / K
    if certificate == "lipschitz":
        radius = 0.5 * h * lipschitz_bound(f)
    else:
        cb = _bernstein_cos(f.degree, K)
        radius = gmax * (1.0 / cb - 1.0)
    sign = 1.0 if vals[j] >= 0 else -1.0
    xs = grid_points(K)
    x_ref = _refine(lambda x: -sign * f(x)[0], lambda x: -sign * f.derivative(x)[0],
                    xs[j] - h, xs[j], xs[j] + h,
                    -float(absvals[j - 1]), -gmax, -float(absvals[(j + 1) % K]))
    refined = max(gmax, float(abs(f(x_ref)[0])))
    refined = min(refined, gmax + radius)
    return CertifiedExtremum(gmax, refined, radius, float(x_ref % TWO_PI), UPPER_BOUND_OF_SUP, certificate, K)


def certified_sup_modulus(p: TrigPoly, K: int | None = None, certificate: str = "lipschitz") -> CertifiedExtremum:
    """Certified enclosure of sup_x |P(x)| for a complex polynomial."""
    K = default_grid(p.degree) if K is None else K
    _check_grid(K, p.degree, factor=8)
    if certificate not in CERTIFICATES:
        raise ValueError(f"unknown certificate {certificate!r}")
    mod = np.abs(grid_eval(p, K))
    j = int(np.argmax(mod))
    gmax = float(mod[j])
    if certificate == "lipschitz":
        radius = 0.5 * (TWO_PI / K) * float(np.sum(p.freqs * np.abs(p.coeffs)))
    else:
        # at the maximiser, Re(e^{-i phi} P) is a real polynomial attaining its norm
        radius = gmax * (1.0 / _bernstein_cos(p.degree, K) - 1.0)
    x = float(grid_points(K)[j])
    return CertifiedExtremum(gmax, gmax, radius, x, UPPER_BOUND_OF_SUP, certificate, K)


def power_mean(f: RealTrig, p: float, K: int | None = None) -> tuple[float, float]:
    """(integral of |f|^p dm, error estimate) by the periodic trapezoid rule.

    |f|^p is only finitely smooth at the zeros of f, so the rule converges
    algebraically and its error oscillates with K. The estimate is ten times
    the largest difference between the rules on K, K/2, K/4 and K/8 nodes
    (coarse rules that would alias f are skipped). It is an estimate, not a
    bound; for p = 2 all rules are exact up to rounding.
    """
    p = float(p)
    if not p > 1.0:
        raise ValueError(f"p must exceed 1, got {p}")
    K = default_grid(f.degree) if K is None else K
    vals = np.abs(real_grid_eval(f, K)) ** p
    rules = [float(np.mean(vals))]
    for k in (2, 4, 8):
        if K // k <= 2 * f.degree and len(rules) > 1:
            break
        rules.append(float(np.mean(vals[::k])))
    diff = max(abs(a - b) for a, b in zip(rules, rules[1:]))
    return rules[0], 10.0 * diff + 4.0 * _EPS * rules[0]


def lp_norm(f: RealTrig, p: float, K: int | None = None, root: bool = False) -> float:
    """Integral of |f|^p dm (or its p-th root with ``root=True``)."""
    value, _ = power_mean(f, p, K)
    return value ** (1.0 / p) if root else value


def parseval_l2(p: TrigPoly) -> float:
    """(1/2) sum |a_k|^2, the squared L2 norm of Re P and of Im P."""
    return 0.5 * math.fsum(float(v) for v in np.abs(p.coeffs) ** 2)


def as_real_trig(terms: Sequence[tuple[int, float, float]], mean: float = 0.0) -> RealTrig:
    """Build a RealTrig from (n, cos_coeff, sin_coeff) triples."""
    terms = list(terms)
    return RealTrig([t[0] for t in terms], [t[1] for t in terms], [t[2] for t in terms], mean)
