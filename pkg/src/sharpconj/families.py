"""Polynomial families: Rudin-Shapiro, Chowla frequency sets, random ensembles.

The sharpness sweep runs the Rudin-Shapiro polynomials
P_N(x) = sum_{n=1}^N eps_n exp(i n x), whose sup norm is O(sqrt N), and
reports M_N * ||f~_N||_inf / N. Flatness caps this ratio at (sup|P_N| / sqrt N)^2
(25 when the flatness constant is 5), while the p = 2 inequality keeps it
above pi^2 / (32 G).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _accel
from .constants import corollary2_constant
from .trigpoly import TrigPoly, certified_min, certified_sup_abs, certified_sup_modulus

KINDS = ("rudin_shapiro", "chowla_set", "random_phase", "random_sign")
SWEEP_CAP = 1 << 14
FREQ_FACTOR = 16


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    N: int
    seed: int = 0
    frequency_set: tuple[int, ...] | None = None
    freq_factor: int = FREQ_FACTOR

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}; expected one of {KINDS}")
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if self.frequency_set is not None:
            fs = tuple(int(a) for a in self.frequency_set)
            if any(a < 1 for a in fs) or any(b <= a for a, b in zip(fs, fs[1:])):
                raise ValueError("frequency_set must be strictly increasing positive integers")
            object.__setattr__(self, "frequency_set", fs)


def rudin_shapiro_signs(N: int) -> np.ndarray:
    """eps_1..eps_N with eps_n = (-1)^(number of '11' blocks in binary n)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return np.asarray(_accel.rudin_shapiro(N)[1:])


def rudin_shapiro_recurrence(n_max: int) -> np.ndarray:
    """a_0..a_{n_max} from a_0 = 1, a_{2n} = a_n, a_{2n+1} = (-1)^n a_n."""
    a = np.empty(n_max + 1, dtype=np.int64)
    a[0] = 1
    for m in range(1, n_max + 1):
        n = m >> 1
        a[m] = a[n] if m % 2 == 0 else (1 - 2 * (n % 2)) * a[n]
    return a


def flat_polynomial(N: int) -> TrigPoly:
    return TrigPoly(np.arange(1, N + 1), rudin_shapiro_signs(N).astype(float))


def chowla_family(A: Sequence[int]) -> TrigPoly:
    """sum_{a in A} exp(i a x): real part C_A, conjugate S_A."""
    A = list(A)
    if not A:
        raise ValueError("frequency set must be non-empty")
    return TrigPoly(A, np.ones(len(A)))


def random_family(spec: FamilySpec) -> TrigPoly:
    if spec.kind == "rudin_shapiro":
        return flat_polynomial(spec.N)
    if spec.kind == "chowla_set":
        return chowla_family(spec.frequency_set or range(1, spec.N + 1))
    rng = np.random.default_rng(spec.seed)
    freqs = np.sort(rng.choice(np.arange(1, spec.freq_factor * spec.N + 1), size=spec.N, replace=False))
    if spec.kind == "random_phase":
        coeffs = np.exp(2j * math.pi * rng.random(spec.N))
    else:
        coeffs = rng.choice([-1.0, 1.0], size=spec.N)
    return TrigPoly(freqs, coeffs)


def regression_ensemble(count: int = 1000, max_n: int = 32, seed: int = 20260101) -> list[TrigPoly]:
    """Seeded unit-modulus random polynomials, N <= max_n, frequencies <= 16 * max_n."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(1, max_n + 1))
        kind = "random_phase" if i % 2 == 0 else "random_sign"
        factor = (FREQ_FACTOR * max_n) // n
        out.append(random_family(FamilySpec(kind, n, int(rng.integers(2 ** 31)), freq_factor=factor)))
    return out


@dataclass(frozen=True)
class SharpnessRow:
    N: int
    M_lower: float
    M_upper: float
    sup_lower: float
    sup_upper: float
    product_upper: float
    ratio_upper: float
    ratio_lower: float
    flat_upper: float  # certified sup |P_N| / sqrt(N)

    CSV_COLUMNS = ("N", "M_lower", "M_upper", "sup_lower", "sup_upper",
                   "product_upper", "ratio_upper", "ratio_lower")


def sharpness_row(P: TrigPoly, grid_factor: int = 16, certificate: str = "bernstein") -> SharpnessRow:
    N = P.N
    K = grid_factor * P.degree
    if K & (K - 1):
        K = 1 << K.bit_length()
    m = certified_min(P.real_part(), K, certificate)
    s = certified_sup_abs(P.imag_part(), K, certificate)
    mod = certified_sup_modulus(P, K, certificate)
    m_lower, m_upper = -m.upper, -m.lower
    product_upper = m_upper * s.upper
    return SharpnessRow(
        N=N, M_lower=m_lower, M_upper=m_upper, sup_lower=s.lower, sup_upper=s.upper,
        product_upper=product_upper, ratio_upper=product_upper / N,
        ratio_lower=m_lower * s.lower / N, flat_upper=mod.upper / math.sqrt(N),
    )


def sharpness_sweep(N_list: Sequence[int], cap: int = SWEEP_CAP, grid_factor: int = 16,
                    certificate: str = "bernstein", family: str = "rudin_shapiro") -> list[SharpnessRow]:
    """Certified rows for M_N * ||f~_N||_inf over the given sizes (deterministic order)."""
    rows = []
    for N in N_list:
        N = int(N)
        if N > cap:
            raise ValueError(f"N={N} exceeds the sweep cap {cap}")
        if N < 1:
            raise ValueError("N must be >= 1")
        P = flat_polynomial(N) if family == "rudin_shapiro" else chowla_family(range(1, N + 1))
        rows.append(sharpness_row(P, grid_factor, certificate))
    return rows


def sweep_summary(rows: Sequence[SharpnessRow]) -> dict:
    """Observed extremes of a sweep against the two-sided window."""
    if not rows:
        return {"rows": 0}
    flat = max(r.flat_upper for r in rows)
    return {
        "rows": len(rows),
        "max_ratio_upper": max(r.ratio_upper for r in rows),
        "min_ratio_lower": min(r.ratio_lower for r in rows),
        "observed_flatness_constant": flat,
        "upper_window": max(25.0, flat ** 2),
        "lower_window": corollary2_constant().value,
    }
