"""Certified checks of M >= ||f~||_p^p / (A_p ||f~||_inf^(p-1)) and its p = 2 form.

Every quantity is taken on its conservative side: M from below (minus the
grid minimum of f), ||f~||_inf from above (grid sup plus the certificate
radius), the p-th power mean lowered by its quadrature error estimate and
A_p raised by its own. A ``holds`` verdict is therefore certified up to the
stated quadrature error; the raw slack is always reported.
"""
from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from .constants import sharp_constant_Ap
from .trigpoly import (
    RealTrig,
    TrigPoly,
    certified_min,
    certified_sup_abs,
    default_grid,
    grid_points,
    parseval_l2,
    power_mean,
    real_grid_eval,
)

log = logging.getLogger(__name__)

VERDICT_TOL = 1e-9


@dataclass(frozen=True)
class InequalityReport:
    p: float
    M_lower: float
    sup_conj_upper: float
    pmean_conj: float
    pmean_error: float
    A_p: float
    rhs: float
    slack: float
    holds: bool
    parseval_half_sum: float | None
    grid: int
    corollary: int = 1

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "InequalityReport":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in names})


def _verdict(m_lower: float, rhs: float) -> tuple[float, bool]:
    slack = m_lower - rhs
    return slack, bool(m_lower + VERDICT_TOL >= rhs)


def write_reproduction(P: TrigPoly, report: InequalityReport, directory: str | Path) -> Path:
    """Dump the polynomial, report and grid data of a failed check to a JSON file."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    K = report.grid
    f = P.real_part()
    payload = {
        "polynomial": P.to_json(),
        "report": report.to_dict(),
        "grid": K,
        "x": grid_points(K).tolist(),
        "f": real_grid_eval(f, K).tolist(),
        "f_conj": real_grid_eval(P.imag_part(), K).tolist(),
    }
    tag = hashlib.sha1(json.dumps([P.to_json(), report.p]).encode()).hexdigest()[:12]
    path = directory / f"counterexample_p{report.p:g}_{tag}.json"
    path.write_text(json.dumps(payload, indent=1))
    log.warning("inequality failed (slack %.3e); reproduction written to %s", report.slack, path)
    return path


def check_corollary1(P: TrigPoly, p: float, K: int | None = None, *,
                     certificate: str = "lipschitz", repro_dir: str | Path | None = None) -> InequalityReport:
    p = float(p)
    if not p > 1.0:
        raise ValueError(f"p must exceed 1, got {p}")
    K = default_grid(P.degree) if K is None else K
    f = P.real_part()
    conj = P.imag_part()
    m_lower = -certified_min(f, K, certificate).grid_value
    sup_upper = certified_sup_abs(conj, K, certificate).upper
    pmean, perr = power_mean(conj, p, K)
    a = sharp_constant_Ap(p)
    a_upper = a.value + a.abs_error_estimate
    rhs = max(pmean - perr, 0.0) / (a_upper * sup_upper ** (p - 1.0))
    slack, holds = _verdict(m_lower, rhs)
    report = InequalityReport(
        p=p, M_lower=m_lower, sup_conj_upper=sup_upper, pmean_conj=pmean, pmean_error=perr,
        A_p=a.value, rhs=rhs, slack=slack, holds=holds,
        parseval_half_sum=parseval_l2(P) if p == 2.0 else None, grid=K, corollary=1,
    )
    if not holds and repro_dir is not None:
        write_reproduction(P, report, repro_dir)
    return report


def check_corollary2(P: TrigPoly, K: int | None = None, *,
                     certificate: str = "lipschitz", repro_dir: str | Path | None = None) -> InequalityReport:
    """p = 2 with the exact Parseval value in place of the quadrature mean."""
    K = default_grid(P.degree) if K is None else K
    f = P.real_part()
    m_lower = -certified_min(f, K, certificate).grid_value
    sup_upper = certified_sup_abs(P.imag_part(), K, certificate).upper
    half = parseval_l2(P)
    a = sharp_constant_Ap(2.0)
    # pi^2 / (32 G) * sum|a_k|^2 / sup, written through A_2 = 16 G / pi^2
    rhs = half / ((a.value + a.abs_error_estimate) * sup_upper)
    slack, holds = _verdict(m_lower, rhs)
    report = InequalityReport(
        p=2.0, M_lower=m_lower, sup_conj_upper=sup_upper, pmean_conj=half, pmean_error=0.0,
        A_p=a.value, rhs=rhs, slack=slack, holds=holds, parseval_half_sum=half, grid=K, corollary=2,
    )
    if not holds and repro_dir is not None:
        write_reproduction(P, report, repro_dir)
    return report


def theorem_direct(u_mean: float, v: RealTrig, p: float, B: float | None = None,
                   K: int | None = None, margin: float = VERDICT_TOL) -> bool:
    """Check int |v|^p dm <= A_p B^(p-1) int u dm for the pair u = M + f, v = f~.

    ``B`` defaults to the certified upper bound of sup |v|; a B below the grid
    sup of |v| violates the hypothesis |v| <= B and is rejected.
    """
    p = float(p)
    if not p > 1.0:
        raise ValueError(f"p must exceed 1, got {p}")
    if v.mean != 0.0:
        raise ValueError("v must have mean zero")
    K = default_grid(v.degree) if K is None else K
    sup = certified_sup_abs(v, K)
    if B is None:
        B = sup.upper
    elif B < sup.grid_value:
        raise ValueError(f"B={B} is below sup|v| >= {sup.grid_value}: hypothesis |v| <= B violated")
    pmean, perr = power_mean(v, p, K)
    a = sharp_constant_Ap(p)
    rhs = (a.value + a.abs_error_estimate) * B ** (p - 1.0) * u_mean
    return bool(pmean - perr <= rhs + margin)

