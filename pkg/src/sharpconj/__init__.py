"""Sharp one-sided inequalities for conjugate trigonometric sums, checked numerically.

Modules:
    trigpoly     trigonometric polynomials, conjugation, norms, certified extrema
    constants    A_p, Catalan's constant, pi^2/(32G)
    halfstrip    harmonic majorant of |y|^p in the half-strip, kernel, sharpness limit
    inequality   certified checks of the L^p and p = 2 inequalities
    families     Rudin-Shapiro, Chowla sets, random ensembles, order-sharpness sweep
    cli          command-line interface (``python -m sharpconj``)
"""
from ._accel import BACKEND
from .constants import ConstantResult, catalan, corollary2_constant, sharp_constant_Ap
from .trigpoly import (
    CertifiedExtremum,
    RealTrig,
    TrigPoly,
    certified_min,
    certified_sup_abs,
    conjugate,
    grid_eval,
    lipschitz_bound,
    lp_norm,
    parseval_l2,
)
from .inequality import InequalityReport, check_corollary1, check_corollary2, theorem_direct

__version__ = "0.1.0"
