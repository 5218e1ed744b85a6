"""Topological recursion on spectral curves.

Eynard-Orantin differentials (ordinary, Hitchin-global and twisted variants)
on genus-0 parametric and genus-1 hyperelliptic spectral curves, elliptic
period machinery, and numerical verification of the variational identities
relating the genus-0 invariants to the Taylor expansion of the period
matrix.
"""

from .series import LocalSeries, arith, DEFAULT_TERMS
from .ratfun import PF
from .curves import (
    SpectralCurve,
    TwistSection,
    RamPoint,
    build_parametric,
    build_hyperelliptic,
)
from .kernels import Bidifferential, OneForm, RecursionKernel, KernelVariant
from .recursion import MultiDifferential, compute_w, evaluate_w, w03_direct, check_properties
from .periods import CycleBasis, PeriodData, cycle_basis, period_data, theta_form
from .families import CurveFamily, CubicReport, family, fd_tau, rauch_check, dm_cubic, taylor_check
from . import dims

__all__ = [
    "LocalSeries",
    "arith",
    "DEFAULT_TERMS",
    "PF",
    "SpectralCurve",
    "TwistSection",
    "RamPoint",
    "build_parametric",
    "build_hyperelliptic",
    "Bidifferential",
    "OneForm",
    "RecursionKernel",
    "KernelVariant",
    "MultiDifferential",
    "compute_w",
    "evaluate_w",
    "w03_direct",
    "check_properties",
    "CycleBasis",
    "PeriodData",
    "cycle_basis",
    "period_data",
    "theta_form",
    "CurveFamily",
    "CubicReport",
    "family",
    "fd_tau",
    "rauch_check",
    "dm_cubic",
    "taylor_check",
    "dims",
]

__version__ = "0.1.0"
