"""Exact q-series toolkit for double-sum identities of modulus 9 and their relatives."""

from .finite import FiniteSpec, LimitFamily, S_finite, kr5_finite, limit_series, reflect_finite
from .qkit import binom, inv_product, product, qpoch
from .report import VerificationReport
from .ring import OMEGA, OMEGA2, Eisenstein, TruncLaurentSeries, q
from .sums import S, S_series, SumSpec, kr_combo, reduce_to_basis

__version__ = "0.1.0"

__all__ = [
    "Eisenstein", "FiniteSpec", "LimitFamily", "OMEGA", "OMEGA2", "S", "S_finite", "S_series", "SumSpec",
    "TruncLaurentSeries", "VerificationReport", "binom", "inv_product", "kr5_finite", "kr_combo",
    "limit_series", "product", "q", "qpoch", "reduce_to_basis", "reflect_finite",
]
