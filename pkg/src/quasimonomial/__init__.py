"""Exact computations for very general quasimonomial plane valuations."""

from .cluster import Cluster, Normalization, build_cluster
from .curves import BranchCurve, fibonacci_curve, sporadic_catalog
from .errors import DimensionError, DomainError, InternalLimitError, RankError
from .exactnum import Ordering, QuadNum, cf_expand, quad_cmp, sqrt_rational
from .lattice import DivisorClass, canonical_class, classify_negative, intersect
from .muhat import MuHatResult, Status, muhat_eval
from .unloading import unload, valuation_ideal_mults

__version__ = "0.1.0"

__all__ = [
    "BranchCurve",
    "Cluster",
    "DimensionError",
    "DivisorClass",
    "DomainError",
    "InternalLimitError",
    "MuHatResult",
    "Normalization",
    "Ordering",
    "QuadNum",
    "RankError",
    "Status",
    "build_cluster",
    "canonical_class",
    "cf_expand",
    "classify_negative",
    "fibonacci_curve",
    "intersect",
    "muhat_eval",
    "quad_cmp",
    "sporadic_catalog",
    "sqrt_rational",
    "unload",
    "valuation_ideal_mults",
]
