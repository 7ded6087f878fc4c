"""Truncated power-series toolkit for planar harmonic mappings and their convolutions."""
from .harmonic import (
    ClassKind,
    ClassTag,
    Direction,
    HarmonicMap,
    alexander,
    class_residual,
    convolve,
    dilatation,
    is_member,
    jacobian_at,
    shear,
)
from .kernels import BACKEND
from .series import AnalyticSeries, cauchy_product, default_order, hadamard
from .verify import CheckReport, DiskGrid, Pipeline, run_theorem

__version__ = "0.1.0"

__all__ = [
    "AnalyticSeries",
    "BACKEND",
    "CheckReport",
    "ClassKind",
    "ClassTag",
    "Direction",
    "DiskGrid",
    "HarmonicMap",
    "Pipeline",
    "alexander",
    "cauchy_product",
    "class_residual",
    "convolve",
    "default_order",
    "dilatation",
    "hadamard",
    "is_member",
    "jacobian_at",
    "run_theorem",
    "shear",
]
