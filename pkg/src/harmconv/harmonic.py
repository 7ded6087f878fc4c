"""Harmonic maps ``f = h + conj(g)`` with ``h``, ``g`` truncated power series.

Covers harmonic (Hadamard) convolution, dilatation, Jacobian, the shear
construction, membership residuals for the classes ``W^-(phi)`` (``h - g =
phi``) and ``W^+(phi)`` (``h + g = phi``), and the harmonic Alexander
operator.
"""
from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass

import numpy as np

from .series import (
    AnalyticSeries,
    OrderMismatchError,
    _check_domain,
    add,
    cauchy_product,
    differentiate,
    evaluate,
    fmt_float,
    hadamard,
    integrate,
    reciprocal,
    scale,
)

MEMBERSHIP_TOL = 1e-12


class Direction(enum.Enum):
    REAL = "real"
    IMAG = "imag"


class ClassKind(enum.Enum):
    MINUS = "minus"  # h - g = phi
    PLUS = "plus"  # h + g = phi


class NormalizationError(ValueError):
    """Map or series violates the f(0)=0, f_z(0)=1, f_zbar(0)=0 normalization."""


def is_normalized_analytic(p: AnalyticSeries, tol: float = MEMBERSHIP_TOL) -> bool:
    return abs(p.coeffs[0]) <= tol and abs(p.coeffs[1] - 1.0) <= tol


@dataclass(frozen=True)
class HarmonicMap:
    h: AnalyticSeries
    g: AnalyticSeries

    def __post_init__(self):
        if self.h.order != self.g.order:
            raise OrderMismatchError(
                f"h and g orders differ: {self.h.order} vs {self.g.order}"
            )

    @classmethod
    def analytic(cls, h: AnalyticSeries) -> HarmonicMap:
        """The map ``h`` viewed as harmonic (``g = 0``)."""
        return cls(h, AnalyticSeries.zeros(h.order))

    @property
    def order(self) -> int:
        return self.h.order

    def __call__(self, z):
        return evaluate_map(self, z)

    def is_normalized(self, tol: float = MEMBERSHIP_TOL) -> bool:
        g = self.g.coeffs
        return is_normalized_analytic(self.h, tol) and abs(g[0]) <= tol and abs(g[1]) <= tol

    def resized(self, order: int) -> HarmonicMap:
        return HarmonicMap(self.h.resized(order), self.g.resized(order))

    def max_abs_diff(self, other: HarmonicMap) -> float:
        if self.order != other.order:
            raise OrderMismatchError(f"orders differ: {self.order} vs {other.order}")
        return float(
            max(
                np.max(np.abs(self.h.coeffs - other.h.coeffs)),
                np.max(np.abs(self.g.coeffs - other.g.coeffs)),
            )
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "re_h", "im_h", "re_g", "im_g"])
        for k, (a, b) in enumerate(zip(self.h.coeffs, self.g.coeffs)):
            w.writerow([k, fmt_float(a.real), fmt_float(a.imag), fmt_float(b.real), fmt_float(b.imag)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> HarmonicMap:
        rows = list(csv.DictReader(io.StringIO(text)))
        if not rows or set(rows[0]) != {"k", "re_h", "im_h", "re_g", "im_g"}:
            raise ValueError("expected a CSV with header k,re_h,im_h,re_g,im_g")
        order = max(int(r["k"]) for r in rows)
        h = np.zeros(order + 1, dtype=np.complex128)
        g = np.zeros(order + 1, dtype=np.complex128)
        for r in rows:
            k = int(r["k"])
            h[k] = complex(float(r["re_h"]), float(r["im_h"]))
            g[k] = complex(float(r["re_g"]), float(r["im_g"]))
        return cls(AnalyticSeries(h), AnalyticSeries(g))


@dataclass(frozen=True)
class ClassTag:
    """Target class ``W^-(phi)`` or ``W^+(phi)``."""

    kind: ClassKind
    target: AnalyticSeries

    def __post_init__(self):
        if not is_normalized_analytic(self.target):
            raise NormalizationError("class target phi must satisfy phi(0)=0, phi'(0)=1")

    @classmethod
    def minus(cls, phi: AnalyticSeries) -> ClassTag:
        return cls(ClassKind.MINUS, phi)

    @classmethod
    def plus(cls, phi: AnalyticSeries) -> ClassTag:
        return cls(ClassKind.PLUS, phi)

    def build(self, g: AnalyticSeries) -> HarmonicMap:
        """The unique member of the class with co-analytic part ``g``."""
        sign = 1.0 if self.kind is ClassKind.MINUS else -1.0
        return HarmonicMap(add(self.target, scale(g, sign)), g)

    def __str__(self):
        sign = "-" if self.kind is ClassKind.MINUS else "+"
        return f"W_H^{sign}(phi)"


def evaluate_map(f: HarmonicMap, z):
    return evaluate(f.h, z) + np.conj(evaluate(f.g, z))


def convolve(f: HarmonicMap, F: HarmonicMap) -> HarmonicMap:
    """Harmonic convolution ``h*H + conj(g*G)``."""
    return HarmonicMap(hadamard(f.h, F.h), hadamard(f.g, F.g))


def dilatation(f: HarmonicMap) -> AnalyticSeries:
    """Series of ``g'/h'``; usable to order N-1."""
    dh = differentiate(f.h)
    if abs(dh.coeffs[0]) <= 1e-13:
        raise ZeroDivisionError("h'(0) vanishes; dilatation series undefined")
    return cauchy_product(differentiate(f.g), reciprocal(dh))


def derivatives_at(f: HarmonicMap, z):
    """Pointwise ``(h'(z), g'(z))``."""
    return evaluate(differentiate(f.h), z), evaluate(differentiate(f.g), z)


def dilatation_at(f: HarmonicMap, z):
    """Pointwise ``g'(z)/h'(z)``, without series division."""
    dh, dg = derivatives_at(f, z)
    return dg / dh


def jacobian_at(f: HarmonicMap, z):
    """``|h'(z)|^2 - |g'(z)|^2``."""
    _check_domain(z)
    dh, dg = derivatives_at(f, z)
    return np.abs(dh) ** 2 - np.abs(dg) ** 2


def shear(phi: AnalyticSeries, w: AnalyticSeries, direction: Direction) -> HarmonicMap:
    """Shear ``phi`` along the given axis with dilatation ``w``.

    Along the real axis ``h - g = phi``; along the imaginary axis ``h + g =
    phi``.  Both parts vanish at 0.
    """
    if phi.order != w.order:
        raise OrderMismatchError(f"phi and w orders differ: {phi.order} vs {w.order}")
    one = AnalyticSeries.constant(1.0, w.order)
    denom = add(one, scale(w, -1.0)) if direction is Direction.REAL else add(one, w)
    if abs(denom.coeffs[0]) <= 1e-13:
        side = "1 - w" if direction is Direction.REAL else "1 + w"
        raise ZeroDivisionError(f"({side})(0) vanishes; shear undefined")
    dh = cauchy_product(differentiate(phi), reciprocal(denom))
    dg = cauchy_product(w, dh)
    # differentiate() lost nothing below N, and integrate() only needs indices < N
    h = AnalyticSeries(integrate(dh).coeffs)
    g = AnalyticSeries(integrate(dg).coeffs)
    return HarmonicMap(h, g)


def class_residual(f: HarmonicMap, tag: ClassTag) -> AnalyticSeries:
    """``(h - g) - phi`` or ``(h + g) - phi``; zero iff ``f`` is in the class."""
    sign = -1.0 if tag.kind is ClassKind.MINUS else 1.0
    return add(add(f.h, scale(f.g, sign)), scale(tag.target, -1.0))


def membership_residual(f: HarmonicMap, tag: ClassTag) -> float:
    """Largest class residual coefficient, relative to the size of the coefficients involved.

    Maps such as the harmonic Koebe function have coefficients growing like
    ``n**3``; at high orders their rounding error dwarfs any fixed absolute
    tolerance, so the residual is divided by ``max(1, largest |coefficient|)``.
    """
    size = max(1.0, f.h.max_abs(), f.g.max_abs(), tag.target.max_abs())
    return class_residual(f, tag).max_abs() / size


def is_member(f: HarmonicMap, tag: ClassTag, tol: float = MEMBERSHIP_TOL) -> bool:
    return membership_residual(f, tag) < tol


def alexander(f: HarmonicMap) -> HarmonicMap:
    """Coefficient map ``a_n -> a_n/n``, ``b_n -> b_n/n``."""
    if not f.is_normalized():
        raise NormalizationError("the Alexander operator needs a normalized map")
    n = f.order
    inv = np.zeros(n + 1)
    inv[1:] = 1.0 / np.arange(1, n + 1)
    return HarmonicMap(AnalyticSeries(f.h.coeffs * inv), AnalyticSeries(f.g.coeffs * inv))
