"""Truncated complex power series ``c_0 + c_1 z + ... + c_N z^N``.

Every analytic function in the package (the analytic and co-analytic parts of
a harmonic map, shear targets, dilatations) is an :class:`AnalyticSeries`.
Values are immutable; all operations return new series.
"""
from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass
from numbers import Number

import numpy as np

from . import kernels

DEFAULT_ORDER = 64
ORDER_ENV = "HARMCONV_ORDER"

# |z| may exceed 1 by this much (points built as r*exp(i*theta) with r == 1)
DOMAIN_SLACK = 1e-12
# constant terms at or below this modulus are treated as zero when inverting
ZERO_CONSTANT_TOL = 1e-13


class DomainError(ValueError):
    """Evaluation point outside the closed unit disk."""


class OrderMismatchError(ValueError):
    """Binary operation on series of different truncation orders."""


def default_order() -> int:
    """Truncation order used when none is given (``HARMCONV_ORDER`` overrides 64)."""
    raw = os.environ.get(ORDER_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_ORDER
    order = int(raw)
    if order < 1:
        raise ValueError(f"{ORDER_ENV} must be a positive integer, got {raw!r}")
    return order


@dataclass(frozen=True, eq=False)
class AnalyticSeries:
    """Coefficients ``c_0..c_N`` of a truncated power series.

    ``valid_order`` is the highest index whose coefficient is trusted as a
    coefficient of the underlying (infinite) series.  It equals ``order`` for
    series built from exact data and drops by one on differentiation; binary
    operations keep the minimum of their operands.
    """

    coeffs: np.ndarray
    valid_order: int | None = None

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).ravel()
        if len(c) < 2:
            raise ValueError("a series needs order N >= 1 (at least two coefficients)")
        if not np.all(np.isfinite(c)):
            raise ValueError("series coefficients must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)
        n = len(c) - 1
        valid = n if self.valid_order is None else min(int(self.valid_order), n)
        object.__setattr__(self, "valid_order", valid)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, order: int) -> AnalyticSeries:
        return cls(np.zeros(order + 1, dtype=np.complex128))

    @classmethod
    def constant(cls, value: complex, order: int) -> AnalyticSeries:
        c = np.zeros(order + 1, dtype=np.complex128)
        c[0] = value
        return cls(c)

    @classmethod
    def monomial(cls, k: int, order: int, coeff: complex = 1.0) -> AnalyticSeries:
        """``coeff * z**k``; the zero series if ``k > order``."""
        if k < 0:
            raise ValueError("monomial degree must be non-negative")
        c = np.zeros(order + 1, dtype=np.complex128)
        if k <= order:
            c[k] = coeff
        return cls(c)

    @classmethod
    def identity(cls, order: int) -> AnalyticSeries:
        return cls.monomial(1, order)

    @classmethod
    def from_polynomial(cls, coeffs, order: int) -> AnalyticSeries:
        """Zero-pad (or truncate) a finite coefficient list to ``order``."""
        c = np.zeros(order + 1, dtype=np.complex128)
        src = np.asarray(coeffs, dtype=np.complex128)[: order + 1]
        c[: len(src)] = src
        return cls(c)

    @classmethod
    def from_function(cls, coeff_fn, order: int) -> AnalyticSeries:
        """Series with ``c_k = coeff_fn(k)`` for ``k = 0..order``."""
        return cls(np.array([coeff_fn(k) for k in range(order + 1)], dtype=np.complex128))

    @classmethod
    def rational(cls, numerator, denominator, order: int) -> AnalyticSeries:
        """Expansion of ``P(z)/Q(z)`` for coefficient lists ``P`` and ``Q`` (``Q(0) != 0``)."""
        num = cls.from_polynomial(numerator, order)
        den = cls.from_polynomial(denominator, order)
        return cauchy_product(num, reciprocal(den))

    # -- basic protocol ---------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __repr__(self):
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[:5])
        more = ", ..." if self.order > 4 else ""
        return f"AnalyticSeries(order={self.order}, coeffs=[{head}{more}])"

    def resized(self, order: int) -> AnalyticSeries:
        """Explicit zero-pad or truncation to a new order."""
        valid = min(self.valid_order, order) if order <= self.order else self.valid_order
        return AnalyticSeries(
            AnalyticSeries.from_polynomial(self.coeffs, order).coeffs, valid_order=valid
        )

    def __call__(self, z):
        return evaluate(self, z)

    def __add__(self, other):
        if isinstance(other, AnalyticSeries):
            return add(self, other)
        if isinstance(other, Number):
            return add(self, AnalyticSeries.constant(other, self.order))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return scale(self, -1.0)

    def __sub__(self, other):
        if isinstance(other, AnalyticSeries):
            return add(self, scale(other, -1.0))
        if isinstance(other, Number):
            return add(self, AnalyticSeries.constant(-other, self.order))
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        # series * series is the Cauchy (pointwise-function) product
        if isinstance(other, AnalyticSeries):
            return cauchy_product(self, other)
        if isinstance(other, Number):
            return scale(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def allclose(self, other: AnalyticSeries, atol: float = 1e-12) -> bool:
        _check_orders(self, other)
        return bool(np.max(np.abs(self.coeffs - other.coeffs)) <= atol)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    # -- text dump --------------------------------------------------------

    def to_csv(self) -> str:
        """``k,re,im`` rows for k = 0..N, 17 significant digits."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "re", "im"])
        for k, c in enumerate(self.coeffs):
            w.writerow([k, fmt_float(c.real), fmt_float(c.imag)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> AnalyticSeries:
        rows = list(csv.DictReader(io.StringIO(text)))
        if not rows or set(rows[0]) != {"k", "re", "im"}:
            raise ValueError("expected a CSV with header k,re,im")
        order = max(int(r["k"]) for r in rows)
        c = np.zeros(order + 1, dtype=np.complex128)
        for r in rows:
            c[int(r["k"])] = complex(float(r["re"]), float(r["im"]))
        return cls(c)


def fmt_float(x: float) -> str:
    # 17 significant digits round-trips a double; +0.0 avoids printing "-0"
    return format(float(x) + 0.0, ".17g")


def _check_orders(p: AnalyticSeries, q: AnalyticSeries):
    if p.order != q.order:
        raise OrderMismatchError(f"series orders differ: {p.order} vs {q.order}")


def _check_domain(z):
    if np.any(np.abs(z) > 1.0 + DOMAIN_SLACK):
        raise DomainError("evaluation point outside the closed unit disk |z| <= 1")


def evaluate(p: AnalyticSeries, z):
    """Horner evaluation of ``sum c_k z^k``; ``z`` may be a scalar or an array."""
    if np.isscalar(z):
        z = complex(z)
        _check_domain(z)
        acc = 0j
        for c in p.coeffs[::-1]:
            acc = acc * z + c
        return acc
    z = np.asarray(z, dtype=np.complex128)
    _check_domain(z)
    return kernels.horner(p.coeffs, z)


def add(p: AnalyticSeries, q: AnalyticSeries) -> AnalyticSeries:
    _check_orders(p, q)
    return AnalyticSeries(p.coeffs + q.coeffs, valid_order=min(p.valid_order, q.valid_order))


def scale(p: AnalyticSeries, factor: complex) -> AnalyticSeries:
    return AnalyticSeries(p.coeffs * factor, valid_order=p.valid_order)


def differentiate(p: AnalyticSeries) -> AnalyticSeries:
    """Term-by-term derivative, zero-padded back to order N (usable order N-1)."""
    n = p.order
    c = np.zeros(n + 1, dtype=np.complex128)
    c[:n] = p.coeffs[1:] * np.arange(1, n + 1)
    return AnalyticSeries(c, valid_order=max(min(p.valid_order, n) - 1, 0))


def integrate(p: AnalyticSeries) -> AnalyticSeries:
    """Antiderivative vanishing at 0; ``c_N`` of the input falls off the end."""
    n = p.order
    c = np.zeros(n + 1, dtype=np.complex128)
    c[1:] = p.coeffs[:n] / np.arange(1, n + 1)
    return AnalyticSeries(c, valid_order=min(p.valid_order + 1, n))


def cauchy_product(p: AnalyticSeries, q: AnalyticSeries) -> AnalyticSeries:
    _check_orders(p, q)
    return AnalyticSeries(
        kernels.cauchy(p.coeffs, q.coeffs), valid_order=min(p.valid_order, q.valid_order)
    )


def reciprocal(p: AnalyticSeries) -> AnalyticSeries:
    if abs(p.coeffs[0]) <= ZERO_CONSTANT_TOL:
        raise ZeroDivisionError(
            f"cannot invert a series with constant term {p.coeffs[0]!r}"
        )
    return AnalyticSeries(kernels.reciprocal(p.coeffs), valid_order=p.valid_order)


def divide(p: AnalyticSeries, q: AnalyticSeries) -> AnalyticSeries:
    """``p / q`` as ``p * reciprocal(q)``."""
    return cauchy_product(p, reciprocal(q))


def hadamard(p: AnalyticSeries, q: AnalyticSeries) -> AnalyticSeries:
    """Coefficientwise (Hadamard) product."""
    _check_orders(p, q)
    return AnalyticSeries(p.coeffs * q.coeffs, valid_order=min(p.valid_order, q.valid_order))


def geometric_tail(order: int, r: float, scale: float = 1.0, power: int = 0) -> float:
    """Upper bound for ``sum_{n > order} scale * n**power * r**n`` (``0 <= r < 1``)."""
    if r <= 0.0:
        return 0.0
    if r >= 1.0:
        return float("inf")
    total = 0.0
    n = order + 1
    log_r = np.log(r)
    term = scale * float(n) ** power * r**n
    while True:
        total += term
        nxt = scale * float(n + 1) ** power * r ** (n + 1)
        # once terms decrease, the rest is dominated by a geometric series
        if n > power / -log_r:
            q = ((n + 1) / n) ** power * r
            if q < 1.0 and nxt <= 1e-18 * max(total, 1e-300):
                return total + nxt / (1.0 - q)
        if nxt == 0.0:
            return total
        term = nxt
        n += 1


def order_for_radius(r: float, tol: float = 1e-10, power: int = 2, minimum: int = 64) -> int:
    """Smallest power of two ``N >= minimum`` with ``N**power * r**N <= tol``.

    Used to pick a truncation order whose tail is negligible on ``|z| <= r``
    for coefficients growing at most like ``n**power``.
    """
    n = minimum
    while n**power * r**n > tol:
        n *= 2
    return n
