"""Named harmonic maps, each as a truncated series and as a closed form.

Series are built the way the maps are defined (shears of a conformal map,
rational expansions, explicit polynomials); closed forms are evaluated
pointwise with principal branches of ``log`` and ``arg``, which are correct
on the unit disk for every expression used here.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .harmonic import (
    ClassTag,
    Direction,
    HarmonicMap,
    convolve,
    shear,
)
from .series import AnalyticSeries, default_order, geometric_tail

# allowance for rounding in Horner vs closed-form evaluation
ROUNDING_ALLOWANCE = 1e-13


class UnknownMapError(KeyError):
    pass


@dataclass(frozen=True)
class Envelope:
    """Coefficient growth bound ``|a_n| + |b_n| <= scale * n**power``.

    ``degree`` marks polynomial maps: no tail once the order reaches it.
    """

    scale: float
    power: int
    degree: int | None = None

    def tail_bound(self, order: int, r: float) -> float:
        r = float(r)
        rounding = ROUNDING_ALLOWANCE * (1.0 + geometric_tail(0, min(r, 0.999), self.scale, self.power))
        if self.degree is not None and order >= self.degree:
            return rounding
        return geometric_tail(order, r, self.scale, self.power) + rounding


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    series: HarmonicMap
    closed_form: Callable
    provenance: str
    envelope: Envelope
    tag: ClassTag | None = None
    dilatation: AnalyticSeries | None = field(default=None, compare=False)

    def tail_bound(self, r: float) -> float:
        return self.envelope.tail_bound(self.series.order, r)

    def __call__(self, z):
        return self.closed_form(z)


# -- analytic building blocks ------------------------------------------------

def identity_series(order: int) -> AnalyticSeries:
    return AnalyticSeries.identity(order)


def halfplane_series(order: int) -> AnalyticSeries:
    """l(z) = z/(1-z)."""
    return AnalyticSeries.rational([0, 1], [1, -1], order)


def koebe_series(order: int) -> AnalyticSeries:
    """k(z) = z/(1-z)^2."""
    return AnalyticSeries.rational([0, 1], [1, -2, 1], order)


def _conj(x):
    return np.conj(x)


def _asarray(z):
    return np.asarray(z, dtype=np.complex128)


def mu_closed(k: int, z):
    """Analytic part of the real-axis shear of z with dilatation z^k."""
    z = _asarray(z)
    if k == 1:
        return -np.log(1 - z)
    if k == 2:
        return 0.5 * np.log((1 + z) / (1 - z))
    # 1/(1-t^k) = (1/k) sum_j 1/(1 - t/w_j) over k-th roots of unity w_j
    roots = np.exp(2j * np.pi * np.arange(k) / k)
    return sum(-(w / k) * np.log(1 - z / w) for w in roots)


def gamma_closed(k: int, z):
    z = _asarray(z)
    mu = mu_closed(k, z)
    return mu + _conj(mu - z)


def gamma_lower_closed(k: int, z):
    """Analytic part of the imaginary-axis shear of z with dilatation z^k."""
    z = _asarray(z)
    if k == 2:
        return np.log((1 + 1j * z) / (1 - 1j * z)) / 2j  # arctan z
    # roots of -1: 1/(1+t^k) = (1/k) sum_j 1/(1 - t/e_j)
    roots = np.exp(1j * np.pi * (2 * np.arange(k) + 1) / k)
    return sum(-(e / k) * np.log(1 - z / e) for e in roots)


def psi_closed(k: int, z):
    z = _asarray(z)
    if k == 1:
        return _conj(z) + 2j * np.angle(1 + z)
    if k == 2:
        return _conj(z) + 2j * np.imag(gamma_lower_closed(2, z))
    gam = gamma_lower_closed(k, z)
    return gam + _conj(z - gam)


def _U(z):
    return (z - z**2 / 2) / (1 - z) ** 2


def _V(z):
    return (z**2 / 2) / (1 - z) ** 2


def _H(z):
    return (z - z**2 / 2 + z**3 / 6) / (1 - z) ** 3


def _G(z):
    return (z**2 / 2 + z**3 / 6) / (1 - z) ** 3


# -- catalogue ---------------------------------------------------------------

_PARAM = re.compile(r"^(p|q|gamma|psi)(\d+)$")

CATALOGUE = (
    [f"p{n}" for n in range(2, 10)]
    + [f"q{n}" for n in range(2, 10)]
    + [f"gamma{k}" for k in range(1, 9)]
    + [f"psi{k}" for k in range(1, 9)]
    + ["F", "L", "K", "ex2_7", "ex2_10", "ex3_6", "e", "l", "koebe"]
)


def names() -> list[str]:
    return list(CATALOGUE)


def make_entry(name: str, order: int | None = None) -> GalleryEntry:
    if order is None:
        order = default_order()
    m = _PARAM.match(name)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if str(n) == m.group(2) and _PARAM_RANGE[kind][0] <= n <= _PARAM_RANGE[kind][1]:
            return _PARAMETRIC[kind](n, order)
    try:
        builder = _FIXED[name]
    except KeyError:
        raise UnknownMapError(f"unknown gallery map {name!r}; known: {', '.join(CATALOGUE)}") from None
    return builder(order)


def _p(n: int, order: int) -> GalleryEntry:
    if n < 2:
        raise UnknownMapError("p_n needs n >= 2")
    v = AnalyticSeries.monomial(n, order, 1.0 / n)
    z = identity_series(order)
    f = HarmonicMap(z + v, v)

    def closed(w):
        w = _asarray(w)
        return w + w**n / n + _conj(w**n / n)

    return GalleryEntry(
        f"p{n}", f, closed, "u_n = z + z^n/n, v_n = z^n/n",
        Envelope(1.0, 0, degree=n), ClassTag.minus(z),
    )


def _q(n: int, order: int) -> GalleryEntry:
    if n < 2:
        raise UnknownMapError("q_n needs n >= 2")
    s = AnalyticSeries.monomial(n, order, 1.0 / n)
    z = identity_series(order)
    f = HarmonicMap(z - s, s)

    def closed(w):
        w = _asarray(w)
        return w - w**n / n + _conj(w**n / n)

    return GalleryEntry(
        f"q{n}", f, closed, "r_n = z - z^n/n, s_n = z^n/n",
        Envelope(1.0, 0, degree=n), ClassTag.plus(z),
    )


def _gamma(k: int, order: int) -> GalleryEntry:
    if k < 1:
        raise UnknownMapError("Gamma_k needs k >= 1")
    z = identity_series(order)
    w = AnalyticSeries.monomial(k, order)
    f = shear(z, w, Direction.REAL)
    return GalleryEntry(
        f"gamma{k}", f, lambda x: gamma_closed(k, x),
        "real-axis shear of z with dilatation z^k",
        Envelope(1.0, 0), ClassTag.minus(z), w,
    )


def _psi(k: int, order: int) -> GalleryEntry:
    if k < 1:
        raise UnknownMapError("Psi_k needs k >= 1")
    z = identity_series(order)
    w = AnalyticSeries.monomial(k, order)
    f = shear(z, w, Direction.IMAG)
    return GalleryEntry(
        f"psi{k}", f, lambda x: psi_closed(k, x),
        "imaginary-axis shear of z with dilatation z^k",
        Envelope(1.0, 0), ClassTag.plus(z), w,
    )


def _F(order: int) -> GalleryEntry:
    l = halfplane_series(order)
    w = AnalyticSeries.identity(order)
    f = shear(l, w, Direction.REAL)
    return GalleryEntry(
        "F", f, lambda x: _U(_asarray(x)) + _conj(_V(_asarray(x))),
        "real-axis shear of z/(1-z) with dilatation z",
        Envelope(1.0, 1), ClassTag.minus(l), w,
    )


def _L(order: int) -> GalleryEntry:
    l = halfplane_series(order)
    w = AnalyticSeries.monomial(1, order, -1.0)
    f = shear(l, w, Direction.IMAG)  # h = U, g = -V
    return GalleryEntry(
        "L", f, lambda x: _U(_asarray(x)) - _conj(_V(_asarray(x))),
        "harmonic half-plane mapping L = U - conj(V)",
        Envelope(1.0, 1), ClassTag.plus(l), w,
    )


def _K(order: int) -> GalleryEntry:
    k = koebe_series(order)
    w = AnalyticSeries.identity(order)
    f = shear(k, w, Direction.REAL)
    return GalleryEntry(
        "K", f, lambda x: _H(_asarray(x)) + _conj(_G(_asarray(x))),
        "harmonic Koebe function, real-axis shear of the Koebe function with dilatation z",
        Envelope(1.0, 2), ClassTag.minus(k), w,
    )


def _ex2_7(order: int) -> GalleryEntry:
    h = AnalyticSeries.rational([0, 1, 1], [1, -2, 1], order)
    g = AnalyticSeries.rational([0, 0, 1, 1], [1, -2, 1], order)
    phi = AnalyticSeries.rational([0, 1, 1], [1, -1], order)

    def closed(w):
        w = _asarray(w)
        return w * (1 + w) / (1 - w) ** 2 + _conj(w**2 * (1 + w) / (1 - w) ** 2)

    return GalleryEntry(
        "ex2_7", HarmonicMap(h, g), closed,
        "h = z(1+z)/(1-z)^2, g = z^2(1+z)/(1-z)^2",
        Envelope(4.0, 1), ClassTag.minus(phi),
    )


def _ex2_10(order: int) -> GalleryEntry:
    h = AnalyticSeries.from_polynomial([0, 1, 1 / 8], order)
    g = AnalyticSeries.from_polynomial([0, 0, 1 / 8], order)

    def closed(w):
        w = _asarray(w)
        return w + w**2 / 8 + _conj(w**2 / 8)

    return GalleryEntry(
        "ex2_10", HarmonicMap(h, g), closed,
        "z + z^2/8 + conj(z)^2/8",
        Envelope(1.0, 0, degree=2), ClassTag.minus(identity_series(order)),
    )


def _ex3_6(order: int) -> GalleryEntry:
    den = [1, 0, -2, 0, 1]
    h = AnalyticSeries.rational([0, 1], den, order)
    g = AnalyticSeries.rational([0, 0, 0, 1], den, order)
    phi = AnalyticSeries.rational([0, 1, 0, 1], den, order)

    def closed(w):
        w = _asarray(w)
        return w / (1 - w**2) ** 2 + _conj(w**3 / (1 - w**2) ** 2)

    return GalleryEntry(
        "ex3_6", HarmonicMap(h, g), closed,
        "h = z/(1-z^2)^2, g = z^3/(1-z^2)^2",
        Envelope(1.0, 1), ClassTag.plus(phi),
    )


def _e(order: int) -> GalleryEntry:
    h = halfplane_series(order)
    g = AnalyticSeries.rational([0, 0, 1], [1, -1], order)

    def closed(w):
        w = _asarray(w)
        return w / (1 - w) + _conj(w**2 / (1 - w))

    return GalleryEntry(
        "e", HarmonicMap(h, g), closed,
        "identity for harmonic convolution",
        Envelope(2.0, 0), ClassTag.minus(identity_series(order)),
    )


def _l(order: int) -> GalleryEntry:
    l = halfplane_series(order)
    return GalleryEntry(
        "l", HarmonicMap.analytic(l), lambda x: _asarray(x) / (1 - _asarray(x)),
        "right half-plane map z/(1-z)", Envelope(1.0, 0), ClassTag.minus(l),
    )


def _koebe(order: int) -> GalleryEntry:
    k = koebe_series(order)
    return GalleryEntry(
        "koebe", HarmonicMap.analytic(k), lambda x: _asarray(x) / (1 - _asarray(x)) ** 2,
        "Koebe function z/(1-z)^2", Envelope(1.0, 1), ClassTag.minus(k),
    )


_PARAMETRIC = {"p": _p, "q": _q, "gamma": _gamma, "psi": _psi}
_PARAM_RANGE = {"p": (2, 9), "q": (2, 9), "gamma": (1, 8), "psi": (1, 8)}
_FIXED = {
    "F": _F, "L": _L, "K": _K, "ex2_7": _ex2_7, "ex2_10": _ex2_10,
    "ex3_6": _ex3_6, "e": _e, "l": _l, "koebe": _koebe,
}


# -- convolutions with known closed forms ------------------------------------

@dataclass(frozen=True)
class ClosedForm:
    """A pointwise evaluator for a convolution, with its coefficient envelope."""

    name: str
    evaluate: Callable
    provenance: str
    envelope: Envelope

    def __call__(self, z):
        return self.evaluate(z)


def _lacunary(z, k: int, sign: float, tol: float = 1e-17, max_terms: int = 200_000):
    """``sum_{n>=1} sign^n z^(nk+1) / (nk+1)^2``, summed until terms drop below ``tol``."""
    z = _asarray(z)
    rmax = float(np.max(np.abs(z))) if z.size else 0.0
    zk = z**k
    term_pow = z.copy()
    acc = np.zeros_like(z)
    s = 1.0
    for n in range(1, max_terms + 1):
        term_pow = term_pow * zk
        s *= sign
        m = n * k + 1
        acc += s * term_pow / m**2
        if rmax**m / m**2 < tol:
            break
    return acc


def _conv_gamma_gamma(k: int) -> ClosedForm:
    def f(z):
        z = _asarray(z)
        s = _lacunary(z, k, 1.0)
        return z + s + _conj(s)

    return ClosedForm(f"gamma{k}*gamma{k}", f, "z + sum z^(nk+1)/(nk+1)^2 + conj(same sum)", Envelope(2.0, 0))


def _conv_gamma_psi(k: int) -> ClosedForm:
    def f(z):
        z = _asarray(z)
        s = _lacunary(z, k, -1.0)
        return z + s - _conj(s)

    return ClosedForm(f"gamma{k}*psi{k}", f, "z + sum (-1)^n z^(nk+1)/(nk+1)^2 + conj(sum (-1)^(n+1) ...)", Envelope(2.0, 0))


def _conv_p_p(n: int) -> ClosedForm:
    def f(z):
        z = _asarray(z)
        return z + z**n / n**2 + _conj(z**n / n**2)

    return ClosedForm(f"p{n}*p{n}", f, "z + z^n/n^2 + conj(z^n/n^2)", Envelope(1.0, 0, degree=n))


def _conv_p_q(n: int) -> ClosedForm:
    # the conjugation on the last term is implied by the definition of the product
    def f(z):
        z = _asarray(z)
        return z - z**n / n**2 + _conj(z**n / n**2)

    return ClosedForm(f"p{n}*q{n}", f, "z - z^n/n^2 + conj(z^n/n^2)", Envelope(1.0, 0, degree=n))


def _g1_ex2_7(z):
    z = _asarray(z)
    return 2 * z / (1 - z) + np.log(1 - z) + _conj((3 * z - z**2) / (1 - z) + 3 * np.log(1 - z))


def _g1_F(z):
    z = _asarray(z)
    return np.real(z / (1 - z)) - 1j * np.angle(1 - z)


def _g1_K(z):
    z = _asarray(z)
    return (
        (2 / 3) * z / (1 - z) ** 2
        + (1j / 3) * np.imag((z - 3 * z**2) / (1 - z) ** 2)
        - (1 / 3) * np.log(np.abs(1 - z))
    )


def _g1_ex3_6(z):
    z = _asarray(z)
    return np.real(z / (1 - z**2)) + 0.5j * np.angle((1 + z) / (1 - z))


def _alexander_L(z):
    z = _asarray(z)
    return -np.log(np.abs(1 - z)) + 1j * np.imag(z / (1 - z))


def _g1_ex2_10(z):
    z = _asarray(z)
    return z + z**2 / 16 + _conj(z**2 / 16)


_CONV_FIXED = {
    "gamma1*ex2_7": ClosedForm("gamma1*ex2_7", _g1_ex2_7, "2z/(1-z) + log(1-z) + conj((3z-z^2)/(1-z) + 3 log(1-z))", Envelope(4.0, 0)),
    "gamma1*F": ClosedForm("gamma1*F", _g1_F, "Re z/(1-z) - i arg(1-z)", Envelope(1.0, 0)),
    "gamma1*K": ClosedForm("gamma1*K", _g1_K, "(2/3) z/(1-z)^2 + (i/3) Im (z-3z^2)/(1-z)^2 - (1/3) log|1-z|", Envelope(1.0, 1)),
    "gamma1*ex3_6": ClosedForm("gamma1*ex3_6", _g1_ex3_6, "Re z/(1-z^2) + (i/2) arg((1+z)/(1-z))", Envelope(1.0, 0)),
    "gamma1*L": ClosedForm("gamma1*L", _alexander_L, "-log|1-z| + i Im z/(1-z)", Envelope(1.0, 0)),
    "gamma1*ex2_10": ClosedForm("gamma1*ex2_10", _g1_ex2_10, "z + z^2/16 + conj(z^2/16)", Envelope(1.0, 0, degree=2)),
}

CONVOLUTION_ALIASES = {"alexander(L)": "gamma1*L", "alexander_L": "gamma1*L"}


def convolution_names() -> list[str]:
    return (
        list(_CONV_FIXED)
        + [f"gamma{k}*gamma{k}" for k in range(1, 9)]
        + [f"gamma{k}*psi{k}" for k in range(1, 9)]
        + [f"p{n}*p{n}" for n in range(2, 10)]
        + [f"p{n}*q{n}" for n in range(2, 10)]
    )


def closed_form_convolutions(name: str) -> ClosedForm:
    """Pointwise closed form of a convolution whose sum is known explicitly."""
    key = CONVOLUTION_ALIASES.get(name, name).replace(" ", "")
    if key in _CONV_FIXED:
        return _CONV_FIXED[key]
    m = re.match(r"^(gamma|p)(\d+)\*(gamma|psi|p|q)(\d+)$", key)
    if m and m.group(2) == m.group(4):
        n = int(m.group(2))
        pair = (m.group(1), m.group(3))
        if pair == ("gamma", "gamma") and n >= 1:
            return _conv_gamma_gamma(n)
        if pair == ("gamma", "psi") and n >= 1:
            return _conv_gamma_psi(n)
        if pair == ("p", "p") and n >= 2:
            return _conv_p_p(n)
        if pair == ("p", "q") and n >= 2:
            return _conv_p_q(n)
    raise UnknownMapError(f"no closed-form convolution named {name!r}")


def series_convolution(name: str, order: int | None = None) -> HarmonicMap:
    """The series counterpart of a ``closed_form_convolutions`` name."""
    key = CONVOLUTION_ALIASES.get(name, name).replace(" ", "")
    left, right = key.split("*")
    return convolve(make_entry(left, order).series, make_entry(right, order).series)
