import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmconv import gallery
from harmconv.harmonic import (
    ClassKind,
    ClassTag,
    Direction,
    HarmonicMap,
    NormalizationError,
    alexander,
    class_residual,
    convolve,
    dilatation,
    dilatation_at,
    evaluate_map,
    is_member,
    jacobian_at,
    shear,
)
from harmconv.series import AnalyticSeries, DomainError, OrderMismatchError, hadamard

from conftest import random_coanalytic, random_member, random_normalized

N = 64
Z = AnalyticSeries.identity(N)
MINUS, PLUS = ClassKind.MINUS, ClassKind.PLUS


def entry(name, order=N):
    return gallery.make_entry(name, order).series


def test_evaluate_examples():
    assert evaluate_map(HarmonicMap.analytic(Z), 0.2j) == pytest.approx(0.2j)
    r = 0.4
    assert entry("p2")(r) == pytest.approx(r + r * r, abs=1e-15)
    e = entry("e", 128)
    assert abs(e(0.5) - 1.5) <= 2 * 0.5**128


def test_evaluate_domain():
    with pytest.raises(DomainError):
        entry("p2")(1.2)


def test_requires_equal_orders():
    with pytest.raises(OrderMismatchError):
        HarmonicMap(Z, AnalyticSeries.zeros(N + 1))


def test_convolve_with_e_is_identity(rng):
    e = entry("e")
    f = HarmonicMap(random_normalized(rng, N), random_coanalytic(rng, N))
    assert convolve(f, e).max_abs_diff(f) <= 1e-15


def test_convolve_is_commutative(rng):
    f = HarmonicMap(random_normalized(rng, N), random_coanalytic(rng, N))
    F = HarmonicMap(random_normalized(rng, N), random_coanalytic(rng, N))
    assert convolve(f, F).max_abs_diff(convolve(F, f)) <= 1e-16


def test_convolve_order_mismatch():
    with pytest.raises(OrderMismatchError):
        convolve(entry("p2", 8), entry("p2", 9))


@pytest.mark.parametrize("n", range(2, 10))
def test_pn_self_convolution(n):
    conv = convolve(entry(f"p{n}"), entry(f"p{n}"))
    expected = AnalyticSeries.from_polynomial([0, 1] + [0] * (n - 2) + [1 / n**2], N)
    assert conv.h.allclose(expected, 1e-15)
    assert conv.g.allclose(AnalyticSeries.monomial(n, N, 1 / n**2), 1e-15)


def test_dilatation_examples():
    assert dilatation(HarmonicMap.analytic(Z)).max_abs() == 0
    for k in range(1, 6):
        w = dilatation(entry(f"gamma{k}"))
        assert np.allclose(w.coeffs[:N - 1], AnalyticSeries.monomial(k, N).coeffs[:N - 1], atol=1e-13)
    # K has coefficients of size n**3, so rounding in the division scales with N**3
    w = dilatation(entry("K"))
    assert np.allclose(w.coeffs[:N - 1], Z.coeffs[:N - 1], atol=1e-14 * N**3)


def test_dilatation_needs_nonzero_h_prime():
    with pytest.raises(ZeroDivisionError):
        dilatation(HarmonicMap(AnalyticSeries.monomial(2, N), AnalyticSeries.zeros(N)))


def test_dilatation_at_matches_series(rng):
    f = entry("gamma2")
    z = 0.3 * np.exp(1j * rng.uniform(0, 6, 10))
    assert np.allclose(dilatation_at(f, z), z**2, atol=1e-14)


@pytest.mark.parametrize("name,z,expected", [("p2", -0.5, 0.0), ("p3", 0.0, 1.0)])
def test_jacobian_examples(name, z, expected):
    assert jacobian_at(entry(name), z) == pytest.approx(expected, abs=1e-14)
    assert jacobian_at(HarmonicMap.analytic(Z), 0.3 + 0.2j) == pytest.approx(1.0)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_jacobian_formula_for_pn(n, rng):
    z = 0.9 * np.sqrt(rng.uniform(size=50)) * np.exp(2j * np.pi * rng.uniform(size=50))
    assert np.allclose(jacobian_at(entry(f"p{n}"), z), 1 + 2 * np.real(z ** (n - 1)), atol=1e-13)


@pytest.mark.parametrize("k", range(1, 6))
def test_shear_gives_gamma_and_psi(k):
    g = shear(Z, AnalyticSeries.monomial(k, N), Direction.REAL)
    mu = np.zeros(N + 1)
    mu[1::k] = 1.0 / np.arange(1, N + 1, k)
    assert np.allclose(g.h.coeffs, mu, atol=1e-15)
    assert class_residual(g, ClassTag.minus(Z)).max_abs() <= 1e-15
    p = shear(Z, AnalyticSeries.monomial(k, N), Direction.IMAG)
    gam = np.zeros(N + 1)
    idx = np.arange(1, N + 1, k)
    gam[idx] = (-1.0) ** ((idx - 1) // k) / idx
    assert np.allclose(p.h.coeffs, gam, atol=1e-15)
    assert class_residual(p, ClassTag.plus(Z)).max_abs() <= 1e-15


def test_shear_of_koebe_matches_closed_form():
    koebe = gallery.koebe_series(N)
    K = shear(koebe, Z, Direction.REAL)
    H = AnalyticSeries.rational([0, 1, -0.5, 1 / 6], [1, -3, 3, -1], N)
    scale = np.arange(N + 1) ** 3 + 1
    assert np.max(np.abs(K.h.coeffs - H.coeffs) / scale) <= 1e-14


def test_shear_rejects_singular_dilatation():
    with pytest.raises(ZeroDivisionError):
        shear(Z, AnalyticSeries.constant(1, N), Direction.REAL)
    with pytest.raises(ZeroDivisionError):
        shear(Z, AnalyticSeries.constant(-1, N), Direction.IMAG)


@pytest.mark.parametrize("name,kind,phi", [
    ("gamma3", MINUS, "z"), ("psi3", PLUS, "z"), ("F", MINUS, "l"), ("L", PLUS, "l"),
    ("K", MINUS, "koebe"), ("e", MINUS, "z"),
])
def test_class_memberships(name, kind, phi):
    target = {"z": Z, "l": gallery.halfplane_series(N), "koebe": gallery.koebe_series(N)}[phi]
    assert is_member(entry(name), ClassTag(kind, target))


def test_class_tag_needs_normalized_target():
    with pytest.raises(NormalizationError):
        ClassTag.minus(AnalyticSeries.monomial(2, N))


def test_alexander_examples():
    f = HarmonicMap.analytic(Z)
    assert alexander(f).max_abs_diff(f) == 0
    with pytest.raises(NormalizationError):
        alexander(HarmonicMap.analytic(2 * Z))


def test_alexander_inverts_zf_prime(rng):
    f = HarmonicMap(random_normalized(rng, N), random_coanalytic(rng, N))
    a = alexander(f)
    n = np.arange(N + 1)
    assert np.allclose(a.h.coeffs * n, f.h.coeffs, atol=1e-15)
    assert np.allclose(a.g.coeffs * n, f.g.coeffs, atol=1e-15)


# -- coefficient identities for convolutions, as properties ----------------------

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_minus_minus_convolution_lands_in_minus_class(seed):
    rng = np.random.default_rng(seed)
    phi = random_normalized(rng, N)
    f1 = random_member(rng, MINUS, Z)
    f2 = random_member(rng, MINUS, phi)
    res = class_residual(convolve(f1, f2), ClassTag.minus(hadamard(f1.h, phi)))
    assert res.max_abs() < 1e-12


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_plus_plus_convolution_lands_in_minus_class(seed):
    rng = np.random.default_rng(seed)
    phi = random_normalized(rng, N)
    f1 = random_member(rng, PLUS, Z)
    f2 = random_member(rng, PLUS, phi)
    res = class_residual(convolve(f1, f2), ClassTag.minus(hadamard(f1.h, phi)))
    assert res.max_abs() < 1e-12


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_minus_plus_convolution_lands_in_plus_class(seed):
    rng = np.random.default_rng(seed)
    phi = random_normalized(rng, N)
    f1 = random_member(rng, MINUS, Z)
    f2 = random_member(rng, PLUS, phi)
    res = class_residual(convolve(f1, f2), ClassTag.plus(hadamard(f1.h, phi)))
    assert res.max_abs() < 1e-12


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_alexander_of_member_is_member_of_mu1_image(seed):
    # Gamma_1 * f lies in W^-(mu_1 * phi) for f in W^-(phi)
    rng = np.random.default_rng(seed)
    phi = random_normalized(rng, N)
    f = random_member(rng, MINUS, phi)
    g1 = entry("gamma1")
    res = class_residual(convolve(g1, f), ClassTag.minus(hadamard(g1.h, phi)))
    assert res.max_abs() < 1e-12
    assert convolve(g1, f).max_abs_diff(alexander(f)) < 1e-14


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from(list(Direction)))
def test_shear_then_dilatation_roundtrip(seed, direction):
    rng = np.random.default_rng(seed)
    phi = random_normalized(rng, N)
    w = AnalyticSeries(0.5 * random_normalized(rng, N).coeffs)
    f = shear(phi, w, direction)
    tag = ClassTag.minus(phi) if direction is Direction.REAL else ClassTag.plus(phi)
    assert class_residual(f, tag).max_abs() < 1e-12
    back = dilatation(f)
    assert np.allclose(back.coeffs[: N - 1], w.coeffs[: N - 1], atol=1e-10)


def test_mu1_times_h_prime_identity():
    # z (mu_1 * h)' = h for normalized h
    h = gallery.make_entry("ex2_7", N).series.h
    g1h = hadamard(entry("gamma1").h, h)
    deriv = np.arange(N + 1) * g1h.coeffs
    assert np.allclose(deriv, h.coeffs, atol=1e-14)


def test_csv_round_trip(rng):
    f = HarmonicMap(random_normalized(rng, 16), random_coanalytic(rng, 16))
    text = f.to_csv()
    assert text.splitlines()[0] == "k,re_h,im_h,re_g,im_g"
    g = HarmonicMap.from_csv(text)
    assert g.max_abs_diff(f) == 0
