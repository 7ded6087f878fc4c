import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmconv.series import (
    AnalyticSeries,
    DomainError,
    OrderMismatchError,
    add,
    cauchy_product,
    default_order,
    differentiate,
    divide,
    evaluate,
    geometric_tail,
    hadamard,
    integrate,
    order_for_radius,
    reciprocal,
    scale,
)

N = 64


def mu1(order=N):
    return AnalyticSeries.from_function(lambda k: 0 if k == 0 else 1 / k, order)


def ones(order=N):
    return AnalyticSeries(np.ones(order + 1))


def l_series(order=N):
    return AnalyticSeries.rational([0, 1], [1, -1], order)


coeff = st.complex_numbers(max_magnitude=4, allow_nan=False, allow_infinity=False)


def series_strategy(order=12):
    return st.lists(coeff, min_size=order + 1, max_size=order + 1).map(AnalyticSeries)


class TestEvaluate:
    def test_identity(self):
        assert AnalyticSeries.identity(N)(0.3 + 0.1j) == pytest.approx(0.3 + 0.1j, abs=1e-15)

    def test_geometric_series_within_tail(self):
        assert abs(l_series()(0.5) - 1.0) <= 0.5**64 / 0.5

    def test_log_within_tail(self):
        tail = geometric_tail(N, 0.5)
        assert abs(mu1()(-0.5) + math.log(1.5)) <= tail
        assert abs(mu1()(0.5) - math.log(2)) <= tail

    def test_array_matches_scalar(self, rng):
        p = AnalyticSeries(rng.normal(size=N + 1) + 1j * rng.normal(size=N + 1))
        z = 0.9 * np.exp(2j * np.pi * rng.uniform(size=50)) * rng.uniform(size=50)
        vec = evaluate(p, z)
        assert np.allclose(vec, [p(complex(w)) for w in z], rtol=0, atol=1e-12)

    def test_unit_circle_allowed(self):
        AnalyticSeries.identity(4)(np.exp(0.3j))

    @pytest.mark.parametrize("z", [1.01, 2j, np.array([0.1, 1.5])])
    def test_outside_disk_rejected(self, z):
        with pytest.raises(DomainError):
            evaluate(AnalyticSeries.identity(4), z)


class TestArithmetic:
    def test_add_zero_and_scale_zero(self):
        p = mu1()
        assert add(p, AnalyticSeries.zeros(N)).allclose(p, 0)
        assert scale(p, 0).max_abs() == 0

    def test_nu1(self):
        nu = add(mu1(), scale(AnalyticSeries.identity(N), -1))
        expected = [0, 0] + [1 / k for k in range(2, N + 1)]
        assert np.array_equal(nu.coeffs, np.array(expected, dtype=complex))

    def test_order_mismatch(self):
        with pytest.raises(OrderMismatchError):
            add(mu1(8), mu1(9))
        with pytest.raises(OrderMismatchError):
            hadamard(mu1(8), mu1(9))

    def test_operators(self):
        p = mu1(8)
        assert (p + 1)[0] == 1
        assert (1 - p)[1] == -1
        assert (2 * p)[2] == 1
        assert (-p)[4] == -0.25
        assert (p * AnalyticSeries.constant(1, 8)).allclose(p, 0)

    def test_cauchy_examples(self):
        z = AnalyticSeries.identity(N)
        assert cauchy_product(z, z).allclose(AnalyticSeries.monomial(2, N), 0)
        sq = cauchy_product(ones(), ones())
        assert np.array_equal(sq.coeffs.real, np.arange(1, N + 2))

    def test_reciprocal_examples(self):
        assert reciprocal(AnalyticSeries.constant(1, N)).allclose(AnalyticSeries.constant(1, N), 0)
        assert reciprocal(AnalyticSeries.from_polynomial([1, -1], N)).allclose(ones(), 0)
        alt = reciprocal(AnalyticSeries.from_polynomial([1, 1], N))
        assert np.array_equal(alt.coeffs.real, (-1.0) ** np.arange(N + 1))

    def test_reciprocal_of_zero_constant(self):
        with pytest.raises(ZeroDivisionError):
            reciprocal(AnalyticSeries.identity(N))

    def test_hadamard_identities(self, rng):
        psi = AnalyticSeries(np.r_[0, 1, rng.normal(size=N - 1)])
        assert hadamard(psi, AnalyticSeries.identity(N)).allclose(AnalyticSeries.identity(N), 0)
        assert hadamard(psi, l_series()).allclose(psi, 0)
        k = np.arange(1, N + 1)
        assert np.allclose(hadamard(mu1(), mu1()).coeffs[1:], 1 / k**2, rtol=0, atol=1e-17)

    @settings(max_examples=40, deadline=None)
    @given(series_strategy(), series_strategy(), series_strategy())
    def test_cauchy_ring_laws(self, p, q, r):
        assert cauchy_product(p, q).allclose(cauchy_product(q, p), 1e-11)
        left = cauchy_product(p, add(q, r))
        right = add(cauchy_product(p, q), cauchy_product(p, r))
        assert left.allclose(right, 1e-10)

    @settings(max_examples=40, deadline=None)
    @given(series_strategy())
    def test_reciprocal_inverts(self, p):
        c = p.coeffs.copy()
        c[0] = 1 + abs(c[0])  # keep the constant term away from zero
        q = AnalyticSeries(c)
        prod = cauchy_product(q, reciprocal(q))
        scale_ = max(1.0, reciprocal(q).max_abs()) * max(1.0, q.max_abs())
        assert prod.allclose(AnalyticSeries.constant(1, q.order), 1e-10 * scale_)

    def test_divide(self):
        z = AnalyticSeries.identity(N)
        assert divide(z, AnalyticSeries.from_polynomial([1, -1], N)).allclose(l_series(), 0)


class TestCalculus:
    def test_differentiate_examples(self):
        assert differentiate(AnalyticSeries.identity(N)).allclose(AnalyticSeries.constant(1, N), 0)
        d = differentiate(mu1())
        assert np.allclose(d.coeffs[:N], 1, rtol=0, atol=1e-15)
        assert d.valid_order == N - 1

    def test_integrate_examples(self):
        assert integrate(AnalyticSeries.zeros(N)).max_abs() == 0
        assert integrate(ones()).allclose(mu1(), 0)
        assert integrate(AnalyticSeries.constant(1, N)).allclose(AnalyticSeries.identity(N), 0)

    @settings(max_examples=40, deadline=None)
    @given(series_strategy())
    def test_differentiate_integrate_inverse(self, p):
        back = differentiate(integrate(p))
        assert np.allclose(back.coeffs[:-1], p.coeffs[:-1], rtol=1e-13, atol=1e-13)


class TestCsvAndOrders:
    def test_csv_round_trip_bit_exact(self, rng):
        p = AnalyticSeries(rng.normal(size=17) + 1j * rng.normal(size=17))
        text = p.to_csv()
        assert text.splitlines()[0] == "k,re,im"
        assert len(text.splitlines()) == 18
        q = AnalyticSeries.from_csv(text)
        assert np.array_equal(p.coeffs, q.coeffs)

    def test_csv_no_negative_zero(self):
        text = scale(AnalyticSeries.identity(3), -1).to_csv()
        assert "-0," not in text and not text.rstrip().endswith("-0")

    def test_csv_bad_header(self):
        with pytest.raises(ValueError):
            AnalyticSeries.from_csv("a,b\n1,2\n")

    def test_resized(self):
        p = mu1(8)
        assert p.resized(16).order == 16
        assert p.resized(4).valid_order == 4
        assert np.array_equal(p.resized(16).coeffs[:9], p.coeffs)

    def test_rejects_tiny_and_nonfinite(self):
        with pytest.raises(ValueError):
            AnalyticSeries([1.0])
        with pytest.raises(ValueError):
            AnalyticSeries([0, np.nan])

    def test_immutable(self):
        with pytest.raises(ValueError):
            mu1(4).coeffs[0] = 3

    def test_default_order_env(self, monkeypatch):
        monkeypatch.delenv("HARMCONV_ORDER", raising=False)
        assert default_order() == 64
        monkeypatch.setenv("HARMCONV_ORDER", "128")
        assert default_order() == 128
        monkeypatch.setenv("HARMCONV_ORDER", "0")
        with pytest.raises(ValueError):
            default_order()

    def test_order_for_radius(self):
        assert order_for_radius(0.5) == 64
        assert order_for_radius(0.97) == 2048
        assert order_for_radius(0.99) == 4096
        n = order_for_radius(0.99)
        assert n**2 * 0.99**n <= 1e-10

    @pytest.mark.parametrize("r,power", [(0.5, 0), (0.9, 1), (0.99, 2)])
    def test_geometric_tail_bounds_sum(self, r, power):
        order = 40
        exact = sum(n**power * r**n for n in range(order + 1, 20000))
        bound = geometric_tail(order, r, power=power)
        assert exact <= bound <= exact * (1 + 1e-9) + 1e-300

    def test_geometric_tail_edges(self):
        assert geometric_tail(10, 0.0) == 0.0
        assert geometric_tail(10, 1.0) == math.inf
