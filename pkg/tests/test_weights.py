import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from volterra_spectra.operators import PolynomialSymbol
from volterra_spectra.series import TruncatedSeries, exp_series, max_modulus, max_real_part
from volterra_spectra.weights import (
    GrowthCondition,
    InsufficientDataError,
    NormVerdict,
    PowerWeight,
    Verdict,
    bigO_growth,
    caratheodory_check,
    integer_part,
    is_integral,
    littleo_growth,
    membership_A0p,
    membership_Ap,
    membership_Hv,
    order_type,
    weight_value,
    weighted_norm,
)


def mono(k, c=1.0):
    return TruncatedSeries.monomial(k, c)


def expz(n=1, beta=1.0, degree=200):
    return exp_series(mono(n, beta), degree)


def test_weight_value_examples():
    assert weight_value(PowerWeight(1, 1), 0) == 1
    assert weight_value(PowerWeight(1, 1), 1) == pytest.approx(math.exp(-1))
    assert weight_value(PowerWeight(2, 3), 1) == pytest.approx(math.exp(-2))
    with pytest.raises(ValueError):
        weight_value(PowerWeight(1, 1), -1)


def test_weight_rejects_bad_parameters():
    with pytest.raises(ValueError):
        PowerWeight(0, 1)
    with pytest.raises(ValueError):
        PowerWeight(1, -2)
    with pytest.raises(ValueError):
        GrowthCondition(1, 0)


@given(st.floats(0.1, 5), st.floats(0.2, 4))
def test_weight_nonincreasing_and_log_linear_in_r_to_p(alpha, p):
    w = PowerWeight(alpha, p)
    r = np.linspace(0, 5, 50)
    v = w(r)
    assert np.all(np.diff(v) <= 0)
    assert np.allclose(w.log(r), -alpha * r ** p)
    # r^m v(r) -> 0 for every m, checked in logs where alpha r^p = 1e4
    log_r = math.log(1e4 / alpha) / p
    for m in (1, 6, 20):
        assert m * log_r + w.log(math.exp(log_r)) < -1000


def test_integer_tolerance():
    assert integer_part(2.5) == 2
    assert integer_part(3 - 1e-12) == 3
    assert integer_part(1.5 - 1) == 0
    assert is_integral(2 + 1e-11) and not is_integral(2.001)


def test_growth_axioms():
    for a in (0.5, 1, 2, 3):
        chk = GrowthCondition(1.0, a).check_axioms()
        assert all(chk.values()), (a, chk)
    gc = GrowthCondition(2.0, 1.5)
    assert gc.doubling_ratio() == 2 ** 1.5
    assert gc.polynomial_bound() == (2.0, 1.5)


def test_weighted_norm_constant():
    est = weighted_norm(TruncatedSeries([1.0]), PowerWeight(3, 2))
    assert est.value == pytest.approx(1.0)
    assert est.verdict is NormVerdict.BOUNDED


def test_weighted_norm_z_matches_dense_grid():
    est = weighted_norm(mono(1), PowerWeight(1, 1))
    r = np.linspace(0, 50, 2_000_001)
    oracle = np.max(r * np.exp(-r))
    assert est.value == pytest.approx(oracle, rel=1e-4)
    assert est.value == pytest.approx(1 / math.e, rel=1e-4)
    assert est.attained_r == pytest.approx(1.0, rel=0.02)
    assert est.bounded


def test_weighted_norm_exp_2z_diverges():
    est = weighted_norm(exp_series(mono(1, 2.0), 128), PowerWeight(1, 1))
    assert est.verdict is NormVerdict.DIVERGENCE
    assert est.attained_r >= est.r_max / 10


def test_weighted_norm_validation():
    with pytest.raises(ValueError):
        weighted_norm(mono(1), PowerWeight(1, 1), r_max=0)
    with pytest.raises(ValueError):
        weighted_norm(mono(1), PowerWeight(1, 1), grid=8)


def test_weighted_norm_monotone_in_r_max():
    f = TruncatedSeries([1, -2, 0.5, 0.3j])
    w = PowerWeight(1, 1)
    vals = [weighted_norm(f, w, r_max=r).value for r in (1, 2, 5, 10, 50)]
    assert all(b >= a * (1 - 1e-9) for a, b in zip(vals, vals[1:]))


def test_membership_Hv_examples():
    w = PowerWeight(1, 1)
    poly = TruncatedSeries([1, 2, 3, 4])
    m = membership_Hv(poly, w)
    assert m.verdict is Verdict.IN and m.vanishing
    m = membership_Hv(expz(1, 1, 128), w)
    assert m.verdict is Verdict.IN
    assert m.estimates[0].value == pytest.approx(1.0, rel=1e-6)
    assert m.vanishing is False
    m = membership_Hv(expz(1, 1, 256), PowerWeight(1, 0.5))
    assert m.verdict is Verdict.OUT


def test_polynomials_bounded_under_doubling():
    rng = np.random.default_rng(3)
    for _ in range(10):
        f = TruncatedSeries(rng.random(6) + 1j * rng.random(6))
        w = PowerWeight(1 + rng.random(), 0.5 + 2 * rng.random())
        a, b = weighted_norm(f, w), weighted_norm(f, w, 2 * w.default_r_max)
        assert a.bounded and b.bounded


def test_big_and_little_o():
    g1, g2, g3 = (PolynomialSymbol.monomial(n) for n in (1, 2, 3))
    gc = GrowthCondition(1, 2)
    assert bigO_growth(g1, gc) and littleo_growth(g1, gc)
    assert bigO_growth(g2, gc) and not littleo_growth(g2, gc)
    assert not bigO_growth(g3, gc)


def test_big_and_little_o_brute_force_grid():
    rng = np.random.default_rng(7)
    r = 2.0 ** np.arange(0, 21)
    for _ in range(30):
        deg = int(rng.integers(1, 7))
        g = PolynomialSymbol(tuple(rng.random(deg) + 1j * rng.random(deg) + 0.1))
        gc = GrowthCondition(0.5 + rng.random(), float(rng.choice([0.5, 1, 2, 2.5, 3, 4, 6, 7])))
        ratio = np.array([max_modulus(g.series(), x, 64) for x in r]) / gc(r)
        tail = ratio[-5:]
        grid_bounded = tail[-1] <= 2 * tail[0]
        grid_to_zero = tail[-1] < 1e-3 * ratio[5]
        assert bigO_growth(g, gc) == grid_bounded
        assert littleo_growth(g, gc) == grid_to_zero


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("beta", [0.5, 1.0, 2.0])
def test_order_type_exp_beta_zn(n, beta):
    est = order_type(expz(n, beta, 200 if n < 3 else 300))
    assert est.order == pytest.approx(n, rel=0.05)
    assert est.type_val == pytest.approx(beta, rel=0.05)
    assert not est.type_infinite


def test_order_type_exp_z_window_matches_exact_coefficients():
    est = order_type(expz(1, 1, 200), (100, 200))
    exact = TruncatedSeries(np.exp(-np.array([math.lgamma(k + 1) for k in range(201)])))
    ref = order_type(exact, (100, 200))
    assert est.order == pytest.approx(ref.order, rel=1e-9)
    assert est.type_val == pytest.approx(ref.type_val, rel=1e-9)
    assert est.order == pytest.approx(1.0, rel=0.05)
    assert est.type_val == pytest.approx(1.0, rel=0.05)


def test_order_type_exp_z2():
    est = order_type(expz(2, 1, 200), (100, 200))
    assert est.order == pytest.approx(2.0, rel=0.05)
    assert est.type_val == pytest.approx(1.0, rel=0.05)


def test_order_type_polynomial_is_zero():
    est = order_type(TruncatedSeries([1, 2, 3] + [0] * 20))
    assert est.order == 0.0


def test_order_type_errors():
    with pytest.raises(InsufficientDataError, match="insufficient coefficient data"):
        order_type(TruncatedSeries.zero(30))
    with pytest.raises(InsufficientDataError):
        order_type(TruncatedSeries([1, 1]))


def test_membership_Ap_examples():
    e = expz(1, 1, 200)
    assert membership_A0p(e, GrowthCondition(1, 2)) is Verdict.IN
    assert membership_Ap(e, GrowthCondition(1, 1)) is Verdict.IN
    assert membership_A0p(e, GrowthCondition(1, 1)) is Verdict.OUT
    assert membership_Ap(expz(2, 1, 200), GrowthCondition(1, 1)) is Verdict.OUT


def test_membership_near_tolerance_is_inconclusive():
    # order 1.15 against a = 1: inside the ambiguous band
    e = expz(1, 1, 200)
    assert membership_Ap(e, GrowthCondition(1, 1 / 1.15)) is Verdict.INCONCLUSIVE
    assert Verdict.INCONCLUSIVE.value == "inconclusive"


def test_caratheodory_examples():
    c = caratheodory_check(mono(1), 1.0)
    assert c.lhs == pytest.approx(1) and c.rhs == pytest.approx(4) and c.holds
    c = caratheodory_check(TruncatedSeries([2 - 3j]), 1.0)
    assert c.lhs == pytest.approx(c.rhs) and c.holds
    with pytest.raises(ValueError):
        caratheodory_check(mono(1), 0)


def test_caratheodory_dense_oracle():
    rng = np.random.default_rng(11)
    theta = np.linspace(0, 2 * np.pi, 20001)
    for _ in range(40):
        h = TruncatedSeries(rng.random(int(rng.integers(1, 8))) + 1j * rng.random(1))
        for r in (0.5, 1, 2, 5):
            c = caratheodory_check(h, r)
            dense_m = np.max(np.abs(h(r * np.exp(1j * theta))))
            dense_a = np.max(h(2 * r * np.exp(1j * theta)).real)
            assert c.lhs == pytest.approx(dense_m, rel=1e-3)
            assert max_real_part(h, 2 * r) == pytest.approx(dense_a, rel=5e-3, abs=1e-9)
            assert c.holds
