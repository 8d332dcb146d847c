import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import mathieu_cem, mathieu_sem, roots_hermite

from confluentia.exceptions import NoConvergence
from confluentia.special import (HermiteBundle, Parity, char_asymptotic, floquet_coefficients,
                                 floquet_recursion_residual, hermite, ho_eigenfunction,
                                 mathieu_char, mathieu_eigenpair, mathieu_eval, meixner_error,
                                 parabolic_D)

from oracles import hermite_physicists, weber_D

# frozen from oracles.shooting_char (DOP853 shooting + brentq on [0, pi/2])
SHOOTING = {
    ("even", 0, 1.0): -0.4551386041074049,
    ("even", 0, 5.0): -5.800046020851439,
    ("even", 1, 1.0): 1.8591080725143874,
    ("even", 1, 5.0): 1.8581875415477938,
    ("even", 2, 1.0): 4.371300982735105,
    ("even", 2, 5.0): 7.449109739529214,
    ("odd", 1, 1.0): -0.11024881699207728,
    ("odd", 1, 5.0): -5.790080598637714,
    ("odd", 2, 1.0): 3.9170247729985,
    ("odd", 2, 5.0): 2.099460445486719,
    ("odd", 3, 1.0): 9.04773925980923,
    ("odd", 3, 5.0): 9.236327713694676,
}
# oracles.shooting_ce_value(2, 1.0, pi/2)
CE2_HALF_PI_Q1 = -0.8157268390500971


# -- Hermite / Weber / oscillator ----------------------------------------------

def test_hermite_examples():
    assert hermite(0, 3.7) == 1
    assert hermite(1, 2.0) == 4.0
    assert hermite(3, 1.0) == -4.0


EXPLICIT = [
    lambda x: 1,
    lambda x: 2 * x,
    lambda x: 4 * x ** 2 - 2,
    lambda x: 8 * x ** 3 - 12 * x,
    lambda x: 16 * x ** 4 - 48 * x ** 2 + 12,
    lambda x: 32 * x ** 5 - 160 * x ** 3 + 120 * x,
]


@given(st.integers(0, 5), st.fractions(min_value=-5, max_value=5, max_denominator=20))
@settings(max_examples=60)
def test_hermite_exact_against_explicit(n, x):
    assert hermite(n, x) == EXPLICIT[n](x)
    assert isinstance(hermite(n, x), (F, int))


def test_hermite_matches_numpy():
    x = np.linspace(-3, 3, 41)
    for n in range(9):
        np.testing.assert_allclose(hermite(n, x), hermite_physicists(n, x), rtol=1e-12, atol=1e-9)


def test_parabolic_D_examples():
    assert parabolic_D(0, 0.0) == pytest.approx(1.0, abs=1e-15)
    assert parabolic_D(1, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert parabolic_D(2, 2.0) == pytest.approx(3 * math.exp(-1), rel=1e-13)
    assert parabolic_D(2, 2.0) == pytest.approx(1.10364, abs=1e-5)


@pytest.mark.parametrize("m", [0, 1, 2, 5, 9])
def test_parabolic_D_matches_pbdv(m):
    z = np.linspace(-6, 6, 25)
    np.testing.assert_allclose(parabolic_D(m, z), weber_D(m, z), rtol=1e-10, atol=1e-12)


def test_ho_examples():
    assert ho_eigenfunction(HermiteBundle(0, 1.0), 0.0) == pytest.approx(math.pi ** -0.25, rel=1e-14)
    assert ho_eigenfunction(HermiteBundle(1, 1.0), 0.0) == 0.0
    with pytest.raises(ValueError):
        HermiteBundle(0, 0.0)


@pytest.mark.parametrize("n,h", [(0, 1.0), (3, 1.0), (2, 2.5), (7, 0.4)])
def test_ho_orthonormal_gauss_hermite(n, h):
    # int f = sum w_i e^{t_i^2} f(t_i / sqrt(h)) / sqrt(h) with f = e_n e_m ~ e^{-t^2}
    t, w = roots_hermite(40)
    x = t / math.sqrt(h)
    en = ho_eigenfunction(HermiteBundle(n, h), x) * np.exp(t * t / 2)
    for m in range(n + 1):
        em = ho_eigenfunction(HermiteBundle(m, h), x) * np.exp(t * t / 2)
        assert np.sum(w * en * em) / math.sqrt(h) == pytest.approx(float(m == n), abs=1e-10)


@pytest.mark.parametrize("n,h", [(0, 1.0), (1, 1.0), (4, 2.0), (6, 0.5)])
def test_ho_oscillator_residual(n, h):
    # y'' - h^2 x^2 y = -(2n+1) h y, second derivative by a fine 4th-order stencil
    b = HermiteBundle(n, h)
    x = np.linspace(-6, 6, 2401) / math.sqrt(h)
    dx = x[1] - x[0]
    y = ho_eigenfunction(b, x)
    d2 = (-y[4:] + 16 * y[3:-1] - 30 * y[2:-2] + 16 * y[1:-3] - y[:-4]) / (12 * dx * dx)
    res = d2 - h * h * x[2:-2] ** 2 * y[2:-2] + b.mu * y[2:-2]
    assert np.max(np.abs(res)) / np.max(np.abs(d2)) < 1e-8


# -- Mathieu characteristic values ------------------------------------------------

@pytest.mark.parametrize("n", range(5))
def test_char_at_zero(n):
    assert mathieu_char("even", n, 0.0) == pytest.approx(n * n, abs=1e-12)
    if n:
        assert mathieu_char("odd", n, 0.0) == pytest.approx(n * n, abs=1e-12)


def test_char_large_q_example():
    assert abs(mathieu_char(Parity.EVEN, 0, 100.0) - (-180.25)) <= 0.1


@pytest.mark.parametrize("key", sorted(SHOOTING))
def test_char_against_shooting(key):
    parity, n, q = key
    assert mathieu_char(parity, n, q) == pytest.approx(SHOOTING[key], abs=1e-8)


def test_eigenpair_examples():
    e = mathieu_eigenpair("even", 0, 0.0)
    np.testing.assert_allclose(e.coeffs, np.eye(len(e.coeffs))[0] / math.sqrt(2), atol=1e-15)
    assert mathieu_eigenpair("even", 2, 1.0, K=32).recursion_residual() < 1e-10
    assert mathieu_eigenpair("odd", 1, 5.0, K=32).a == pytest.approx(SHOOTING[("odd", 1, 5.0)], abs=1e-8)


def test_invalid_orders():
    with pytest.raises(ValueError):
        mathieu_char("odd", 0, 1.0)
    with pytest.raises(ValueError):
        mathieu_char("even", -1, 1.0)
    with pytest.raises(ValueError):
        mathieu_char("even", 0, -1.0)


def test_truncation_cap_from_environment(monkeypatch):
    monkeypatch.setenv("CONFLUENTIA_MAX_TRUNCATION", "32")
    with pytest.raises(NoConvergence):
        mathieu_char("even", 0, 2500.0)
    monkeypatch.delenv("CONFLUENTIA_MAX_TRUNCATION")
    assert mathieu_char("even", 0, 2500.0) < -4000


def test_interlacing():
    for q in (1.0, 5.0, 25.0):
        seq = [mathieu_char("even", 0, q)]
        for n in range(1, 6):
            seq += [mathieu_char("odd", n, q), mathieu_char("even", n, q)]
        assert all(x < y for x, y in zip(seq, seq[1:])), q


# -- Mathieu functions ------------------------------------------------------------------

def test_eval_examples():
    s = np.linspace(0, 2 * np.pi, 17)
    np.testing.assert_allclose(mathieu_eval(mathieu_eigenpair("even", 0, 0.0), s), 1 / math.sqrt(2), atol=1e-15)
    assert mathieu_eval(mathieu_eigenpair("even", 1, 0.0), 0.0) == pytest.approx(1.0, abs=1e-15)
    assert mathieu_eigenpair("even", 2, 1.0)(math.pi / 2) == pytest.approx(CE2_HALF_PI_Q1, abs=1e-8)


CASES = [(p, n, q) for p in ("even", "odd") for n in range(1, 5) for q in (0.5, 5.0, 100.0, 2500.0)] + \
        [("even", 0, q) for q in (0.5, 5.0, 100.0, 2500.0)]


@pytest.mark.parametrize("parity,n,q", CASES)
def test_ode_residual(parity, n, q):
    e = mathieu_eigenpair(parity, n, q)
    s = np.linspace(0, np.pi, 2001)
    y, d2 = e(s), e(s, derivative=2)
    res = d2 + (e.a - 2 * q * np.cos(2 * s)) * y
    assert np.max(np.abs(res)) / np.max(np.abs(d2)) < 1e-8


@pytest.mark.parametrize("parity", ["even", "odd"])
@pytest.mark.parametrize("q", [1.0, 25.0])
def test_orthogonality(parity, q):
    s = np.linspace(0, 2 * np.pi, 4097)[:-1]
    step = 2 * np.pi / 4096
    funcs = [mathieu_eigenpair(parity, n, q)(s) for n in range(1, 6)]
    gram = np.array([[np.sum(f * g) * step for g in funcs] for f in funcs])
    np.testing.assert_allclose(gram, np.pi * np.eye(5), atol=1e-8)


def test_ce0_normalisation():
    s = np.linspace(0, 2 * np.pi, 4097)[:-1]
    for q in (0.0, 3.0, 400.0):
        assert np.sum(mathieu_eigenpair("even", 0, q)(s) ** 2) * 2 * np.pi / 4096 == pytest.approx(np.pi, abs=1e-9)


@pytest.mark.parametrize("n", range(6))
@pytest.mark.parametrize("q", [0.5, 10.0, 100.0])
def test_sign_convention_matches_scipy(n, q):
    deg = np.linspace(0, 360, 73)
    s = np.radians(deg)
    ce = mathieu_eigenpair("even", n, q)(s)
    np.testing.assert_allclose(ce, mathieu_cem(n, q, deg)[0], atol=1e-7)
    if n:
        se = mathieu_eigenpair("odd", n, q)(s)
        np.testing.assert_allclose(se, mathieu_sem(n, q, deg)[0], atol=1e-7)


def test_derivative_by_difference():
    e = mathieu_eigenpair("odd", 2, 7.0)
    s, hstep = 0.3, 1e-5
    fd = (e(s + hstep) - e(s - hstep)) / (2 * hstep)
    assert e(s, derivative=1) == pytest.approx(fd, abs=1e-8)


@pytest.mark.parametrize("parity,n", [("even", 0), ("even", 3), ("odd", 1), ("odd", 4)])
def test_floquet_recursion(parity, n):
    e = mathieu_eigenpair(parity, n, 6.0)
    c, lam = floquet_coefficients(e)
    assert lam == n % 2
    assert floquet_recursion_residual(e.a, e.q, lam, c) < 1e-10
    assert floquet_recursion_residual(e.a + 1e-3, e.q, lam, c) > 1e-6


# -- asymptotics -----------------------------------------------------------------------

def test_char_asymptotic_examples():
    assert char_asymptotic(0, 100.0) == -180.25
    assert char_asymptotic(1, 100.0) == -141.25
    for q in (1.0, 49.0, 1e6):
        assert char_asymptotic(0, q) + 2 * q == pytest.approx(2 * math.sqrt(q) - 0.25, rel=1e-12)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_char_asymptotic_consistency(n):
    diffs = [abs(mathieu_char("even", n, q) - char_asymptotic(n, q)) for q in (100.0, 1e3, 1e4)]
    assert diffs[0] > diffs[1] > diffs[2]
    assert diffs[2] < 1


def test_meixner_examples():
    for q in (100.0, 1000.0):
        assert meixner_error("even", 0, 16 * q, math.pi / 2) < meixner_error("even", 0, q, math.pi / 2)
    assert meixner_error("even", 0, 1e4, math.pi / 2) < 5 * 1e4 ** -0.375
    assert math.isfinite(meixner_error("even", 0, 1e4, 0.0))
