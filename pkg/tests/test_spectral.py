import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confluentia import spectral
from confluentia.exceptions import ShiftOffGrid
from confluentia.samples import LineSample, PseudoPeriodicSample


def test_derivative_of_trig_polynomial():
    x = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    f = np.sin(3 * x) + 0.5 * np.cos(7 * x)
    np.testing.assert_allclose(spectral.derivative(f, 2 * np.pi), 3 * np.cos(3 * x) - 3.5 * np.sin(7 * x), atol=1e-12)
    np.testing.assert_allclose(spectral.derivative(f, 2 * np.pi, 2), -9 * np.sin(3 * x) - 24.5 * np.cos(7 * x),
                               atol=1e-11)


def test_derivative_other_period():
    x = np.linspace(0, 5.0, 50, endpoint=False)
    f = np.exp(np.sin(2 * np.pi * x / 5))
    exact = f * np.cos(2 * np.pi * x / 5) * 2 * np.pi / 5
    np.testing.assert_allclose(spectral.derivative(f, 5.0), exact, atol=1e-11)


@given(st.floats(-10, 10), st.integers(8, 80))
@settings(max_examples=40)
def test_shift_is_unitary(amount, n):
    rng = np.random.default_rng(n)
    f = rng.normal(size=n) + 1j * rng.normal(size=n)
    g = spectral.shift(f, 3.0, amount)
    assert np.linalg.norm(g) == pytest.approx(np.linalg.norm(f), rel=1e-12)


def test_shift_band_limited_exact():
    x = np.linspace(0, 2 * np.pi, 32, endpoint=False)
    np.testing.assert_allclose(spectral.shift(np.cos(2 * x), 2 * np.pi, 0.37), np.cos(2 * (x + 0.37)), atol=1e-13)


def test_bandwidth():
    x = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    assert spectral.bandwidth(np.cos(5 * x) + np.sin(2 * x)) == 5
    assert spectral.bandwidth(np.zeros(8)) == 0


# -- pseudo-periodic samples ----------------------------------------------------------

def test_pseudo_periodic_grid():
    f = PseudoPeriodicSample.from_function(np.cos, alpha=0.5, n=16)
    assert f.period == pytest.approx(4 * np.pi)
    assert f.grid[1] == pytest.approx(np.pi / 4)
    with pytest.raises(ValueError):
        PseudoPeriodicSample(0.0, 0.0, np.ones(4))


@pytest.mark.parametrize("lam", [0.0, 0.3])
def test_twisted_derivative(lam):
    alpha = 0.7
    # f = exp(i lam alpha psi) * (2 + sin(alpha psi)) lies in H^{alpha,lam}
    f = PseudoPeriodicSample.from_function(
        lambda p: np.exp(1j * lam * alpha * p) * (2 + np.sin(alpha * p)), alpha, 64, lam)
    p = f.grid
    exact = np.exp(1j * lam * alpha * p) * (1j * lam * alpha * (2 + np.sin(alpha * p)) + alpha * np.cos(alpha * p))
    np.testing.assert_allclose(f.derivative(), exact, atol=1e-12)


@pytest.mark.parametrize("lam", [0.0, 0.25])
def test_shift_on_grid_carries_phase(lam):
    alpha, n = 1.0, 32
    f = PseudoPeriodicSample.from_function(lambda p: np.exp(1j * lam * p) * np.cos(p) ** 2, alpha, n, lam)
    theta = 5 * f.step + f.period  # wraps once: pseudo-period phase appears
    exact = np.exp(1j * lam * (f.grid + theta)) * np.cos(f.grid + theta) ** 2
    np.testing.assert_allclose(f.shifted(theta, interpolate=False), exact, atol=1e-13)


@pytest.mark.parametrize("lam", [0.0, 0.6])
def test_shift_off_grid(lam):
    f = PseudoPeriodicSample.from_function(lambda p: np.exp(1j * lam * 2 * p) * np.sin(2 * p), 2.0, 40, lam)
    theta = 0.123
    exact = np.exp(1j * lam * 2 * (f.grid + theta)) * np.sin(2 * (f.grid + theta))
    np.testing.assert_allclose(f.shifted(theta), exact, atol=1e-12)
    with pytest.raises(ShiftOffGrid):
        f.shifted(theta, interpolate=False)


def test_inner_and_norm():
    f = PseudoPeriodicSample.from_function(lambda p: np.exp(1j * p), 1.0, 20)
    assert f.norm() == pytest.approx(np.sqrt(2 * np.pi))
    assert f.inner(f) == pytest.approx(2 * np.pi)


# -- line samples --------------------------------------------------------------------

def test_line_sample_gaussian():
    u = LineSample.symmetric(lambda x: np.exp(-x * x / 2), 12.0, 0.05)
    assert u.grid[0] == pytest.approx(-12.0) and u.n == 480
    assert u.norm() ** 2 == pytest.approx(np.sqrt(np.pi), rel=1e-12)
    np.testing.assert_allclose(u.derivative(), -u.grid * u.values, atol=1e-10)
    assert u.with_values(2 * u.values).inner(u) == pytest.approx(2 * np.sqrt(np.pi), rel=1e-12)
