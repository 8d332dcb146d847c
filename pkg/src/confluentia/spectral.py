"""FFT-based differentiation and translation on uniform periodic grids."""
from __future__ import annotations

import numpy as np


def wavenumbers(n: int, period: float) -> np.ndarray:
    return 2 * np.pi * np.fft.fftfreq(n, d=period / n)


def derivative(values, period: float, order: int = 1) -> np.ndarray:
    """Spectral derivative of samples on ``[0, period)`` (or any shifted copy).

    For even ``n`` and odd ``order`` the Nyquist mode is dropped, as usual.
    """
    values = np.asarray(values)
    n = values.shape[-1]
    k = wavenumbers(n, period)
    factor = (1j * k) ** order
    if order % 2 and n % 2 == 0:
        factor[n // 2] = 0
    out = np.fft.ifft(factor * np.fft.fft(values, axis=-1), axis=-1)
    return out.real if np.isrealobj(values) else out


def shift(values, period: float, amount: float) -> np.ndarray:
    """Band-limited translation: returns samples of ``f(x + amount)``.

    The map is unitary on the discrete grid, so norms are preserved to rounding.
    """
    values = np.asarray(values)
    n = values.shape[-1]
    k = wavenumbers(n, period)
    phase = np.exp(1j * k * amount)
    if n % 2 == 0 and np.isrealobj(values):
        # symmetric Nyquist treatment keeps real data real; complex data stays unitary
        phase[n // 2] = np.cos(k[n // 2] * amount)
    out = np.fft.ifft(phase * np.fft.fft(values, axis=-1), axis=-1)
    return out.real if np.isrealobj(values) else out


def bandwidth(values, rel_tol: float = 1e-12) -> int:
    """Largest |mode index| whose Fourier amplitude exceeds ``rel_tol * max``."""
    amp = np.abs(np.fft.fft(np.asarray(values), axis=-1))
    if not amp.any():
        return 0
    idx = np.abs(np.fft.fftfreq(amp.shape[-1]) * amp.shape[-1])
    return int(idx[amp > rel_tol * amp.max()].max())
