"""Uniform-grid function samples: pseudo-periodic (H^{alpha,lambda}) and on the line."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import spectral


@dataclass(frozen=True)
class PseudoPeriodicSample:
    """Samples of ``f`` on ``psi_j = j * 2pi/(alpha N)``, ``j = 0..N-1``, where
    ``f(psi + 2pi k/alpha) = exp(2i pi k lam) f(psi)``."""

    alpha: float
    lam: float
    values: np.ndarray

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        object.__setattr__(self, "values", np.asarray(self.values))

    @classmethod
    def from_function(cls, func, alpha: float, n: int, lam: float = 0.0) -> "PseudoPeriodicSample":
        psi = np.arange(n) * (2 * np.pi / alpha / n)
        return cls(alpha, lam, func(psi))

    @property
    def n(self) -> int:
        return self.values.shape[-1]

    @property
    def period(self) -> float:
        return 2 * np.pi / self.alpha

    @property
    def step(self) -> float:
        return self.period / self.n

    @property
    def grid(self) -> np.ndarray:
        return np.arange(self.n) * self.step

    def twist(self) -> np.ndarray:
        return np.exp(1j * self.lam * self.alpha * self.grid)

    def periodic_part(self) -> np.ndarray:
        if self.lam == 0:
            return self.values
        return self.values / self.twist()

    def with_values(self, values) -> "PseudoPeriodicSample":
        return PseudoPeriodicSample(self.alpha, self.lam, values)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * self.step))

    def inner(self, other: "PseudoPeriodicSample") -> complex:
        return complex(np.sum(self.values * np.conj(other.values)) * self.step)

    def derivative(self, order: int = 1) -> np.ndarray:
        """Spectral derivative honouring the twist ``exp(i lam alpha psi)``."""
        if self.lam == 0:
            return spectral.derivative(self.values, self.period, order)
        k = spectral.wavenumbers(self.n, self.period) + self.lam * self.alpha
        p = np.fft.fft(self.periodic_part())
        return self.twist() * np.fft.ifft((1j * k) ** order * p)

    def shifted(self, theta: float, interpolate: bool = True) -> np.ndarray:
        """Samples of ``f(psi + theta)``: exact roll on grid multiples, else trigonometric."""
        from .exceptions import ShiftOffGrid

        steps = theta / self.step
        if abs(steps - round(steps)) < 1e-12:
            m = int(round(steps))
            wraps, idx = np.divmod(np.arange(self.n) + m, self.n)
            return self.values[idx] * np.exp(2j * np.pi * self.lam * wraps) if self.lam else self.values[idx]
        if not interpolate:
            raise ShiftOffGrid(f"shift {theta} is not a multiple of the step {self.step}")
        p = spectral.shift(self.periodic_part(), self.period, theta)
        if self.lam == 0:
            return p
        return p * np.exp(1j * self.lam * self.alpha * (self.grid + theta))


@dataclass(frozen=True)
class LineSample:
    """Samples on ``x_j = start + j * step`` of a function on the real line."""

    start: float
    step: float
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values))

    @classmethod
    def symmetric(cls, func, half_width: float, step: float) -> "LineSample":
        m = int(np.ceil(half_width / step))
        x = np.arange(-m, m) * step
        return cls(-m * step, step, func(x))

    @property
    def n(self) -> int:
        return self.values.shape[-1]

    @property
    def grid(self) -> np.ndarray:
        return self.start + np.arange(self.n) * self.step

    @property
    def span(self) -> float:
        return self.n * self.step

    def with_values(self, values) -> "LineSample":
        return LineSample(self.start, self.step, values)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * self.step))

    def inner(self, other: "LineSample") -> complex:
        return complex(np.sum(self.values * np.conj(other.values)) * self.step)

    def derivative(self, order: int = 1) -> np.ndarray:
        """Spectral derivative; valid for functions negligible at both ends."""
        return spectral.derivative(self.values, self.span, order)
