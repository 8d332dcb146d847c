"""Hermite polynomials, parabolic cylinder functions, oscillator eigenfunctions and
periodic Mathieu functions.

Mathieu functions follow the Abramowitz-Stegun normalisation
(``int_0^{2pi} ce_n^2 = int_0^{2pi} se_n^2 = pi``) with signs fixed by continuity
from ``q = 0`` where ``ce_n -> cos(ns)`` and ``se_n -> sin(ns)``.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .exceptions import NoConvergence

DEFAULT_MAX_TRUNCATION = 2048
EIGEN_RTOL = 1e-10


def hermite(n: int, x):
    """Physicists' Hermite polynomial by ``H_{k+1} = 2x H_k - 2k H_{k-1}``.

    Works for floats, numpy arrays and exact Fractions alike.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    prev, cur = 0 * x + 1, 2 * x
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, 2 * x * cur - 2 * k * prev
    return cur


def hermite_functions(nmax: int, x) -> np.ndarray:
    """Rows ``psi_0 .. psi_nmax`` of ``(2^n n! sqrt(pi))^{-1/2} e^{-x^2/2} H_n(x)``.

    The normalised three-term recurrence never forms ``H_n`` itself, so it
    stays finite for large ``n`` and ``|x|``.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = np.pi ** -0.25 * np.exp(-x * x / 2)
    if nmax >= 1:
        out[1] = np.sqrt(2.0) * x * out[0]
    for k in range(1, nmax):
        out[k + 1] = np.sqrt(2.0 / (k + 1)) * x * out[k] - np.sqrt(k / (k + 1)) * out[k - 1]
    return out


def parabolic_D(m: int, zeta):
    """Weber function ``D_m(zeta) = 2^{-m/2} e^{-zeta^2/4} H_m(zeta/sqrt 2)`` for integer m >= 0."""
    if m < 0:
        raise ValueError("m must be non-negative")
    psi = hermite_functions(m, np.asarray(zeta, dtype=float) / np.sqrt(2.0))[m]
    scale = math.exp(0.5 * (math.lgamma(m + 1) + 0.5 * math.log(math.pi)))
    out = scale * psi
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class HermiteBundle:
    n: int
    h: float

    def __post_init__(self):
        if self.n < 0 or not math.isfinite(self.h) or self.h <= 0:
            raise ValueError("HermiteBundle needs n >= 0 and finite h > 0")

    @property
    def mu(self) -> float:
        return (2 * self.n + 1) * self.h


def ho_eigenfunction(b: HermiteBundle, x):
    """``e^h_n(x) = (2^n n!)^{-1/2} (pi/h)^{-1/4} e^{-h x^2/2} H_n(sqrt(h) x)``."""
    out = b.h ** 0.25 * hermite_functions(b.n, np.sqrt(b.h) * np.asarray(x, dtype=float))[b.n]
    return float(out) if np.ndim(out) == 0 else out


class Parity(str, Enum):
    EVEN = "even"  # ce_n
    ODD = "odd"    # se_n

    @classmethod
    def parse(cls, value) -> "Parity":
        if isinstance(value, Parity):
            return value
        text = str(value).lower()
        if text in {"even", "ce", "evence"}:
            return cls.EVEN
        if text in {"odd", "se", "oddse"}:
            return cls.ODD
        raise ValueError(f"unknown parity {value!r}")


def max_truncation() -> int:
    return int(os.environ.get("CONFLUENTIA_MAX_TRUNCATION", DEFAULT_MAX_TRUNCATION))


def _class_system(parity: Parity, n: int, q: float, size: int):
    """Symmetric tridiagonal truncation for the Fourier class containing order n.

    Returns (diag, offdiag, wavenumbers, index of order n inside the class).
    The ce_{2m} class is symmetrised by ``v_0 = sqrt(2) A_0``.
    """
    if n < 0 or (parity is Parity.ODD and n < 1):
        raise ValueError(f"invalid order {n} for parity {parity.value}")
    start = n % 2 if parity is Parity.EVEN else (1 if n % 2 else 2)
    k = start + 2 * np.arange(size)
    diag = (k * k).astype(float)
    off = np.full(size - 1, float(q))
    if parity is Parity.EVEN and start == 0:
        off[0] *= math.sqrt(2.0)
    elif start == 1:
        diag[0] += q if parity is Parity.EVEN else -q
    return diag, off, k, (n - start) // 2


def _probe_weights(parity: Parity, k: np.ndarray, start: int) -> np.ndarray:
    # value or slope at s = pi/2; never zero along the q-branch, so its sign
    # pins the continuity-from-q=0 convention even when ce_n(0, q) underflows
    if parity is Parity.EVEN:
        return np.cos(k * np.pi / 2).round() if start == 0 else k * np.sin(k * np.pi / 2).round()
    return np.sin(k * np.pi / 2).round() if start == 1 else k * np.cos(k * np.pi / 2).round()


@dataclass(frozen=True)
class MathieuEigen:
    """Periodic Mathieu eigenpair: ``ce_n`` (EVEN) or ``se_n`` (ODD).

    ``coeffs[j]`` multiplies ``cos(wavenumbers[j] s)`` or ``sin(wavenumbers[j] s)``.
    """

    parity: Parity
    order: int
    q: float
    a: float
    coeffs: np.ndarray
    wavenumbers: np.ndarray
    truncation: int
    truncation_error: float

    def __call__(self, s, derivative: int = 0):
        return mathieu_eval(self, s, derivative)

    def symmetric_vector(self) -> np.ndarray:
        v = self.coeffs.copy()
        if self.parity is Parity.EVEN and self.wavenumbers[0] == 0:
            v[0] *= math.sqrt(2.0)
        return v

    def recursion_residual(self) -> float:
        """``||(M - a) v|| / ||v||`` for the truncated recursion matrix M."""
        d, e, _, _ = _class_system(self.parity, self.order, self.q, self.truncation)
        v = self.symmetric_vector()
        mv = d * v
        mv[:-1] += e * v[1:]
        mv[1:] += e * v[:-1]
        return float(np.linalg.norm(mv - self.a * v) / np.linalg.norm(v))


def _solve(parity: Parity, n: int, q: float, size: int):
    d, e, k, idx = _class_system(parity, n, q, size)
    if idx >= size:
        raise ValueError("truncation smaller than the requested order")
    w, v = eigh_tridiagonal(d, e, select="i", select_range=(idx, idx), lapack_driver="stebz")
    return float(w[0]), v[:, 0], k


def mathieu_eigenpair(parity, n: int, q: float, K: int | None = None) -> MathieuEigen:
    """Characteristic value and normalised Fourier coefficients of ``ce_n``/``se_n``.

    With ``K`` given the truncation is fixed; otherwise it starts at
    ``max(16, 2n+8)`` and doubles until the eigenvalue is stable to 1e-10
    (relative), up to ``CONFLUENTIA_MAX_TRUNCATION`` (default 2048).
    """
    parity = Parity.parse(parity)
    q = float(q)
    if q < 0:
        raise ValueError("q must be non-negative")
    if K is not None:
        a, v, k = _solve(parity, n, q, K)
    else:
        cap = max_truncation()
        size = max(16, 2 * n + 8)
        a_prev, _, _ = _solve(parity, n, q, size)
        while True:
            if 2 * size > cap:
                raise NoConvergence(f"{parity.value} order {n} at q={q} did not converge with K <= {cap}")
            size *= 2
            a, v, k = _solve(parity, n, q, size)
            if abs(a - a_prev) <= EIGEN_RTOL * max(1.0, abs(a)) and q * abs(v[-1]) < 1e-14:
                break
            a_prev = a
        K = size
    start = int(k[0])
    if np.dot(_probe_weights(parity, k, start), v) * _probe_weights(parity, np.array([n]), start)[0] < 0:
        v = -v
    coeffs = v.copy()
    if parity is Parity.EVEN and start == 0:
        coeffs[0] /= math.sqrt(2.0)
    return MathieuEigen(parity, n, q, a, coeffs, k, K, float(q * abs(v[-1])))


def mathieu_char(parity, n: int, q: float) -> float:
    """Characteristic value ``a_n(q)`` (EVEN) or ``b_n(q)`` (ODD)."""
    return mathieu_eigenpair(parity, n, q).a


def mathieu_eval(e: MathieuEigen, s, derivative: int = 0):
    """Fourier synthesis of ``ce_n``/``se_n`` or its first/second s-derivative."""
    s = np.asarray(s, dtype=float)
    arg = np.multiply.outer(s, e.wavenumbers)
    kpow = e.wavenumbers.astype(float) ** derivative
    # d/ds cycles cos -> -sin -> -cos and sin -> cos -> -sin
    if e.parity is Parity.EVEN:
        basis = [np.cos, lambda t: -np.sin(t), lambda t: -np.cos(t)][derivative](arg)
    else:
        basis = [np.sin, np.cos, lambda t: -np.sin(t)][derivative](arg)
    out = basis @ (kpow * e.coeffs)
    return float(out) if out.ndim == 0 else out


def floquet_coefficients(e: MathieuEigen) -> tuple[dict[int, float], int]:
    """Exponential-basis coefficients ``C_k`` and offset ``lam`` with
    ``y(s) = e^{i lam s} sum_k C_k e^{2iks}`` (``lam`` in {0, 1})."""
    lam = int(e.wavenumbers[0] % 2)
    c: dict[int, complex] = {}
    for kk, coef in zip(e.wavenumbers.tolist(), e.coeffs.tolist()):
        if kk == 0:
            c[0] = c.get(0, 0) + coef
            continue
        # cos(ks) = (e^{iks} + e^{-iks})/2,  sin(ks) = (e^{iks} - e^{-iks})/(2i)
        cp, cm = (coef / 2, coef / 2) if e.parity is Parity.EVEN else (-0.5j * coef, 0.5j * coef)
        c[(kk - lam) // 2] = c.get((kk - lam) // 2, 0) + cp
        c[(-kk - lam) // 2] = c.get((-kk - lam) // 2, 0) + cm
    return c, lam


def floquet_recursion_residual(a: float, q: float, lam: float, coeffs: dict[int, complex]) -> float:
    """Max over interior k of ``|(a - (2k+lam)^2) C_k - q (C_{k-1} + C_{k+1})|``,
    relative to ``max|C|``; neighbours of the 2s-harmonic are one index apart."""
    ks = sorted(coeffs)
    scale = max(abs(v) for v in coeffs.values())
    worst = 0.0
    for k in ks[1:-1]:
        r = (a - (2 * k + lam) ** 2) * coeffs[k] - q * (coeffs.get(k - 1, 0) + coeffs.get(k + 1, 0))
        worst = max(worst, abs(r))
    return worst / scale


def char_asymptotic(n: int, q: float) -> float:
    """Three-term large-q expansion ``-2q + 2(2n+1) sqrt(q) - ((2n+1)^2 + 1)/8``."""
    w = 2 * n + 1
    return -2 * q + 2 * w * math.sqrt(q) - (w * w + 1) / 8


def meixner_approx(n: int, q: float, z):
    """Large-q envelope ``(pi sqrt(q)/2)^{1/4} (n!)^{-1/2} D_n(2 q^{1/4} cos z)``."""
    pref = (math.pi * math.sqrt(q) / 2) ** 0.25 / math.sqrt(math.factorial(n))
    return pref * parabolic_D(n, 2 * q ** 0.25 * np.cos(z))


def meixner_error(parity, n: int, q: float, z) -> float:
    """``|ce_n(z,q) - envelope|`` (EVEN) or ``|se_{n+1}(z,q) - envelope|`` (ODD)."""
    parity = Parity.parse(parity)
    order = n if parity is Parity.EVEN else n + 1
    e = mathieu_eigenpair(parity, order, q)
    return float(np.max(np.abs(mathieu_eval(e, z) - meixner_approx(n, q, z))))
