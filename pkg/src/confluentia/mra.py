"""Littlewood-Paley-Meyer multiresolution machinery relating H^{alpha,lambda} to L^2(R).

Conventions
-----------
* ``PseudoPeriodicSample`` grids are ``psi_j = j delta`` with ``delta = 2pi/(alpha N)``.
* Line grids share the step ``delta`` and start on an integer multiple of it, so
  pseudo-period translations are exact index shifts.
* Inner products are plain Riemann sums (``sum f conj(g) delta``); with this
  measure the injection I is an exact isometry by the partition of unity.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import spectral
from .contraction import AlgebraElement
from .exceptions import OddGrid, ShiftOffGrid
from .samples import LineSample, PseudoPeriodicSample
from .special import HermiteBundle, ho_eigenfunction

TWO_PI_3 = 2 * np.pi / 3
FOUR_PI_3 = 4 * np.pi / 3


def _bump(x: np.ndarray) -> np.ndarray:
    """``exp(-1/x^2)`` for x > 0, else 0."""
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = np.exp(-1.0 / (x[pos] * x[pos]))
    return out


@dataclass(frozen=True)
class WindowFn:
    """Smooth window with ``phi = 1`` on ``|xi| <= 2pi/3`` and support ``|xi| < 4pi/3``."""

    func: Callable[[np.ndarray], np.ndarray]
    smoothness: str = "C-infinity"
    name: str = "window"

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        out = self.func(np.atleast_1d(xi))
        return float(out[0]) if xi.ndim == 0 else out.reshape(xi.shape)


def _meyer_g(xi: np.ndarray) -> np.ndarray:
    num = _bump(FOUR_PI_3 - xi)
    den = _bump(xi - TWO_PI_3) + num
    return num / den  # den > 0 everywhere: the two bumps never vanish together


def _meyer_phi(xi: np.ndarray) -> np.ndarray:
    return np.sqrt(_meyer_g(xi) * _meyer_g(-xi))


MEYER_WINDOW = WindowFn(_meyer_phi, "C-infinity", "lpm")


def window_checks(w: WindowFn = MEYER_WINDOW, grid: int = 4096) -> dict:
    """Max defects of the window conditions on uniform grids of ``grid`` points."""
    if grid < 1024:
        raise ValueError("grid must have at least 1024 points")
    plateau = np.linspace(-TWO_PI_3, TWO_PI_3, grid)
    tail = np.concatenate([np.linspace(FOUR_PI_3, 4 * np.pi, grid), np.linspace(-4 * np.pi, -FOUR_PI_3, grid)])
    # 1 - phi ~ exp(-1/x^2) underflows near the ramp ends, so strictness is
    # tested on the middle 3/4 where it is resolvable in double precision
    width = FOUR_PI_3 - TWO_PI_3
    ramp = np.linspace(TWO_PI_3 + width / 8, FOUR_PI_3 - width / 8, grid)
    ramp = np.concatenate([ramp, -ramp])
    closed_ramp = np.linspace(TWO_PI_3, FOUR_PI_3, grid)
    full = np.linspace(0, 2 * np.pi, grid)
    ramp_vals = w(ramp)
    partition = sum(w(full + 2 * k * np.pi) ** 2 for k in (-1, 0, 1))
    return {
        "plateau": float(np.max(np.abs(w(plateau) - 1))),
        "support": float(np.max(np.abs(w(tail)))),
        "strict_ramp": bool(np.all((ramp_vals > 0) & (ramp_vals < 1))),
        "ramp_min_gap": float(min(ramp_vals.min(), (1 - ramp_vals).min())),
        "range": float(max(0.0, -w(closed_ramp).min(), w(closed_ramp).max() - 1)),
        "symmetry": float(np.max(np.abs(w(full) ** 2 + w(2 * np.pi - full) ** 2 - 1))),
        "partition": float(np.max(np.abs(partition - 1))),
        "grid": grid,
    }


# -- group elements and representations ------------------------------------

@dataclass(frozen=True)
class H3Element:
    a: float
    b: float
    t: float


@dataclass(frozen=True)
class GalphaElement:
    theta: float
    v1: float
    v2: float


def _line_shift(u: LineSample, b: float, interpolate: bool) -> np.ndarray:
    steps = b / u.step
    if abs(steps - round(steps)) < 1e-12:
        m = int(round(steps))
        out = np.zeros_like(u.values, dtype=complex)
        if m >= 0:
            out[:u.n - m] = u.values[m:]
        else:
            out[-m:] = u.values[:u.n + m]
        return out
    if not interpolate:
        raise ShiftOffGrid(f"shift {b} is not a multiple of the step {u.step}")
    # band-limited shift; the function is negligible at the window edges
    return spectral.shift(u.values.astype(complex), u.span, b)


def rep_H3(g: H3Element, h: float, f: LineSample, interpolate: bool = True) -> LineSample:
    """``e^{ih(t + ab/2)} e^{ihax} f(x + b)``."""
    shifted = _line_shift(f, g.b, interpolate)
    phase = np.exp(1j * h * (g.t + g.a * g.b / 2)) * np.exp(1j * h * g.a * f.grid)
    return f.with_values(phase * shifted)


def rep_Galpha(g: GalphaElement, h: float, f: PseudoPeriodicSample, interpolate: bool = True) -> PseudoPeriodicSample:
    """``e^{ih(v2 cos(alpha psi) + alpha^-1 v1 sin(alpha psi))} f(psi + theta)``."""
    a, psi = f.alpha, f.grid
    phase = np.exp(1j * h * (g.v2 * np.cos(a * psi) + g.v1 * np.sin(a * psi) / a))
    return f.with_values(phase * f.shifted(g.theta, interpolate))


def k_alpha(theta: float, alpha: float) -> np.ndarray:
    """Rotation part acting on ``(v1, v2)``: the ellipse-preserving rotation by ``alpha theta``."""
    c, s = math.cos(alpha * theta), math.sin(alpha * theta)
    return np.array([[c, -alpha * s], [s / alpha, c]])


def galpha_multiply(g1: GalphaElement, g2: GalphaElement, alpha: float) -> GalphaElement:
    """Product matching ``R(g1) R(g2) = R(g1 g2)`` for :func:`rep_Galpha`."""
    w = k_alpha(g1.theta, alpha) @ np.array([g2.v1, g2.v2])
    return GalphaElement(g1.theta + g2.theta, g1.v1 + w[0], g1.v2 + w[1])


def exp_alpha(x: AlgebraElement, alpha: float) -> GalphaElement:
    """Exponential of ``pP + qQ + eE``: ``(theta, T(theta)(q, e))`` with
    ``T(theta) = int_0^1 k_alpha(s theta) ds`` and ``theta = p``."""
    theta, v = float(x.p), np.array([float(x.q), float(x.e)])
    at = alpha * theta
    if abs(at) < 1e-8:
        sinc, cosc = 1 - at * at / 6, at / 2  # sin(u)/u and (1-cos u)/u
    else:
        sinc, cosc = math.sin(at) / at, (1 - math.cos(at)) / at
    t = np.array([[sinc, -alpha * cosc], [cosc / alpha, sinc]])
    w = t @ v
    return GalphaElement(theta, float(w[0]), float(w[1]))


def exp_zero(x: AlgebraElement) -> H3Element:
    """Exponential in the Heisenberg group, in the coordinates of :func:`rep_H3`:
    P generates ``b``, Q generates ``a``, E generates ``t``."""
    return H3Element(float(x.q), float(x.p), float(x.e))


# -- injections, periodisation and the two-copy identification ------------

def line_grid(alpha: float, n: int, half_width: float) -> tuple[float, int]:
    """``(start, size)`` of a line grid with step ``2pi/(alpha n)`` aligned to 0
    and covering ``[-half_width, half_width)``."""
    step = 2 * np.pi / (alpha * n)
    m = int(math.ceil(half_width / step))
    return -m * step, 2 * m


def _extend(f: PseudoPeriodicSample, idx: np.ndarray) -> np.ndarray:
    wraps, j = np.divmod(idx, f.n)
    vals = f.values[j]
    if f.lam:
        vals = vals * np.exp(2j * np.pi * f.lam * wraps)
    return vals


def inject_I(f: PseudoPeriodicSample, w: WindowFn = MEYER_WINDOW, half_width: float | None = None) -> LineSample:
    """``phi(alpha psi) f(psi)`` sampled on the aligned line grid."""
    support = FOUR_PI_3 / f.alpha
    start, size = line_grid(f.alpha, f.n, max(support, half_width or 0.0))
    idx = np.arange(size) + int(round(start / f.step))
    x = idx * f.step
    return LineSample(start, f.step, w(f.alpha * x) * _extend(f, idx))


def periodize_A(u: LineSample, alpha: float, lam: float = 0.0, w: WindowFn = MEYER_WINDOW) -> PseudoPeriodicSample:
    """``sum_k phi(alpha psi + 2k pi) e^{-2ik pi lam} u(psi + 2k pi/alpha)`` on ``[0, 2pi/alpha)``."""
    n_float = 2 * np.pi / (alpha * u.step)
    n = int(round(n_float))
    if abs(n - n_float) > 1e-9 * n_float:
        raise ValueError("line step does not divide the pseudo-period")
    offset = u.start / u.step
    if abs(offset - round(offset)) > 1e-9:
        raise ValueError("line grid is not aligned to multiples of its step")
    offset = int(round(offset))
    out = np.zeros(n, dtype=complex)
    psi = np.arange(n) * u.step
    kmax = int(math.ceil(u.n / n)) + 2
    for k in range(-kmax, kmax + 1):
        idx = np.arange(n) + k * n - offset
        ok = (idx >= 0) & (idx < u.n)
        if not ok.any():
            continue
        weight = w(alpha * psi + 2 * k * np.pi) * np.exp(-2j * np.pi * k * lam)
        out[ok] += weight[ok] * u.values[idx[ok]]
    return PseudoPeriodicSample(alpha, lam, out)


def project_P(u: LineSample, alpha: float, lam: float = 0.0, w: WindowFn = MEYER_WINDOW) -> LineSample:
    """``I(A u)`` restricted to the grid of ``u``."""
    return restrict(inject_I(periodize_A(u, alpha, lam, w), w), u)


def restrict(v: LineSample, like: LineSample) -> LineSample:
    """Resample ``v`` onto the (aligned, same-step) grid of ``like``; zero outside ``v``."""
    out = np.zeros(like.n, dtype=complex)
    shift = int(round((like.start - v.start) / like.step))
    lo, hi = max(0, -shift), min(like.n, v.n - shift)
    if hi > lo:
        out[lo:hi] = v.values[lo + shift:hi + shift]
    return like.with_values(out)


def basis_function(k: int, lam: float, alpha: float, xi, w: WindowFn = MEYER_WINDOW):
    """``(alpha/2pi)^{1/2} e^{i(k+lam) alpha xi} phi(alpha xi)``: orthonormal in L^2(R)."""
    xi = np.asarray(xi, dtype=float)
    return math.sqrt(alpha / (2 * np.pi)) * np.exp(1j * (k + lam) * alpha * xi) * w(alpha * xi)


def op_U(f: PseudoPeriodicSample) -> PseudoPeriodicSample:
    """``e^{-i pi lam} f(psi + pi/alpha)``; needs an even grid."""
    if f.n % 2:
        raise OddGrid(f"half-period shift needs an even grid, got {f.n}")
    return f.with_values(np.exp(-1j * np.pi * f.lam) * f.shifted(np.pi / f.alpha, interpolate=False))


def op_J(f: PseudoPeriodicSample) -> PseudoPeriodicSample:
    """``(1 + e^{i alpha psi}) f`` from ``H^{2alpha, lam/2}`` (N points) to ``H^{alpha, lam}`` (2N)."""
    alpha, lam = f.alpha / 2, 2 * f.lam
    idx = np.arange(2 * f.n)
    psi = idx * f.step
    return PseudoPeriodicSample(alpha, lam, (1 + np.exp(1j * alpha * psi)) * _extend(f, idx))


def op_R(g: PseudoPeriodicSample) -> PseudoPeriodicSample:
    """``1/4 (1 + e^{-i alpha psi}) g + 1/4 (1 - e^{-i alpha psi}) U g`` into ``H^{2alpha, lam/2}``."""
    ug = op_U(g)
    e = np.exp(-1j * g.alpha * g.grid)
    vals = 0.25 * (1 + e) * g.values + 0.25 * (1 - e) * ug.values
    half = g.n // 2
    return PseudoPeriodicSample(2 * g.alpha, g.lam / 2, vals[:half])


def ops_UJR(f: PseudoPeriodicSample) -> dict[str, PseudoPeriodicSample]:
    """U and R applied to ``f`` in ``H^{alpha,lam}``, and J applied to the
    first half-period of ``f`` read as an element of ``H^{2alpha,lam/2}``."""
    if f.n % 2:
        raise OddGrid(f"half-period shift needs an even grid, got {f.n}")
    half = PseudoPeriodicSample(2 * f.alpha, f.lam / 2, f.values[: f.n // 2])
    return {"U": op_U(f), "J": op_J(half), "R": op_R(f)}


def split(g: PseudoPeriodicSample) -> tuple[PseudoPeriodicSample, PseudoPeriodicSample]:
    """``(R g, R U g)``."""
    return op_R(g), op_R(op_U(g))


def merge(f1: PseudoPeriodicSample, f2: PseudoPeriodicSample) -> PseudoPeriodicSample:
    """``J f1 + U J f2``."""
    j1, j2 = op_J(f1), op_U(op_J(f2))
    return j1.with_values(j1.values + j2.values)


# -- operator-convergence harness -------------------------------------------

def harness_grid(alpha: float, target_step: float = 0.05) -> int:
    """Points on the pseudo-period ``2pi/alpha``: a multiple of 4 with step near ``target_step``."""
    return max(4, 4 * int(round(2 * np.pi / alpha / target_step / 4)))


@dataclass(frozen=True)
class HarnessRow:
    alpha: float
    x: AlgebraElement
    err_sup: float
    err_d1: float
    err_d2: float

    def direction(self) -> str:
        return "+".join(f"{c}{b}" for b, c in zip("PQE", self.x.coords()) if c)

    def as_row(self) -> dict:
        return {"alpha": self.alpha, "X": self.direction() or "0",
                "direction_params": ";".join(str(float(c)) for c in self.x.coords()),
                "err_sup": self.err_sup, "err_d1": self.err_d1, "err_d2": self.err_d2}


HARNESS_FIELDS = ("alpha", "X", "direction_params", "err_sup", "err_d1", "err_d2")


def composite(u: Callable, v: Callable, x: AlgebraElement, h: float, alpha: float,
              half_width: float, w: WindowFn = MEYER_WINDOW) -> tuple[LineSample, LineSample]:
    """Apply ``(I2 (+) I2)(R; R U) R_h(exp_alpha X) (J, U J)(A2 (+) A2)`` to ``(u, v)``
    with ``I2 = I_{2alpha,0}``, ``A2 = A_{2alpha,0}``; returns both line outputs."""
    n = harness_grid(alpha)
    step = 2 * np.pi / (alpha * n)
    start, size = line_grid(alpha, n, half_width)
    grid = start + np.arange(size) * step
    lu, lv = LineSample(start, step, u(grid)), LineSample(start, step, v(grid))
    f1, f2 = periodize_A(lu, 2 * alpha, 0.0, w), periodize_A(lv, 2 * alpha, 0.0, w)
    g = rep_Galpha(exp_alpha(x, alpha), h, merge(f1, f2))
    r1, r2 = split(g)
    return restrict(inject_I(r1, w), lu), restrict(inject_I(r2, w), lv)


def _seminorms(diff: LineSample) -> tuple[float, float, float]:
    d1 = np.gradient(diff.values, diff.step)
    d2 = np.gradient(d1, diff.step)
    return float(np.max(np.abs(diff.values))), float(np.max(np.abs(d1))), float(np.max(np.abs(d2)))


def convergence_harness(u: Callable, v: Callable, x: AlgebraElement, h: float,
                        alphas: Sequence[float], w: WindowFn = MEYER_WINDOW) -> list[HarnessRow]:
    """Distance of the composite operator to ``diag(R^h(exp_0 X), R^{-h}(exp_0 X))``.

    ``u`` and ``v`` are callables on the line (e.g. oscillator eigenfunctions);
    errors are sup norms of the difference and of its first two finite-difference
    derivatives over the line window.
    """
    rows = []
    g0 = exp_zero(x)
    for alpha in alphas:
        half_width = max(12 / math.sqrt(h), FOUR_PI_3 / (2 * alpha))
        out_u, out_v = composite(u, v, x, h, alpha, half_width, w)
        tu = rep_H3(g0, h, out_u.with_values(u(out_u.grid)))
        tv = rep_H3(g0, -h, out_v.with_values(v(out_v.grid)))
        eu = _seminorms(out_u.with_values(out_u.values - tu.values))
        ev = _seminorms(out_v.with_values(out_v.values - tv.values))
        rows.append(HarnessRow(float(alpha), x, *(max(a, b) for a, b in zip(eu, ev))))
    return rows


def hermite_pair(n_u: int, n_v: int, h: float) -> tuple[Callable, Callable]:
    """Oscillator eigenfunctions ``e^h_{n_u}``, ``e^h_{n_v}`` as line callables."""
    bu, bv = HermiteBundle(n_u, h), HermiteBundle(n_v, h)
    return (lambda x: ho_eigenfunction(bu, x)), (lambda x: ho_eigenfunction(bv, x))


def ops_checks(alpha: float = 0.5, n: int = 256, lam: float = 0.0, seed: int = 0) -> dict:
    """Defects of A.I = id, adjointness, projector identities and the J/U/R round trip
    on seeded random smooth data."""
    rng = np.random.default_rng(seed)

    def smooth_random(a: float, size: int, lam_: float) -> PseudoPeriodicSample:
        modes = 12
        coef = rng.normal(size=2 * modes + 1) + 1j * rng.normal(size=2 * modes + 1)
        psi = np.arange(size) * 2 * np.pi / (a * size)
        ks = np.arange(-modes, modes + 1) + lam_
        return PseudoPeriodicSample(a, lam_, np.exp(1j * a * np.outer(psi, ks)) @ coef)

    f = smooth_random(alpha, n, lam)
    If = inject_I(f)
    af = periodize_A(If, alpha, lam)
    start, size = line_grid(alpha, n, 3 * np.pi / alpha)
    grid = start + np.arange(size) * f.step
    u = LineSample(start, f.step, (rng.normal(size=size) + 1j * rng.normal(size=size)) * np.exp(-(alpha * grid / 4) ** 2))
    au = periodize_A(u, alpha, lam)
    pu = project_P(u, alpha, lam)
    ppu = project_P(pu, alpha, lam)
    v = u.with_values(rng.normal(size=size) + 1j * rng.normal(size=size))
    pv = project_P(v, alpha, lam)
    f1, f2 = smooth_random(2 * alpha, n // 2, lam / 2), smooth_random(2 * alpha, n // 2, lam / 2)
    b1, b2 = split(merge(f1, f2))
    g = f
    uu = op_U(op_U(g))
    scale = max(1.0, u.norm() * v.norm())
    return {
        "isometry_I": abs(If.norm() / f.norm() - 1),
        "A_after_I": float(np.max(np.abs(af.values - f.values))),
        "adjoint": abs(restrict(If, u).inner(u) - f.inner(au)) / max(1.0, f.norm() * u.norm()),
        "idempotent": float(np.max(np.abs(ppu.values - pu.values))),
        "self_adjoint": abs(pu.inner(v) - u.inner(pv)) / scale,
        "roundtrip": float(max(np.max(np.abs(b1.values - f1.values)), np.max(np.abs(b2.values - f2.values)))),
        "U_squared": float(np.max(np.abs(uu.values - g.values))),
        "merge_norm_ratio": merge(f1, f2).norm() / math.hypot(f1.norm(), f2.norm()),
    }


OPS_TOLERANCES = {"isometry_I": 1e-8, "A_after_I": 1e-10, "adjoint": 1e-8, "idempotent": 1e-8,
                  "self_adjoint": 1e-8, "roundtrip": 1e-10, "U_squared": 1e-10}
WINDOW_TOLERANCES = {"plateau": 1e-12, "support": 1e-12, "range": 1e-12, "symmetry": 1e-12, "partition": 1e-12}


def write_harness_csv(rows: Iterable[HarnessRow], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=HARNESS_FIELDS)
        writer.writeheader()
        for r in rows:
            writer.writerow(r.as_row())


def window_report_json(report: dict) -> str:
    return json.dumps(report, indent=2)
