"""The alpha-family of brackets contracting m(2) (and so(2,1)) onto h(3), the
deformed Mathieu/Lame equations, and numerical confluence sweeps."""
from __future__ import annotations

import csv
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import spectral
from .algebra import Number, OdeSpec, RationalPoly, as_rational
from .exceptions import GridTooCoarse
from .samples import PseudoPeriodicSample
from .special import Parity, hermite, mathieu_eigenpair

BASIS = ("P", "Q", "E")


@dataclass(frozen=True)
class AlgebraElement:
    """``p P + q Q + e E``; coordinates may be floats or exact Fractions."""

    p: object = 0
    q: object = 0
    e: object = 0

    @classmethod
    def basis(cls, name: str) -> "AlgebraElement":
        coords = [0, 0, 0]
        coords[BASIS.index(name.upper())] = 1
        return cls(*coords)

    def coords(self) -> tuple:
        return (self.p, self.q, self.e)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(*(a + b for a, b in zip(self.coords(), other.coords())))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(*(a - b for a, b in zip(self.coords(), other.coords())))

    def __mul__(self, scalar) -> "AlgebraElement":
        return AlgebraElement(*(scalar * a for a in self.coords()))

    __rmul__ = __mul__

    def norm(self) -> float:
        return max(abs(float(c)) for c in self.coords())


@dataclass(frozen=True)
class BracketTable:
    """Structure constants ``consts[i][j] = [X_i, X_j]`` in the basis P, Q, E."""

    alpha: object
    consts: tuple
    family: str = "m"

    @classmethod
    def from_relations(cls, alpha, relations: dict, family: str) -> "BracketTable":
        zero = (0, 0, 0)
        table = [[zero] * 3 for _ in range(3)]
        for (x, y), value in relations.items():
            i, j = BASIS.index(x), BASIS.index(y)
            table[i][j] = tuple(value)
            table[j][i] = tuple(-v for v in value)
        return cls(alpha, tuple(tuple(row) for row in table), family)

    @classmethod
    def m_alpha(cls, alpha) -> "BracketTable":
        """``[P,Q] = E``, ``[P,E] = -alpha^2 Q``, ``[E,Q] = 0``; alpha=0 is h(3)."""
        a2 = alpha * alpha
        return cls.from_relations(alpha, {("P", "Q"): (0, 0, 1), ("P", "E"): (0, -a2, 0)}, "m")

    @classmethod
    def so21(cls, alpha) -> "BracketTable":
        """``[P,Q] = E``, ``[E,P] = alpha^2 Q``, ``[E,Q] = alpha^4 P``."""
        a2 = alpha * alpha
        return cls.from_relations(alpha, {("P", "Q"): (0, 0, 1), ("E", "P"): (0, a2, 0),
                                          ("E", "Q"): (a2 * a2, 0, 0)}, "so21")

    def antisymmetry_defect(self) -> float:
        return max(abs(float(self.consts[i][j][k] + self.consts[j][i][k]))
                   for i, j, k in product(range(3), repeat=3))


def bracket(table: BracketTable, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    out = [0, 0, 0]
    for i, xi in enumerate(x.coords()):
        if xi == 0:
            continue
        for j, yj in enumerate(y.coords()):
            if yj == 0:
                continue
            for k in range(3):
                out[k] = out[k] + xi * yj * table.consts[i][j][k]
    return AlgebraElement(*out)


def _phi(alpha, x: AlgebraElement, inverse: bool = False) -> AlgebraElement:
    scale = (alpha, alpha, alpha * alpha)
    if inverse:
        return AlgebraElement(*(c / s for c, s in zip(x.coords(), scale)))
    return AlgebraElement(*(c * s for c, s in zip(x.coords(), scale)))


def conjugated_bracket(alpha, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """``Phi^{-1}[Phi x, Phi y]_1`` with ``Phi = diag(alpha, alpha, alpha^2)``; alpha > 0.

    Uses only the alpha=1 (m(2)) bracket, written out independently of the table.
    """
    if alpha == 0:
        raise ValueError("the conjugation needs alpha > 0")
    p1, q1, e1 = _phi(alpha, x).coords()
    p2, q2, e2 = _phi(alpha, y).coords()
    # m(2): [P,Q] = E, [P,E] = -Q, [Q,E] = 0
    z = AlgebraElement(0, -(p1 * e2 - e1 * p2), p1 * q2 - q1 * p2)
    return _phi(alpha, z, inverse=True)


def jacobi_defect(table: BracketTable):
    """Largest coordinate of the cyclic Jacobi sum over basis triples (exact for Fractions)."""
    basis = [AlgebraElement.basis(b) for b in BASIS]
    worst = 0
    for x, y, z in product(basis, repeat=3):
        s = (bracket(table, bracket(table, x, y), z) + bracket(table, bracket(table, y, z), x)
             + bracket(table, bracket(table, z, x), y))
        worst = max([worst] + [abs(c) for c in s.coords()])
    return worst


def param_map(alpha: float, h: float, mu: float) -> tuple[float, float]:
    """``(a, q)`` with ``q = h^2 alpha^-4 / 4`` and ``a = alpha^-2 mu - 2q``."""
    if alpha <= 0 or h <= 0:
        raise ValueError("alpha and h must be positive")
    q = h * h / alpha ** 4 / 4
    return mu / alpha ** 2 - 2 * q, q


def mu_from(alpha: float, a: float, q: float) -> float:
    return alpha * alpha * (a + 2 * q)


def deformed_mathieu_ode(alpha: Number, h: Number, mu: Number) -> OdeSpec:
    """``t(1 - alpha^2 t) y'' + (1 - 2 alpha^2 t)/2 y' + (mu - h^2 t)/4 y = 0``."""
    alpha, h, mu = as_rational(alpha), as_rational(h), as_rational(mu)
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    a2 = alpha * alpha
    p1 = RationalPoly([Fraction(1, 2), -a2])
    p2 = RationalPoly([mu / 4, -h * h / 4])
    if alpha == 0:
        return OdeSpec(Fraction(1), ((Fraction(0), 1),), p1, p2)
    return OdeSpec(-a2, ((Fraction(0), 1), (1 / a2, 1)), p1, p2)


def deformed_lame_ode(alpha: Number, k: Number, mu: Number, l: Number | None = None,
                      casimir: Number | None = None, h: Number | None = None) -> OdeSpec:
    """Deformed Lame equation multiplied through by ``4x(alpha^2 x - 1)(alpha^4 k^2 x + 1)``:

    ``P0 y'' + P0'/2 y' + (-mu - alpha^6 k^2 l(l+1) x) y = 0``.

    Give one of ``l``, ``casimir = l(l+1)`` or ``h``; the last sets
    ``l(l+1) = -1/4 - rho^2`` with ``rho = h alpha^-3 k^-1``, which stays finite at alpha = 0.
    """
    alpha, k, mu = as_rational(alpha), as_rational(k), as_rational(mu)
    a2, k2 = alpha * alpha, k * k
    if h is not None:
        h = as_rational(h)
        coupling = -a2 ** 3 * k2 / 4 - h * h  # alpha^6 k^2 l(l+1)
    else:
        if casimir is None:
            if l is None:
                raise TypeError("deformed_lame_ode needs l, casimir or h")
            casimir = as_rational(l) * (as_rational(l) + 1)
        coupling = a2 ** 3 * k2 * as_rational(casimir)
    x = RationalPoly([0, 1])
    f1, f2 = x.scale(a2) - 1, x.scale(a2 * a2 * k2) + 1
    p0 = x * f1 * f2
    p0 = p0.scale(4)
    p1 = p0.derivative().scale(Fraction(1, 2))
    p2 = RationalPoly([-mu, -coupling])
    if alpha == 0:
        return OdeSpec(Fraction(-4), ((Fraction(0), 1),), p1, p2)
    if k == 0:
        raise ValueError("k must be nonzero for alpha > 0")
    roots = sorted([(Fraction(0), 1), (1 / a2, 1), (-1 / (a2 * a2 * k2), 1)])
    return OdeSpec(4 * a2 ** 3 * k2, tuple(roots), p1, p2)


def normalized_coefficients(spec: OdeSpec) -> list[list[Fraction]]:
    """Coefficient lists of P0, P1, P2 scaled so the linear coefficient of P0 is 1."""
    scale = spec.p0.coeffs[1] if len(spec.p0.coeffs) > 1 else Fraction(0)
    if scale == 0:
        raise ValueError("P0 has no linear term")
    return [[c / scale for c in poly.coeffs] for poly in spec.coefficients()]


def coefficient_distance(a: OdeSpec, b: OdeSpec) -> Fraction:
    """Sup distance between the normalised coefficient vectors (zero padded)."""
    worst = Fraction(0)
    for ca, cb in zip(normalized_coefficients(a), normalized_coefficients(b)):
        width = max(len(ca), len(cb))
        ca, cb = ca + [Fraction(0)] * (width - len(ca)), cb + [Fraction(0)] * (width - len(cb))
        worst = max([worst] + [abs(x - y) for x, y in zip(ca, cb)])
    return worst


def l4_apply(f: PseudoPeriodicSample, alpha: float, h: float) -> np.ndarray:
    """Samples of ``f'' - h^2 alpha^-2 sin^2(alpha psi) f`` by spectral differentiation."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    band = spectral.bandwidth(f.periodic_part())
    if band > 0 and f.n / band < 16:
        raise GridTooCoarse(f"{f.n} points for bandwidth {band}: need at least 16 per oscillation")
    psi = f.grid
    return f.derivative(2) - (h / alpha) ** 2 * np.sin(alpha * psi) ** 2 * f.values


def printed_limit_constant(n: int, parity, form: str = "gamma") -> float:
    """Constants displayed in front of the Hermite-Gaussian limits, in either printed form.

    even: ``Gamma(1/2-n)/(2^n sqrt(pi)) = (-1)^n 2^n n!/(2n)!``
    odd:  ``Gamma(-1/2-n)/(2^{n+1} sqrt(pi)) = (-1)^{n+1} 2^{n+1} (n+1)!/(2n+2)!``
    """
    parity = Parity.parse(parity)
    m = n if parity is Parity.EVEN else n + 1
    if form == "gamma":
        return math.gamma(0.5 - m) / (2 ** m * math.sqrt(math.pi))
    if form == "factorial":
        return (-1) ** m * 2 ** m * math.factorial(m) / math.factorial(2 * m)
    raise ValueError("form must be 'gamma' or 'factorial'")


def limit_target(n: int, parity, h: float, psi, normalization: str = "matched"):
    """Hermite-Gaussian limit of the normalised Mathieu ratios.

    ``matched`` (default) fixes the constant so the target has the same
    normalisation as the ratio: value 1 at psi=0 (even) or slope 1 in psi at 0
    (odd).  ``printed`` uses :func:`printed_limit_constant` instead.
    """
    parity = Parity.parse(parity)
    if h <= 0:
        raise ValueError("h must be positive")
    psi = np.asarray(psi, dtype=float)
    x = math.sqrt(h) * psi
    m = 2 * n if parity is Parity.EVEN else 2 * n + 1
    shape = np.exp(-h * psi * psi / 2) * hermite(m, x)
    h0 = hermite(2 * n, 0.0)  # H_{2n}(0), also H'_{2n+1}(0) / (2(2n+1))
    if normalization == "printed":
        const = printed_limit_constant(n, parity)
    elif normalization == "matched":
        const = 1 / h0 if parity is Parity.EVEN else 1 / (2 * (2 * n + 1) * h0 * math.sqrt(h))
    else:
        raise ValueError("normalization must be 'matched' or 'printed'")
    out = const * shape
    return float(out) if out.ndim == 0 else out


def mathieu_ratio(n: int, parity, alpha: float, q: float, psi):
    """``ce_{2n}(alpha psi + pi/2)/ce_{2n}(pi/2)`` or
    ``se_{2n+2}(alpha psi + pi/2) / (d/dpsi se_{2n+2}(alpha psi + pi/2) at psi = 0)``."""
    parity = Parity.parse(parity)
    order = 2 * n if parity is Parity.EVEN else 2 * n + 2
    e = mathieu_eigenpair(parity, order, q)
    s = alpha * np.asarray(psi, dtype=float) + np.pi / 2
    den = e(np.pi / 2) if parity is Parity.EVEN else alpha * e(np.pi / 2, derivative=1)
    return e(s) / den, e


@dataclass(frozen=True)
class SweepRecord:
    alpha: float
    q: float
    n: int
    parity: str
    sup_err: float
    mu: float
    mu_defect: float
    predicted_defect: float

    FIELDS = ("alpha", "q", "n", "parity", "sup_err", "mu", "mu_defect", "predicted_defect")


def predicted_mu_defect(m: int, alpha: float) -> float:
    """Leading alpha^2 term of ``mu - (2m+1)h``, independent of h."""
    return -((2 * m + 1) ** 2 + 1) * alpha * alpha / 8


def mu_of(alpha: float, h: float, n: int, parity="even") -> float:
    """``alpha^2 (a + 2q)`` from ``a_n`` (even, ce_n) or ``b_{n+1}`` (odd, se_{n+1})."""
    parity = Parity.parse(parity)
    if alpha <= 0 or h <= 0:
        raise ValueError("alpha and h must be positive")
    q = h * h / alpha ** 4 / 4
    order = n if parity is Parity.EVEN else n + 1
    return mu_from(alpha, mathieu_eigenpair(parity, order, q).a, q)


def confluence_sweep(n_max: int, h: float, alphas: Sequence[float],
                     psi_window: tuple[float, float] = (-2.0, 2.0), grid_size: int = 201,
                     normalization: str = "matched") -> list[SweepRecord]:
    """Errors of the Mathieu ratios against their Hermite-Gaussian limits.

    Records come per (alpha, n, parity); the even ratio uses ce_{2n} (Meixner
    index 2n), the odd one se_{2n+2} (Meixner index 2n+1).
    """
    alphas = [float(a) for a in alphas]
    if any(a <= 0 for a in alphas) or any(b >= a for a, b in zip(alphas, alphas[1:])):
        raise ValueError("alphas must be positive and strictly decreasing")
    lo, hi = psi_window
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError("psi window must be a bounded interval")
    psi = np.linspace(lo, hi, grid_size)
    records = []
    for alpha in alphas:
        q = h * h / alpha ** 4 / 4
        for n in range(n_max + 1):
            for parity in (Parity.EVEN, Parity.ODD):
                ratio, e = mathieu_ratio(n, parity, alpha, q, psi)
                target = limit_target(n, parity, h, psi, normalization)
                m = 2 * n if parity is Parity.EVEN else 2 * n + 1
                mu = mu_from(alpha, e.a, q)
                records.append(SweepRecord(alpha, q, n, parity.value,
                                           float(np.max(np.abs(ratio - target))), mu,
                                           mu - (2 * m + 1) * h, predicted_mu_defect(m, alpha)))
    return records


def sweep_monotone(records: Iterable[SweepRecord]) -> dict[tuple[int, str], bool]:
    """Per (n, parity): is sup_err strictly decreasing in the order alphas were swept?"""
    series: dict[tuple[int, str], list[float]] = {}
    for r in records:
        series.setdefault((r.n, r.parity), []).append(r.sup_err)
    return {key: all(b < a for a, b in zip(errs, errs[1:])) for key, errs in series.items()}


def write_sweep_csv(records: Iterable[SweepRecord], target) -> None:
    """Write the sweep CSV to a path or an open text stream."""
    if isinstance(target, (str, Path)):
        with open(target, "w", newline="") as fh:
            write_sweep_csv(records, fh)
        return
    writer = csv.DictWriter(target, fieldnames=SweepRecord.FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in records:
        writer.writerow({k: v for k, v in asdict(r).items() if k in SweepRecord.FIELDS})


def gnuplot_script(csv_path, n_max: int, image: str = "confluence.png") -> str:
    """Log-log plot of sup_err against alpha, one curve per (n, parity)."""
    name = Path(csv_path).name
    curves = []
    for n in range(n_max + 1):
        for parity, dash in (("even", 1), ("odd", 2)):
            curves.append(f"'{name}' using (($3=={n} && strcol(4) eq '{parity}') ? $1 : 1/0):5 "
                          f"with linespoints dashtype {dash} title '{parity} n={n}'")
    return ("set datafile separator ','\n"
            "set terminal pngcairo size 900,600\n"
            f"set output '{image}'\n"
            "set logscale xy\n"
            "set xlabel 'alpha'\n"
            "set ylabel 'sup error'\n"
            "set key left top\n"
            "plot " + ", \\\n     ".join(curves) + "\n")
