"""Constructors for the classical equations used throughout the package."""
from __future__ import annotations

from fractions import Fraction

from .algebra import Number, OdeSpec, RationalPoly, as_rational


def algebraic_mathieu_ode(a: Number, q: Number) -> OdeSpec:
    """Mathieu equation in the variable ``x = cos(s)**2``:

    ``x(1-x) y'' + (1-2x)/2 y' + (a + 2q - 4qx)/4 y = 0``.
    """
    a, q = as_rational(a), as_rational(q)
    return OdeSpec(Fraction(-1), ((Fraction(0), 1), (Fraction(1), 1)),
                   RationalPoly([Fraction(1, 2), -1]),
                   RationalPoly([(a + 2 * q) / 4, -q]))


def oscillator_algebraic_ode(mu: Number, h: Number) -> OdeSpec:
    """Harmonic oscillator ``y'' + (mu - h^2 x^2) y = 0`` after ``t = x**2``:

    ``t y'' + y'/2 + (mu - h^2 t)/4 y = 0``.
    """
    mu, h = as_rational(mu), as_rational(h)
    return OdeSpec(Fraction(1), ((Fraction(0), 1),), RationalPoly([Fraction(1, 2)]),
                   RationalPoly([mu / 4, -h * h / 4]))


def lame_ode(a: Number, mu: Number, l: Number | None = None, casimir: Number | None = None) -> OdeSpec:
    """Algebraic Lame equation with singular points 0, 1, a, multiplied through by
    ``4x(x-1)(x-a)``.  Pass either ``l`` or ``casimir = l(l+1)``."""
    a, mu = as_rational(a), as_rational(mu)
    if casimir is None:
        if l is None:
            raise TypeError("lame_ode needs l or casimir")
        l = as_rational(l)
        casimir = l * (l + 1)
    casimir = as_rational(casimir)
    x = RationalPoly([0, 1])
    p1 = ((x - 1) * (x - a) + x * (x - a) + x * (x - 1)).scale(2)
    return OdeSpec(Fraction(4), ((Fraction(0), 1), (Fraction(1), 1), (a, 1)), p1,
                   RationalPoly([mu, -casimir]))
