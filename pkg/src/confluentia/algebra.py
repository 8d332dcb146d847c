"""Exact rational polynomials and second-order ODEs with polynomial coefficients.

An equation ``P0(z) y'' + P1(z) y' + P2(z) y = 0`` is stored as an
:class:`OdeSpec`.  ``P0`` is always kept in factored form (leading coefficient
times rational roots with multiplicities) so that singular points are known
exactly; ``P1`` and ``P2`` are dense :class:`RationalPoly` objects.

All arithmetic uses :class:`fractions.Fraction`, so every classification built
on top of this module is exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .exceptions import CommonFactor, ConfluentiaError, MalformedInput, ZeroLeading

Rational = Fraction
Number = Union[int, Fraction, str]


def as_rational(value: Number) -> Fraction:
    """Coerce ``value`` to an exact Fraction; floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"exact rational required, got {value!r}")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


class Infinity:
    """The point at infinity of the projective line (singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()
Point = Union[Fraction, Infinity]


def point_label(point: Point) -> str:
    return "inf" if point is INF else str(point)


def parse_point(text: str) -> Point:
    if text.strip().lower() in {"inf", "infinity", "oo"}:
        return INF
    return Fraction(text)


class RationalPoly:
    """Dense univariate polynomial over Q, coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def from_roots(cls, leading: Number, roots: Iterable[tuple[Number, int]]) -> "RationalPoly":
        poly = cls([leading])
        for root, mult in roots:
            linear = cls([-as_rational(root), 1])
            for _ in range(mult):
                poly = poly * linear
        return poly

    @classmethod
    def monomial(cls, degree: int, coeff: Number = 1) -> "RationalPoly":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __repr__(self):
        return f"RationalPoly([{', '.join(str(c) for c in self.coeffs)}])"

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RationalPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RationalPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        if self.is_zero() or other.is_zero():
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def scale(self, factor: Number) -> "RationalPoly":
        factor = as_rational(factor)
        return RationalPoly(factor * c for c in self.coeffs)

    def __divmod__(self, other):
        other = _lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - other.degree, 1)
        lead = other.leading
        while len(rem) - 1 >= other.degree and any(rem):
            shift = len(rem) - 1 - other.degree
            factor = rem[-1] / lead
            quot[shift] = factor
            for i, c in enumerate(other.coeffs):
                rem[shift + i] -= factor * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return RationalPoly(quot), RationalPoly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "RationalPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading)

    def derivative(self) -> "RationalPoly":
        return RationalPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def compose_linear(self, a: Number, b: Number) -> "RationalPoly":
        """Return ``p(a*u + b)`` as a polynomial in ``u``."""
        lin = RationalPoly([b, a])
        acc = RationalPoly()
        for c in reversed(self.coeffs):
            acc = acc * lin + RationalPoly([c])
        return acc

    def order_at(self, point: Fraction) -> float:
        """Vanishing order at a finite point; ``inf`` for the zero polynomial."""
        if self.is_zero():
            return float("inf")
        shifted = self.compose_linear(1, point).coeffs
        return next(k for k, c in enumerate(shifted) if c != 0)

    def lowest_coefficient_at(self, point: Fraction) -> Fraction:
        """First nonzero Taylor coefficient at ``point``."""
        shifted = self.compose_linear(1, point).coeffs
        return next(c for c in shifted if c != 0)

    def reversed_poly(self, degree: int | None = None) -> "RationalPoly":
        """``w**degree * p(1/w)``; ``degree`` defaults to ``self.degree``."""
        if self.is_zero():
            return RationalPoly()
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        return RationalPoly([0] * (d - self.degree) + list(reversed(self.coeffs)))

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def _lift(value) -> RationalPoly:
    if isinstance(value, RationalPoly):
        return value
    return RationalPoly([value])


def poly_gcd(*polys: RationalPoly) -> RationalPoly:
    """Monic gcd of the given polynomials (zero polynomials are ignored)."""
    g = RationalPoly()
    for p in polys:
        a, b = g, p
        while not b.is_zero():
            a, b = b, a % b
        g = a
    return g.monic()


@dataclass(frozen=True)
class OdeSpec:
    """``P0 y'' + P1 y' + P2 y = 0`` with P0 given in factored form."""

    p0_leading: Fraction
    p0_roots: tuple[tuple[Fraction, int], ...]
    p1: RationalPoly
    p2: RationalPoly
    _p0: RationalPoly = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "p0_leading", as_rational(self.p0_leading))
        roots = tuple((as_rational(r), int(m)) for r, m in self.p0_roots)
        object.__setattr__(self, "p0_roots", tuple(sorted(roots)))
        if not isinstance(self.p1, RationalPoly):
            object.__setattr__(self, "p1", RationalPoly(self.p1))
        if not isinstance(self.p2, RationalPoly):
            object.__setattr__(self, "p2", RationalPoly(self.p2))
        object.__setattr__(self, "_p0", RationalPoly.from_roots(self.p0_leading, self.p0_roots))

    @property
    def p0(self) -> RationalPoly:
        return self._p0

    @property
    def finite_singularities(self) -> list[Fraction]:
        return [r for r, _ in self.p0_roots]

    def multiplicity(self, point: Fraction) -> int:
        return dict(self.p0_roots).get(as_rational(point), 0)

    def coefficients(self) -> tuple[RationalPoly, RationalPoly, RationalPoly]:
        return self.p0, self.p1, self.p2

    def scaled(self, factor: Number) -> "OdeSpec":
        factor = as_rational(factor)
        return OdeSpec(self.p0_leading * factor, self.p0_roots, self.p1.scale(factor), self.p2.scale(factor))

    def to_dict(self) -> dict:
        return {
            "p0": {
                "leading": str(self.p0_leading),
                "roots": [[str(r), m] for r, m in self.p0_roots],
            },
            "p1": self.p1.to_strings(),
            "p2": self.p2.to_strings(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "OdeSpec":
        try:
            p0 = data["p0"]
            roots = [(Fraction(str(r)), int(m)) for r, m in p0["roots"]]
            return cls(
                Fraction(str(p0["leading"])),
                tuple(roots),
                RationalPoly(Fraction(str(c)) for c in data["p1"]),
                RationalPoly(Fraction(str(c)) for c in data["p2"]),
            )
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"malformed ODE description: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "OdeSpec":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"malformed ODE JSON: {exc}") from exc
        return cls.from_dict(data)


def make_ode(p0_leading: Number, roots: Sequence[tuple[Number, int]],
             p1: Sequence[Number], p2: Sequence[Number]) -> OdeSpec:
    """Convenience constructor accepting ints, Fractions or ``"num/den"`` strings."""
    return OdeSpec(as_rational(p0_leading), tuple((as_rational(r), m) for r, m in roots),
                   RationalPoly(p1), RationalPoly(p2))


def validate(spec: OdeSpec) -> OdeSpec:
    """Check the OdeSpec invariants and return the spec unchanged.

    Raises ZeroLeading if P0 vanishes identically and CommonFactor if the three
    coefficient polynomials share a nonconstant factor.
    """
    if spec.p0_leading == 0:
        raise ZeroLeading("P0 is identically zero")
    roots = [r for r, _ in spec.p0_roots]
    if len(set(roots)) != len(roots):
        raise ConfluentiaError("P0 roots must be listed without repetition")
    if any(m <= 0 for _, m in spec.p0_roots):
        raise ConfluentiaError("P0 root multiplicities must be positive")
    g = poly_gcd(spec.p0, spec.p1, spec.p2)
    if g.degree > 0:
        raise CommonFactor(f"P0, P1, P2 share the factor {g!r}")
    return spec


def _strip_w_power(q0_leading, q0_roots, q1: RationalPoly, q2: RationalPoly):
    zero_mult = dict(q0_roots).get(Fraction(0), 0)
    orders = [zero_mult]
    orders += [p.order_at(Fraction(0)) for p in (q1, q2) if not p.is_zero()]
    k = min(orders)
    if k == 0:
        return q0_leading, q0_roots, q1, q2
    roots = [(r, m - k if r == 0 else m) for r, m in q0_roots]
    roots = [(r, m) for r, m in roots if m > 0]
    return (q0_leading, tuple(roots), RationalPoly(q1.coeffs[k:]), RationalPoly(q2.coeffs[k:]))


def invert_at_infinity(spec: OdeSpec) -> OdeSpec:
    """Chart change ``z = 1/w``; the result's behaviour at w=0 is the input's at z=inf.

    With ``dy/dz = -w^2 dY/dw`` and ``d2y/dz2 = w^4 Y'' + 2 w^3 Y'`` the equation
    becomes ``w^4 P0(1/w) Y'' + (2 w^3 P0(1/w) - w^2 P1(1/w)) Y' + P2(1/w) Y = 0``;
    denominators are cleared with ``w^N`` and the common power of ``w`` removed.
    """
    d0 = spec.p0.degree
    degrees = [d0] + [p.degree for p in (spec.p1, spec.p2) if not p.is_zero()]
    n = max(degrees)

    leading = spec.p0_leading
    roots: list[tuple[Fraction, int]] = []
    for r, m in spec.p0_roots:
        if r != 0:
            leading *= (-r) ** m
            roots.append((1 / r, m))
    roots.append((Fraction(0), 4 + n - d0))

    p0_rev = spec.p0.reversed_poly(n)  # w^N P0(1/w)
    q1 = p0_rev * RationalPoly.monomial(3, 2)
    if not spec.p1.is_zero():
        q1 = q1 - spec.p1.reversed_poly(n) * RationalPoly.monomial(2)
    q2 = spec.p2.reversed_poly(n) if not spec.p2.is_zero() else RationalPoly()

    leading, roots, q1, q2 = _strip_w_power(leading, tuple(roots), q1, q2)
    return OdeSpec(leading, roots, q1, q2)


def affine_transform(spec: OdeSpec, c: Number, d: Number) -> OdeSpec:
    """Rewrite the equation in the variable ``u = c*z + d`` (``c != 0``)."""
    c, d = as_rational(c), as_rational(d)
    if c == 0:
        raise ValueError("affine scale must be nonzero")
    inv_a, inv_b = 1 / c, -d / c  # z = inv_a * u + inv_b
    d0 = spec.p0.degree
    leading = spec.p0_leading * c ** 2 / c ** d0
    roots = tuple((c * r + d, m) for r, m in spec.p0_roots)
    p1 = spec.p1.compose_linear(inv_a, inv_b).scale(c)
    p2 = spec.p2.compose_linear(inv_a, inv_b)
    return OdeSpec(leading, roots, p1, p2)


@dataclass(frozen=True)
class PuiseuxLeading:
    """Leading exponents of the two branches ``D_m`` of the symbolic indicial equation.

    For a finite point the exponent ``e`` means ``D ~ (z - z_k)**e``; at
    infinity it means ``D ~ z**e``.  A branch that vanishes identically
    (which happens exactly when ``P2 == 0``) is reported as ``None``.
    """

    point: Point
    branch_exponents: tuple[Fraction | None, Fraction | None]
    singular: bool = True

    @property
    def mus(self) -> tuple[Fraction | None, Fraction | None]:
        """The ``mu`` values entering the s-rank (``-e`` finite, ``e + 2`` at infinity)."""
        if self.point is INF:
            return tuple(None if e is None else e + 2 for e in self.branch_exponents)
        return tuple(None if e is None else -e for e in self.branch_exponents)


def newton_branch_orders(o0, o1, o2) -> tuple[Fraction | None, Fraction | None]:
    """Branch orders ``d`` (``D ~ t**d``) from vanishing orders of P0, P1, P2.

    Lower Newton polygon of the points ``(j, ord P_{2-j})``; each hull edge of
    slope ``s`` and width ``w`` carries ``w`` branches with ``d = -s``.
    """
    inf = float("inf")
    v = {0: o2, 1: o1, 2: o0}
    if o0 == inf:
        raise ZeroLeading("P0 vanishes identically")
    if o2 == inf:
        if o1 == inf:
            return (None, None)
        return (None, -Fraction(o0 - o1))
    if o1 != inf and Fraction(2 * v[1]) < v[0] + v[2]:
        return (-Fraction(v[1] - v[0]), -Fraction(v[2] - v[1]))
    d = -Fraction(v[2] - v[0], 2)
    return (d, d)


def newton_leading_exponents(spec: OdeSpec, point: Point) -> PuiseuxLeading:
    """Leading exponents of the two Puiseux branches at ``point``.

    At infinity the equation is moved to ``w = 0`` with :func:`invert_at_infinity`
    and the exponents are translated back to the ``z`` variable.
    """
    if point is INF:
        inv = invert_at_infinity(spec)
        local = newton_leading_exponents(inv, Fraction(0))
        exps = tuple(None if d is None else -d - 2 for d in local.branch_exponents)
        return PuiseuxLeading(INF, exps, local.singular)
    point = as_rational(point)
    o0 = spec.multiplicity(point)
    o1 = spec.p1.order_at(point)
    o2 = spec.p2.order_at(point)
    orders = newton_branch_orders(o0, o1, o2)
    return PuiseuxLeading(point, orders, singular=o0 > 0)
