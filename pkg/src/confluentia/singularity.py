"""Classification of singular points: regularity, s-rank, s-multisymbol, confluence type."""
from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import (INF, OdeSpec, Point, as_rational, invert_at_infinity,
                      newton_leading_exponents, point_label, validate)
from .exceptions import (InconsistentSymbols, IrrationalExponents, IrregularPoint,
                         NotASingularity)

HALF = Fraction(1, 2)


def _local(spec: OdeSpec, point: Point) -> tuple[OdeSpec, Fraction]:
    """Move ``point`` to a finite chart; infinity becomes w = 0."""
    if point is INF:
        return invert_at_infinity(spec), Fraction(0)
    return spec, as_rational(point)


def is_singular(spec: OdeSpec, point: Point) -> bool:
    """A point is singular when it is a zero of P0 (after the chart change for infinity).

    Common powers of ``w`` are removed by the chart change, so infinity is an
    ordinary point exactly when ``P1/P0`` and ``P2/P0`` are analytic there in
    the ``w`` chart; e.g. ``z**2 y'' + 2 z y' = 0`` is ordinary at infinity.
    """
    local, z = _local(spec, point)
    return local.multiplicity(z) > 0


def is_regular(spec: OdeSpec, point: Point) -> bool:
    """Fuchs test: ``ord P1 >= ord P0 - 1`` and ``ord P2 >= ord P0 - 2``."""
    local, z = _local(spec, point)
    m = local.multiplicity(z)
    if m == 0:
        raise NotASingularity(f"{point_label(point)} is an ordinary point")
    return local.p1.order_at(z) >= m - 1 and local.p2.order_at(z) >= m - 2


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    num, den = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if num * num == x.numerator and den * den == x.denominator:
        return Fraction(num, den)
    return None


def indicial_coefficients(spec: OdeSpec, point: Point) -> tuple[Fraction, Fraction]:
    """``(a0, b0)`` with ``a0 = lim (z-z_k) P1/P0`` and ``b0 = lim (z-z_k)^2 P2/P0``."""
    local, z = _local(spec, point)
    m = local.multiplicity(z)
    p0_low = local.p0.lowest_coefficient_at(z)
    a0 = b0 = Fraction(0)
    if not local.p1.is_zero() and local.p1.order_at(z) == m - 1:
        a0 = local.p1.lowest_coefficient_at(z) / p0_low
    if not local.p2.is_zero() and local.p2.order_at(z) == m - 2:
        b0 = local.p2.lowest_coefficient_at(z) / p0_low
    return a0, b0


def frobenius_exponents(spec: OdeSpec, point: Point) -> tuple[Fraction, Fraction]:
    """Roots of ``rho (rho - 1) + a0 rho + b0 = 0`` at a regular singular point.

    At infinity the exponents refer to the local variable ``w = 1/z``.
    """
    if not is_regular(spec, point):
        raise IrregularPoint(f"{point_label(point)} is an irregular singular point")
    a0, b0 = indicial_coefficients(spec, point)
    p = a0 - 1
    disc = p * p - 4 * b0
    root = _rational_sqrt(disc)
    if root is None:
        raise IrrationalExponents(f"indicial discriminant {disc} is not a rational square", disc)
    return tuple(sorted(((-p - root) / 2, (-p + root) / 2)))


@dataclass(frozen=True)
class SingularPoint:
    location: Point
    regular: bool
    elementary: bool | None
    srank: Fraction
    ramified: bool | None
    frobenius_exponents: tuple[Fraction, Fraction] | None = None
    possibly_apparent: bool = False
    irrational_exponents: bool = False

    def to_dict(self) -> dict:
        return {
            "location": point_label(self.location),
            "regular": self.regular,
            "elementary": self.elementary,
            "srank": str(self.srank),
            "ramified": self.ramified,
            "exponents": None if self.frobenius_exponents is None
            else [str(e) for e in self.frobenius_exponents],
        }


def classify_point(spec: OdeSpec, point: Point) -> SingularPoint:
    """Classify one singular point.

    Regular points get s-rank 1/2 when the exponent difference is exactly 1/2
    (elementary) and 1 otherwise.  Irregular points get the largest ``mu`` of the
    two Puiseux branches; half-integer values mean ramified.
    """
    if is_regular(spec, point):
        try:
            exps = frobenius_exponents(spec, point)
        except IrrationalExponents:
            return SingularPoint(point, True, False, Fraction(1), None, irrational_exponents=True)
        elementary = abs(exps[1] - exps[0]) == HALF
        return SingularPoint(
            point, True, elementary, HALF if elementary else Fraction(1), None, exps,
            possibly_apparent=exps == (Fraction(0), Fraction(1)),
        )
    mus = [m for m in newton_leading_exponents(spec, point).mus if m is not None]
    srank = max(mus)
    return SingularPoint(point, False, None, srank, srank.denominator == 2)


@dataclass(frozen=True, order=True)
class SMultisymbol:
    """Sorted multiset of s-ranks."""

    ranks: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(sorted(as_rational(r) for r in self.ranks)))

    @classmethod
    def of(cls, *ranks) -> "SMultisymbol":
        return cls(tuple(Fraction(r) if isinstance(r, str) else r for r in ranks))

    def __len__(self):
        return len(self.ranks)

    def __iter__(self):
        return iter(self.ranks)

    def __str__(self):
        return "{" + ";".join(str(r) for r in self.ranks) + "}"

    def to_strings(self) -> list[str]:
        return [str(r) for r in self.ranks]


@dataclass(frozen=True)
class SingularityReport:
    points: tuple[SingularPoint, ...]
    smultisymbol: SMultisymbol

    def to_dict(self) -> dict:
        return {
            "points": [p.to_dict() for p in self.points],
            "smultisymbol": self.smultisymbol.to_strings(),
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def classify(spec: OdeSpec) -> SingularityReport:
    """Validate ``spec`` and classify every finite root of P0 plus infinity if singular."""
    validate(spec)
    points = [classify_point(spec, r) for r in spec.finite_singularities]
    if is_singular(spec, INF):
        points.append(classify_point(spec, INF))
    return SingularityReport(tuple(points), SMultisymbol(tuple(p.srank for p in points)))


def smultisymbol(spec: OdeSpec) -> SMultisymbol:
    return classify(spec).smultisymbol


class ConfluenceKind(str, Enum):
    STRONG = "strong"
    WEAK = "weak"


@dataclass(frozen=True)
class ConfluenceVerdict:
    before: SMultisymbol
    after: SMultisymbol
    merged_ranks: tuple[Fraction, Fraction]
    new_rank: Fraction
    kind: ConfluenceKind = field(default=ConfluenceKind.WEAK)


def confluence_type(before: SMultisymbol, merged: Sequence, after: SMultisymbol) -> ConfluenceVerdict:
    """Type the coalescence of two singular points with ranks ``merged``.

    ``before`` minus ``merged`` plus exactly one new rank must equal ``after``;
    the new rank must exceed both merged ranks.  The confluence is strong when
    the new rank equals their sum.
    """
    merged = tuple(as_rational(Fraction(m) if isinstance(m, str) else m) for m in merged)
    if len(merged) != 2:
        raise InconsistentSymbols("exactly two ranks merge in a confluence")
    if len(after) != len(before) - 1:
        raise InconsistentSymbols("a confluence removes exactly one singular point")
    remaining = Counter(before.ranks)
    remaining.subtract(Counter(merged))
    if any(v < 0 for v in remaining.values()):
        raise InconsistentSymbols(f"{merged} is not contained in {before}")
    extra = Counter(after.ranks)
    extra.subtract(+remaining)
    if any(v < 0 for v in extra.values()) or sum(extra.values()) != 1:
        raise InconsistentSymbols(f"{after} is not {before} with {merged} replaced by one rank")
    new_rank = next(r for r, v in extra.items() if v == 1)
    if new_rank <= max(merged):
        raise InconsistentSymbols(f"new rank {new_rank} does not exceed max{merged}")
    kind = ConfluenceKind.STRONG if new_rank == sum(merged) else ConfluenceKind.WEAK
    return ConfluenceVerdict(before, after, merged, new_rank, kind)


def confluence_chain(symbols: Iterable[SMultisymbol], merges: Iterable[Sequence]) -> list[ConfluenceVerdict]:
    """Verdicts for successive confluences ``symbols[i] -> symbols[i+1]``."""
    symbols = list(symbols)
    return [confluence_type(a, m, b) for a, b, m in zip(symbols, symbols[1:], merges)]
