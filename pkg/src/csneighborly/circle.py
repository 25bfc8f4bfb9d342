"""Exact arithmetic on the circle R / 2piZ.

Every angle produced by the constructions in this package is a rational
multiple of pi, so a :class:`CirclePoint` stores ``q`` with
``angle = pi * q`` and ``0 <= q < 2``.  All comparisons are exact; floats
appear only when coordinates are evaluated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from ._precision import PrecisionError

TWO = Fraction(2)

#: Largest exponent accepted by :func:`triple_pow`.  Python integers never
#: overflow, but 3**n grows the denominators we carry around without bound.
MAX_TRIPLE_POWER = 4096
_BELOW_TWO_PI = math.nextafter(2 * math.pi, 0)


class DomainError(ValueError):
    """Input outside the domain of a circle operation."""


def _reduce(q) -> Fraction:
    return Fraction(q) % TWO


@dataclass(frozen=True, order=True)
class CirclePoint:
    """A point ``pi * q`` of the circle, ``q`` a rational in ``[0, 2)``."""

    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", _reduce(self.q))

    @classmethod
    def from_pi(cls, num, den=1) -> "CirclePoint":
        return cls(Fraction(num, den))

    @property
    def angle(self) -> float:
        """The angle in radians as a float (display only), kept below ``2 pi``."""
        return min(float(self.q) * math.pi, _BELOW_TWO_PI)

    def __add__(self, other):
        if isinstance(other, CirclePoint):
            return CirclePoint(self.q + other.q)
        return CirclePoint(self.q + Fraction(other))

    def __neg__(self):
        return CirclePoint(-self.q)

    def __repr__(self):
        return f"CirclePoint(pi*{self.q})"


@dataclass(frozen=True)
class Arc:
    """Arc starting at ``start`` of length ``pi * length`` (counterclockwise)."""

    start: CirclePoint
    length: Fraction
    closed_start: bool = True
    closed_end: bool = False

    def __post_init__(self):
        length = Fraction(self.length)
        if not 0 < length <= 2:
            raise DomainError(f"arc length must lie in (0, 2] (units of pi), got {length}")
        object.__setattr__(self, "length", length)

    def contains(self, p: CirclePoint) -> bool:
        return in_arc(p, self)


def normalize(t) -> CirclePoint:
    """Reduce a real angle in radians to a :class:`CirclePoint`.

    Rational inputs are read as radians too; use :meth:`CirclePoint.from_pi`
    for exact multiples of pi.
    """
    t = float(t)
    if not math.isfinite(t):
        raise DomainError(f"angle must be finite, got {t}")
    return CirclePoint(Fraction(t / math.pi))


def normalize_pi(q) -> CirclePoint:
    """Exact normalization of ``pi * q`` for rational ``q``."""
    if not isinstance(q, Rational):
        raise DomainError(f"exact normalization needs a rational multiple of pi, got {q!r}")
    return CirclePoint(Fraction(q))


def antipode(p: CirclePoint) -> CirclePoint:
    return CirclePoint(p.q + 1)


def triple_pow(p: CirclePoint, n: int) -> CirclePoint:
    """``3**n * p`` reduced once, exactly."""
    if n < 0:
        raise DomainError("exponent must be non-negative")
    if n > MAX_TRIPLE_POWER:
        raise PrecisionError(f"triple_pow exponent {n} exceeds MAX_TRIPLE_POWER={MAX_TRIPLE_POWER}")
    return CirclePoint(p.q * 3**n)


def multiply(p: CirclePoint, n: int) -> CirclePoint:
    """``n * p`` for an integer ``n``."""
    return CirclePoint(p.q * n)


def in_arc(p: CirclePoint, a: Arc) -> bool:
    d = (p.q - a.start.q) % TWO
    if d == 0:
        return a.closed_start or (a.length == 2 and a.closed_end)
    if d < a.length:
        return True
    return d == a.length and a.closed_end


def circular_distance(p: CirclePoint, r: CirclePoint) -> Fraction:
    """Length of the shorter arc between two points, in units of pi."""
    d = (p.q - r.q) % TWO
    return min(d, TWO - d)


def are_antipodal(p: CirclePoint, r: CirclePoint) -> bool:
    return (p.q - r.q) % TWO == 1


#: The arc [pi, 3pi/2), closed on the left.
THIRD_QUADRANT = Arc(CirclePoint(Fraction(1)), Fraction(1, 2), closed_start=True, closed_end=False)
