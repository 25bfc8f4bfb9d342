"""Real trigonometric polynomials and their self-inversive complex lift.

``f(t) = c + sum_j a_j cos(j t) + b_j sin(j t)`` of degree ``d`` becomes

    P(z) = z^d (c + sum_j a_j (z^j + z^-j)/2 + b_j (z^j - z^-j)/(2i)),

whose coefficient of ``z^(d+j)`` is ``(a_j - i b_j)/2`` and of ``z^(d-j)`` is
``(a_j + i b_j)/2``.  Coefficients are kept as separate real and imaginary
sequences so exact (Fraction) inputs stay exact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ._precision import Precision, get_precision
from .circle import CirclePoint, multiply
from .curves import CurveSpec


@dataclass(frozen=True)
class TrigPoly:
    c: object
    a: tuple  # a[j-1] multiplies cos(j t)
    b: tuple  # b[j-1] multiplies sin(j t)

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise ValueError("cosine and sine coefficient lists must have equal length")
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))

    @property
    def degree(self) -> int:
        return len(self.a)

    @classmethod
    def from_terms(cls, c=0, cos: dict | None = None, sin: dict | None = None) -> "TrigPoly":
        """Build from ``{frequency: coefficient}`` dictionaries; repeated frequencies add."""
        cos = cos or {}
        sin = sin or {}
        d = max([0, *cos, *sin])
        zero = type(c)(0) if not isinstance(c, int) else 0
        a = [zero] * d
        b = [zero] * d
        for j, v in cos.items():
            a[j - 1] = a[j - 1] + v
        for j, v in sin.items():
            b[j - 1] = b[j - 1] + v
        return cls(c, tuple(a), tuple(b))


@dataclass(frozen=True)
class ComplexPoly:
    """Coefficients of ``z^0 .. z^n`` as real and imaginary parts."""

    real: tuple
    imag: tuple

    @property
    def degree_bound(self) -> int:
        return len(self.real) - 1

    def coefficient(self, j: int) -> complex:
        return complex(float(self.real[j]), float(self.imag[j]))

    def is_self_inversive(self, tol=0) -> bool:
        n = len(self.real) - 1
        for j in range(n + 1):
            if abs(self.real[j] - self.real[n - j]) > tol or abs(self.imag[j] + self.imag[n - j]) > tol:
                return False
        return True

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for j in range(len(self.real) - 1, -1, -1):
            acc = acc * z + self.coefficient(j)
        return acc


def eval_trig(f: TrigPoly, t, precision: Precision | None = None):
    """Value of ``f`` at ``t``.

    A :class:`CirclePoint` is evaluated in the given precision with each
    ``j t`` formed exactly; a float ``t`` (radians) uses ``math``.
    """
    if isinstance(t, CirclePoint):
        precision = precision or get_precision()
        acc = precision.scalar(f.c)
        for j in range(1, f.degree + 1):
            aj, bj = f.a[j - 1], f.b[j - 1]
            if aj == 0 and bj == 0:
                continue
            q = multiply(t, j).q
            acc = acc + precision.scalar(aj) * precision.cospi(q) + precision.scalar(bj) * precision.sinpi(q)
        return acc
    acc = float(f.c)
    for j in range(1, f.degree + 1):
        acc += float(f.a[j - 1]) * math.cos(j * t) + float(f.b[j - 1]) * math.sin(j * t)
    return acc


def lift(f: TrigPoly) -> ComplexPoly:
    """The self-inversive polynomial of degree ``<= 2d`` attached to ``f``."""
    d = f.degree
    zero = f.c * 0
    real = [zero] * (2 * d + 1)
    imag = [zero] * (2 * d + 1)
    real[d] = f.c
    for j in range(1, d + 1):
        aj, bj = f.a[j - 1], f.b[j - 1]
        real[d + j] = aj / 2
        imag[d + j] = -bj / 2
        real[d - j] = aj / 2
        imag[d - j] = bj / 2
    out = ComplexPoly(tuple(real), tuple(imag))
    exact = all(isinstance(x, (int, Fraction)) for x in real + imag)
    if not out.is_self_inversive(0 if exact else 1e-15):  # pragma: no cover - algebraic identity
        raise AssertionError("lift produced a polynomial that is not self-inversive")
    return out


def eval_lift_on_circle(P: ComplexPoly, t: float) -> complex:
    return P(cmath.exp(1j * t))


def count_roots_on_circle(f: TrigPoly, grid: int, tol: float | None = None) -> int:
    """Sign changes of ``f`` around a uniform cyclic grid (a lower bound on its roots).

    Samples with ``|f| <= tol`` are skipped, so a crossing exactly at a grid
    node still counts once.
    """
    if grid < 4 * max(f.degree, 1):
        raise ValueError(f"grid must be >= 4d = {4 * f.degree}")
    if tol is None:
        scale = max([abs(float(f.c))] + [abs(float(x)) for x in f.a + f.b] + [1e-300])
        tol = 1e-12 * scale
    signs = []
    for i in range(grid):
        v = eval_trig(f, 2 * math.pi * i / grid)
        if abs(v) > tol:
            signs.append(v > 0)
    if not signs:
        return 0
    return sum(signs[i] != signs[i - 1] for i in range(len(signs))) if len(signs) > 1 else 0


def pullback(spec: CurveSpec, functional: Sequence, offset=0) -> TrigPoly:
    """The trigonometric polynomial ``t -> <functional, curve(t)> - offset``."""
    if len(functional) != spec.ambient_dim:
        raise ValueError("functional length must equal the curve's ambient dimension")
    cos: dict[int, object] = {}
    sin: dict[int, object] = {}
    for col, n in enumerate(spec.frequencies):
        cos[n] = cos.get(n, 0) + functional[2 * col]
        sin[n] = sin.get(n, 0) + functional[2 * col + 1]
    return TrigPoly.from_terms(-offset, cos, sin)
