"""Trigonometric moment curves on the circle.

Three curves are supported:

``U``   the symmetric moment curve, frequencies 1, 3, ..., 2k-1 (R^{2k})
``Phi`` the tripling curve, frequencies 1, 3, 9, ..., 3^m (R^{2(m+1)})
``Psi`` blocks ``U_k(3^j t)`` for j = 0..m (R^{2k(m+1)})

Each coordinate pair is ``(cos(n t), sin(n t))`` for an integer frequency
``n``.  The angle ``n * t`` is formed exactly on the rational
representation before any trigonometric evaluation, so coordinates that
share a frequency are bit-identical and antipodal points map to exact
negatives.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._precision import Precision, get_precision
from .circle import CirclePoint, antipode, multiply

KINDS = ("U", "Phi", "Psi")


@dataclass(frozen=True)
class CurveSpec:
    kind: str
    k: int = 0
    m: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown curve kind {self.kind!r}")
        if self.kind in ("U", "Psi") and self.k < 1:
            raise ValueError(f"{self.kind} curve needs k >= 1")
        if self.kind in ("Phi", "Psi") and self.m < 0:
            raise ValueError(f"{self.kind} curve needs m >= 0")

    @classmethod
    def U(cls, k: int) -> "CurveSpec":
        return cls("U", k=k)

    @classmethod
    def Phi(cls, m: int) -> "CurveSpec":
        return cls("Phi", m=m)

    @classmethod
    def Psi(cls, k: int, m: int) -> "CurveSpec":
        return cls("Psi", k=k, m=m)

    @property
    def frequencies(self) -> tuple[int, ...]:
        """Integer frequency of each (cos, sin) coordinate pair, in order."""
        if self.kind == "U":
            return tuple(2 * i - 1 for i in range(1, self.k + 1))
        if self.kind == "Phi":
            return tuple(3**j for j in range(self.m + 1))
        return tuple((2 * i - 1) * 3**j for j in range(self.m + 1) for i in range(1, self.k + 1))

    @property
    def ambient_dim(self) -> int:
        return 2 * len(self.frequencies)

    @property
    def distinct_frequencies(self) -> int:
        return len(set(self.frequencies))

    def describe(self) -> str:
        if self.kind == "U":
            return f"U_{self.k}"
        if self.kind == "Phi":
            return f"Phi_{self.m}"
        return f"Psi_{{{self.k},{self.m}}}"


def eval_curve(spec: CurveSpec, p: CirclePoint, precision: Precision | None = None) -> np.ndarray:
    """Coordinates of the curve at ``p`` as an array of length ``ambient_dim``."""
    return eval_many(spec, [p], precision)[0]


def eval_many(spec: CurveSpec, points, precision: Precision | None = None) -> np.ndarray:
    """Vertex matrix with one row per point."""
    precision = precision or get_precision()
    freqs = spec.frequencies
    out = precision.zeros((len(points), 2 * len(freqs)))
    for row, p in enumerate(points):
        cache = {}
        for col, n in enumerate(freqs):
            if n not in cache:
                q = multiply(p, n).q
                cache[n] = (precision.cospi(q), precision.sinpi(q))
            out[row, 2 * col], out[row, 2 * col + 1] = cache[n]
    return out


def central_symmetry_check(spec: CurveSpec, p: CirclePoint, precision: Precision | None = None,
                           tol: float = 1e-30) -> bool:
    """True iff the curve value at the antipode of ``p`` is the negated value."""
    precision = precision or get_precision()
    v = eval_many(spec, [p, antipode(p)], precision)
    residual = max(abs(x) for x in (v[0] + v[1]).reshape(-1))
    return residual <= tol


def shared_coordinate_pairs(spec: CurveSpec) -> list[tuple[int, int]]:
    """Pairs of coordinate indices that carry the same frequency."""
    seen: dict[int, int] = {}
    pairs = []
    for col, n in enumerate(spec.frequencies):
        if n in seen:
            first = seen[n]
            pairs.append((2 * first, 2 * col))
            pairs.append((2 * first + 1, 2 * col + 1))
        else:
            seen[n] = col
    return pairs
