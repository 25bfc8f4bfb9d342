"""Finite point sets on the circle used as curve parameters.

Constructions:

* :func:`build_A` -- ``2(3^m - 1)`` equally spaced points
* :func:`build_A_clustered` -- each of those replaced by ``s`` nearby points
* :func:`half_set` -- the points (or clusters) with centre in ``[0, pi)``
* :func:`build_V` -- two antipodal points per member of a set family, placed
  by the ternary digit recursion :func:`binary_seq` and nudged by
  :func:`epsilon_of`
* :func:`build_V_clustered` -- clustered version of :func:`build_V`

Every angle is an exact rational multiple of pi.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .circle import (
    THIRD_QUADRANT,
    CirclePoint,
    DomainError,
    antipode,
    are_antipodal,
    in_arc,
    triple_pow,
)


class ConstructionError(RuntimeError):
    """A construction failed one of its exact postconditions."""


@dataclass(frozen=True)
class Provenance:
    kind: str  # "grid" | "family"
    index: int  # grid index j (1-based) or member bitmask
    bit: int | None = None  # the bit a of t(I, a)
    member: int = 0  # position inside a cluster

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "index": self.index, "member": self.member}
        if self.bit is not None:
            d["bit"] = self.bit
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Provenance":
        return cls(d["kind"], int(d["index"]), d.get("bit"), int(d.get("member", 0)))


@dataclass(frozen=True)
class SeedPoint:
    point: CirclePoint
    cluster_id: int
    provenance: Provenance
    center: CirclePoint  # unperturbed cluster centre


@dataclass(frozen=True)
class SeedSet:
    points: tuple[SeedPoint, ...]
    m: int
    s: int = 1
    symmetric: bool = False
    label: str = ""
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {}
        for i, sp in enumerate(self.points):
            if sp.point.q in index:
                raise ConstructionError(f"duplicate seed angle pi*{sp.point.q}")
            index[sp.point.q] = i
        object.__setattr__(self, "_index", index)
        if self.symmetric:
            for sp in self.points:
                if antipode(sp.point).q not in index:
                    raise ConstructionError(f"seed set marked symmetric but pi*{sp.point.q} has no antipode")

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    @property
    def angles(self) -> list[CirclePoint]:
        return [sp.point for sp in self.points]

    @property
    def cluster_ids(self) -> list[int]:
        return [sp.cluster_id for sp in self.points]

    def index_of(self, p: CirclePoint) -> int | None:
        return self._index.get(p.q)

    def antipode_index(self, i: int) -> int | None:
        return self._index.get(antipode(self.points[i].point).q)

    def opposite_clusters(self) -> dict[int, int]:
        """Map each cluster id to the cluster holding its antipodes."""
        opp = {}
        for i, sp in enumerate(self.points):
            j = self.antipode_index(i)
            if j is not None:
                opp[sp.cluster_id] = self.points[j].cluster_id
        return opp

    def clusters(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, sp in enumerate(self.points):
            out.setdefault(sp.cluster_id, []).append(i)
        return out

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "s": self.s,
            "symmetric": self.symmetric,
            "label": self.label,
            "points": [
                {
                    "num": sp.point.q.numerator,
                    "den": sp.point.q.denominator,
                    "cluster_id": sp.cluster_id,
                    "provenance": sp.provenance.to_dict(),
                    "center": [sp.center.q.numerator, sp.center.q.denominator],
                }
                for sp in self.points
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SeedSet":
        pts = []
        for p in d["points"]:
            q = Fraction(int(p["num"]), int(p["den"]))
            center = p.get("center")
            c = Fraction(int(center[0]), int(center[1])) if center else q
            pts.append(SeedPoint(CirclePoint(q), int(p["cluster_id"]),
                                 Provenance.from_dict(p["provenance"]), CirclePoint(c)))
        return cls(tuple(pts), int(d["m"]), int(d.get("s", 1)), bool(d.get("symmetric", False)),
                   d.get("label", ""))


# -- equally spaced seeds --------------------------------------------------


def _cluster_offsets(s: int, width: Fraction) -> list[Fraction]:
    # s offsets strictly inside (-width/2, width/2), symmetric about 0
    return [width * (Fraction(j, s + 1) - Fraction(1, 2)) for j in range(1, s + 1)]


def build_A(m: int) -> SeedSet:
    """``{pi (j-1) / (3^m - 1) : j = 1..2(3^m - 1)}``."""
    if m < 1:
        raise DomainError("build_A needs m >= 1")
    base = 3**m - 1
    pts = []
    for j in range(1, 2 * base + 1):
        p = CirclePoint(Fraction(j - 1, base))
        pts.append(SeedPoint(p, j - 1, Provenance("grid", j), p))
    return SeedSet(tuple(pts), m, 1, True, f"A_{m}")


def build_A_clustered(m: int, s: int) -> SeedSet:
    """Replace every point of ``A_m`` by ``s`` points within an arc of length ``10^-m``.

    Offsets are rational multiples of pi spanning less than ``pi/4 * 10^-m``
    radians, centred on the grid point, identical for every cluster, so
    opposite clusters are exact antipodes.
    """
    if m < 2 or s < 2:
        raise DomainError("build_A_clustered needs m >= 2 and s >= 2")
    base = 3**m - 1
    offsets = _cluster_offsets(s, Fraction(1, 4 * 10**m))
    pts = []
    for j in range(1, 2 * base + 1):
        center = CirclePoint(Fraction(j - 1, base))
        for member, off in enumerate(offsets):
            pts.append(SeedPoint(center + off, j - 1, Provenance("grid", j, member=member), center))
    return SeedSet(tuple(pts), m, s, True, f"A_{{{m},{s}}}")


def half_set(S: SeedSet) -> SeedSet:
    """Points whose cluster centre lies in ``[0, pi)``."""
    if not S.symmetric:
        raise DomainError("half_set needs a centrally symmetric seed set")
    pts = tuple(sp for sp in S.points if sp.center.q < 1)
    if 2 * len(pts) != len(S):
        raise ConstructionError("cluster centres are not split evenly by [0, pi)")
    return SeedSet(pts, S.m, S.s, False, S.label + "^+")


# -- family based seeds ----------------------------------------------------


def as_index_set(I, m: int) -> frozenset[int]:
    """Accept a bitmask (bit i-1 <-> element i) or an iterable of elements of [m]."""
    if isinstance(I, int):
        if I < 0 or I >> m:
            raise DomainError(f"bitmask {I} is not a subset of [{m}]")
        return frozenset(i + 1 for i in range(m) if I >> i & 1)
    out = frozenset(int(i) for i in I)
    if any(not 1 <= i <= m for i in out):
        raise DomainError(f"{sorted(out)} is not a subset of [{m}]")
    return out


def to_mask(I: Iterable[int]) -> int:
    mask = 0
    for i in I:
        mask |= 1 << (i - 1)
    return mask


def binary_seq(I, a: int, m: int) -> tuple[int, ...]:
    """Digits ``x_0..x_m``: ``x_0 = a`` and ``x_n = [n in I] + sum_{j<n} x_j (mod 2)``."""
    I = as_index_set(I, m)
    if a not in (0, 1):
        raise DomainError("a must be 0 or 1")
    xs = [a]
    total = a
    for n in range(1, m + 1):
        x = (total + (n in I)) % 2
        xs.append(x)
        total += x
    return tuple(xs)


def seed_angle(I, a: int, m: int) -> CirclePoint:
    """``pi * sum_j x_j / 3^j`` for the digits of :func:`binary_seq`."""
    xs = binary_seq(I, a, m)
    return CirclePoint(sum(Fraction(x, 3**j) for j, x in enumerate(xs)))


def epsilon_of(I, m: int) -> Fraction:
    """``sum_{i in I} 10^(-i-m)``."""
    return sum((Fraction(1, 10 ** (i + m)) for i in as_index_set(I, m)), Fraction(0))


def _family_masks(F, m: int) -> list[int]:
    members = getattr(F, "members", F)
    masks = [to_mask(as_index_set(I, m)) if not isinstance(I, int) else I for I in members]
    for I in masks:
        as_index_set(I, m)
    return masks


def _family_points(F, m: int):
    masks = _family_masks(F, m)
    full = (1 << m) - 1
    present = set(masks)
    if len(present) != len(masks):
        raise DomainError("family has repeated members")
    for I in masks:
        if full ^ I in present:
            raise DomainError(f"family contains the complementary pair {I:#b} / {full ^ I:#b}")
    out = []
    for r, I in enumerate(masks):
        eps = epsilon_of(I, m)
        Ic = full ^ I
        out.append((2 * r, seed_angle(I, 0, m) + eps, Provenance("family", I, 0)))
        out.append((2 * r + 1, seed_angle(Ic, 1, m) + eps, Provenance("family", Ic, 1)))
    return out


def build_V(F, m: int) -> SeedSet:
    """Two exact antipodes ``t(I,0) + pi eps_I`` and ``t(I^c,1) + pi eps_I`` per member ``I``."""
    pts = tuple(SeedPoint(p, cid, prov, p) for cid, p, prov in _family_points(F, m))
    try:
        return SeedSet(pts, m, 1, True, f"V(F,{m})")
    except ConstructionError as exc:
        raise DomainError(str(exc)) from exc


def v_cluster_width(m: int) -> Fraction:
    """Cluster arc length for :func:`build_V_clustered`, in units of pi."""
    return Fraction(1, 10 ** (2 * m + 2))


def build_V_clustered(F, m: int, s: int) -> SeedSet:
    if s < 2:
        raise DomainError("build_V_clustered needs s >= 2")
    offsets = _cluster_offsets(s, v_cluster_width(m))
    pts = []
    for cid, p, prov in _family_points(F, m):
        for member, off in enumerate(offsets):
            pts.append(SeedPoint(p + off, cid, Provenance(prov.kind, prov.index, prov.bit, member), p))
    S = SeedSet(tuple(pts), m, s, True, f"V(F,{m},{s})")
    if not check_injectivity(S, m):
        raise ConstructionError("clustered seed set violates the tripling injectivity condition")
    return S


# -- exact checks ----------------------------------------------------------


def check_injectivity(S, max_power: int) -> bool:
    """True iff ``t -> 3^n t`` is injective on ``S`` for every ``1 <= n <= max_power``."""
    pts = S.angles if isinstance(S, SeedSet) else list(S)
    for n in range(1, max_power + 1):
        images = {triple_pow(p, n).q for p in pts}
        if len(images) != len(pts):
            return False
    return True


def first_injectivity_failure(S, max_power: int):
    """``(n, i, j)`` for the first collision ``3^n t_i == 3^n t_j``, else None."""
    pts = S.angles if isinstance(S, SeedSet) else list(S)
    for n in range(1, max_power + 1):
        seen = {}
        for i, p in enumerate(pts):
            q = triple_pow(p, n).q
            if q in seen:
                return n, seen[q], i
            seen[q] = i
    return None


def small_arc_witness(S: SeedSet | None, points, m: int) -> int | None:
    """Least ``n`` in ``[1, m]`` with every ``3^n t_i`` in ``[pi, 3pi/2)``, or None."""
    pts = [p.point if isinstance(p, SeedPoint) else p for p in points]
    if S is not None:
        for p in pts:
            if S.index_of(p) is None:
                raise DomainError(f"{p} is not in the seed set")
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if are_antipodal(pts[i], pts[j]):
                raise DomainError("small_arc_witness needs points with no antipodal pair")
            if pts[i] == pts[j]:
                raise DomainError("small_arc_witness needs distinct points")
    for n in range(1, m + 1):
        if all(in_arc(triple_pow(p, n), THIRD_QUADRANT) for p in pts):
            return n
    return None
