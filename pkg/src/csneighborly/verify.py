"""Face and slab certificates for point configurations on moment curves.

A subset ``S`` of the vertices is certified as an exposed face by a
functional ``c`` with ``||c||_inf = 1``, an offset ``b`` and a margin
``delta > 0``:

    <c, v_i> = b          for i in S
    <c, v_j> <= b - delta for j not in S

found by maximizing ``delta`` with a linear program, then re-checked by
direct substitution against every vertex.  Slab certificates do the same
for two parallel hyperplanes (strict antipodality).

Outcomes are three-valued: a certificate, a :class:`Refusal` carrying the
optimal margin, or a raised :class:`~csneighborly.lp.SolverError`.  A
solver error is retried once at doubled precision.
"""

from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from ._precision import Precision, get_precision
from .circle import DomainError, are_antipodal
from .curves import CurveSpec, eval_many
from .lp import OPTIMAL, SolverError, solve_lp
from .seeds import SeedSet

logger = logging.getLogger(__name__)

DEFAULT_CAP = 10**6


class ConstructionError(RuntimeError):
    """Embedded vertices are not distinct or not centrally symmetric."""


class EnumerationCapError(ValueError):
    """An enumeration would exceed the configured number of LP instances."""


@dataclass(frozen=True)
class Tolerances:
    face: float = 1e-12  # minimum certified margin
    eq: float = 1e-10  # equality residual (times coordinate scale 1)
    rank: float = 1e-9  # relative singular value cutoff
    sym: float = 1e-30  # central symmetry residual
    sep: float = 1e-15  # minimum slab width

    def __post_init__(self):
        for name in ("face", "eq", "rank", "sym", "sep"):
            if not getattr(self, name) > 0:
                raise ValueError(f"tolerance {name} must be positive")


DEFAULT_TOLERANCES = Tolerances()


def default_tolerances(precision: Precision) -> Tolerances:
    """The fixed defaults up to 80 bits; tighter by ``2^-(bits-80)/2`` beyond."""
    if precision.bits <= 80:
        return DEFAULT_TOLERANCES
    scale = 2.0 ** (-(precision.bits - 80) / 2)
    return Tolerances(face=1e-12 * scale, eq=1e-10 * scale, rank=1e-9, sym=1e-30, sep=1e-15 * scale)


def suggested_precision(spec: CurveSpec, seeds: SeedSet) -> int:
    """Storage bits adequate for the seed set's smallest coordinate separation.

    The gap ``g`` is estimated as ``pi * (max frequency) * (min angular gap)``.
    Simplex bases on such configurations have condition numbers around
    ``g^-2`` and margins shrink like ``g``, so the pivot tolerance
    ``eps^(3/4)`` has to sit below ``g^3``: about ``4 log2(1/g)`` mantissa bits
    plus a safety allowance.
    """
    base = 64 if seeds.m <= 1 else 80
    qs = sorted(p.q for p in seeds.angles)
    if len(qs) < 2:
        return base
    gaps = [b - a for a, b in zip(qs, qs[1:])] + [qs[0] + 2 - qs[-1]]
    gap = float(min(gaps)) * math.pi * max(spec.frequencies)
    if gap >= 1:
        return base
    need = 4 * math.ceil(-math.log2(gap)) + 40
    need = 32 * math.ceil(need / 32)
    return base if need <= base else need


# -- certificates ----------------------------------------------------------


@dataclass
class FaceCertificate:
    functional: np.ndarray
    offset: object
    margin: object
    face_vertices: tuple[int, ...]
    residual: object = 0
    precision_bits: int = 0

    @property
    def kind(self) -> str:
        return "face"


@dataclass
class SlabCertificate:
    functional: np.ndarray
    b_hi: object
    b_lo: object
    margin: object
    top_set: tuple[int, ...]
    bottom_set: tuple[int, ...]
    residual: object = 0
    precision_bits: int = 0

    @property
    def kind(self) -> str:
        return "slab"


@dataclass
class Refusal:
    """The LP optimum did not exceed the face tolerance."""

    subset: tuple
    optimal_margin: float
    reason: str = "margin below tolerance"

    def __bool__(self):
        return False


@dataclass
class Validation:
    ok: bool
    residual: object
    margin: object


def validate_face(vertices, cert: FaceCertificate, tol: Tolerances | None = None) -> Validation:
    """Check a face certificate by substitution, independently of the LP."""
    tol = tol or DEFAULT_TOLERANCES
    vals = vertices.dot(cert.functional)
    S = set(cert.face_vertices)
    inside = [abs(vals[i] - cert.offset) for i in S]
    outside = [cert.offset - vals[j] for j in range(len(vals)) if j not in S]
    residual = max(inside) if inside else 0
    margin = min(outside) if outside else math.inf
    norm = max(abs(x) for x in cert.functional)
    ok = (
        abs(norm - 1) <= tol.eq
        and residual <= tol.eq
        and margin > tol.face
        and residual < margin
    )
    return Validation(bool(ok), residual, margin)


def validate_slab(points, cert: SlabCertificate, tol: Tolerances | None = None) -> Validation:
    tol = tol or DEFAULT_TOLERANCES
    vals = points.dot(cert.functional)
    top, bottom = set(cert.top_set), set(cert.bottom_set)
    res = [abs(vals[i] - cert.b_hi) for i in top] + [abs(vals[i] - cert.b_lo) for i in bottom]
    residual = max(res)
    gaps = []
    for j in range(len(vals)):
        if j not in top and j not in bottom:
            gaps.append(min(cert.b_hi - vals[j], vals[j] - cert.b_lo))
    gaps.append(cert.b_hi - cert.b_lo)
    margin = min(gaps)
    norm = max(abs(x) for x in cert.functional)
    ok = (
        abs(norm - 1) <= tol.eq
        and residual <= tol.eq
        and margin > tol.face
        and residual < margin
        and cert.b_hi - cert.b_lo > tol.sep
    )
    return Validation(bool(ok), residual, margin)


# -- point configurations --------------------------------------------------


class PointConfiguration:
    """A finite point set in a chosen working precision."""

    def __init__(self, vertices, precision: Precision | None = None):
        self.precision = precision or get_precision()
        v = np.asarray(vertices)
        if v.dtype != self.precision.dtype:
            v = self.precision.convert(v)
        if v.ndim != 2:
            raise ValueError("vertices must be an N x D matrix")
        self.vertices = v

    @property
    def N(self) -> int:
        return self.vertices.shape[0]

    @property
    def D(self) -> int:
        return self.vertices.shape[1]

    def at_precision(self, precision: Precision) -> "PointConfiguration":
        return PointConfiguration(self.vertices, precision)

    def subset(self, rows: Sequence[int]) -> "PointConfiguration":
        return PointConfiguration(self.vertices[list(rows)], self.precision)

    def project(self, coords: Sequence[int]) -> "PointConfiguration":
        return PointConfiguration(np.ascontiguousarray(self.vertices[:, list(coords)]), self.precision)

    @cached_property
    def reduction(self):
        """Orthonormal basis ``B`` (r x D) of the row space, or None if full rank.

        Linear programs run on ``W = V B^T``: every useful functional lies in
        the span of the vertices, so nothing is lost.
        """
        return _row_basis(self.vertices, self.precision)

    def lp_coordinates(self):
        B = self.reduction
        if B is None:
            return self.vertices
        return self.vertices.dot(B.T)


def _row_basis(V, precision: Precision):
    N, D = V.shape
    if N == 0:
        return None
    Rm = V.copy()
    scale = max(abs(x) for x in V.reshape(-1))
    if scale == 0:
        return precision.zeros((0, D))
    cutoff = 64 * precision.eps * math.sqrt(N * D) * float(scale)
    basis = []
    for _ in range(min(N, D)):
        norms2 = (Rm * Rm).sum(axis=1)
        i = int(np.argmax(norms2))
        nrm = precision.sqrt(norms2[i])
        if not nrm > cutoff:
            break
        u = Rm[i] / nrm
        for _pass in range(2):
            for b in basis:
                u = u - u.dot(b) * b
            u = u / precision.sqrt(u.dot(u))
        basis.append(u)
        Rm = Rm - np.outer(Rm.dot(u), u)
    if len(basis) == D:
        return None
    return np.array(basis, dtype=precision.dtype).reshape(len(basis), D)


class EmbeddedPolytope(PointConfiguration):
    """Convex hull of a curve evaluated at a seed set."""

    def __init__(self, spec: CurveSpec, seeds: SeedSet, vertices, precision: Precision, cs_flag: bool):
        super().__init__(vertices, precision)
        self.spec = spec
        self.seeds = seeds
        self.cs_flag = cs_flag

    def at_precision(self, precision: Precision) -> "EmbeddedPolytope":
        if precision == self.precision:
            return self
        return assemble(self.spec, self.seeds, precision)

    def antipode_index(self, i: int) -> int | None:
        return self.seeds.antipode_index(i)

    def is_antipodal_pair(self, i: int, j: int) -> bool:
        return are_antipodal(self.seeds[i].point, self.seeds[j].point)

    @cached_property
    def opposite_cluster(self) -> dict[int, int]:
        return self.seeds.opposite_clusters()


def assemble(spec: CurveSpec, seeds: SeedSet, precision: Precision | None = None,
             tol: Tolerances | None = None) -> EmbeddedPolytope:
    """Evaluate ``spec`` at every seed; checks distinctness and central symmetry."""
    precision = precision or get_precision()
    tol = tol or default_tolerances(precision)
    V = eval_many(spec, seeds.angles, precision)
    _check_distinct(V, precision)
    cs = False
    if seeds.symmetric:
        for i in range(len(seeds)):
            j = seeds.antipode_index(i)
            residual = max(abs(x) for x in (V[i] + V[j]))
            if residual > tol.sym:
                raise ConstructionError(f"vertex {i} and its antipode {j} are not negatives (residual {residual})")
        cs = True
    return EmbeddedPolytope(spec, seeds, V, precision, cs)


def _check_distinct(V, precision: Precision) -> None:
    N = V.shape[0]
    if N < 2:
        return
    cutoff = 16 * precision.eps
    F = precision.to_float(V) if precision.kind != "extended" else V
    for i in range(N - 1):
        d = abs(F[i + 1:] - F[i]).max(axis=1)
        j = int(np.argmin(d))
        if d[j] <= cutoff:
            # re-check in the native format before declaring a duplicate
            if max(abs(x) for x in V[i] - V[i + 1 + j]) <= cutoff:
                raise ConstructionError(f"embedded vertices {i} and {i + 1 + j} coincide")


def affine_dimension(P: PointConfiguration, tol: Tolerances | None = None) -> int:
    tol = tol or DEFAULT_TOLERANCES
    if P.N <= 1:
        return 0
    V = P.precision.to_float(P.vertices)
    M = V[1:] - V[0]
    sv = np.linalg.svd(M, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int((sv > tol.rank * sv[0]).sum())


# -- linear programs -------------------------------------------------------


def _lp_face(W, S: Sequence[int], precision: Precision, backend=None):
    """Margin LP in the (possibly reduced) coordinates ``W``."""
    N, r = W.shape
    inS = np.zeros(N, dtype=bool)
    inS[list(S)] = True
    n = 2 * r + 3  # c+, c-, b+, b-, delta
    one = precision.scalar(1)
    rows = []
    rhs = []
    zero_row = precision.zeros(n)
    for i in range(N):
        w = W[i]
        row = zero_row.copy()
        row[:r] = w
        row[r:2 * r] = -w
        row[2 * r] = -one
        row[2 * r + 1] = one
        if inS[i]:
            rows.append(row)
            rhs.append(0)
            rows.append(-row)
            rhs.append(0)
        else:
            row[2 * r + 2] = one
            rows.append(row)
            rhs.append(0)
    for ell in range(2 * r):
        row = zero_row.copy()
        row[ell] = one
        rows.append(row)
        rhs.append(1)
    row = zero_row.copy()
    row[2 * r + 2] = one
    rows.append(row)
    rhs.append(_delta_cap(W))
    c = zero_row.copy()
    c[2 * r + 2] = one
    A = np.array(rows, dtype=precision.dtype)
    b = precision.array(rhs)
    res = solve_lp(c, A, b, precision=precision, backend=backend)
    if res.status != OPTIMAL:
        raise SolverError(f"face LP ended with status {res.status}")
    x = res.x
    return x[:r] - x[r:2 * r], x[2 * r] - x[2 * r + 1], x[2 * r + 2]


def _lp_slab(W, top, bottom, precision: Precision, backend=None):
    N, r = W.shape
    kind = np.zeros(N, dtype=int)
    kind[list(top)] = 1
    kind[list(bottom)] = 2
    n = 2 * r + 5  # c+, c-, hi+, hi-, lo+, lo-, delta
    H, L, DLT = 2 * r, 2 * r + 2, 2 * r + 4
    one = precision.scalar(1)
    zero_row = precision.zeros(n)
    rows, rhs = [], []

    def cw(w):
        row = zero_row.copy()
        row[:r] = w
        row[r:2 * r] = -w
        return row

    for i in range(N):
        w = W[i]
        if kind[i] == 1:
            row = cw(w)
            row[H], row[H + 1] = -one, one
            rows += [row, -row]
            rhs += [0, 0]
        elif kind[i] == 2:
            row = cw(w)
            row[L], row[L + 1] = -one, one
            rows += [row, -row]
            rhs += [0, 0]
        else:
            row = cw(w)  # <c,x> - hi + delta <= 0
            row[H], row[H + 1], row[DLT] = -one, one, one
            rows.append(row)
            rhs.append(0)
            row = -cw(w)  # lo - <c,x> + delta <= 0
            row[L], row[L + 1], row[DLT] = one, -one, one
            rows.append(row)
            rhs.append(0)
    row = zero_row.copy()  # lo - hi + delta <= 0
    row[H], row[H + 1], row[L], row[L + 1], row[DLT] = -one, one, one, -one, one
    rows.append(row)
    rhs.append(0)
    for ell in range(2 * r):
        row = zero_row.copy()
        row[ell] = one
        rows.append(row)
        rhs.append(1)
    row = zero_row.copy()
    row[DLT] = one
    rows.append(row)
    rhs.append(_delta_cap(W))
    c = zero_row.copy()
    c[DLT] = one
    res = solve_lp(c, np.array(rows, dtype=precision.dtype), precision.array(rhs), precision=precision,
                   backend=backend)
    if res.status != OPTIMAL:
        raise SolverError(f"slab LP ended with status {res.status}")
    x = res.x
    return x[:r] - x[r:2 * r], x[H] - x[H + 1], x[L] - x[L + 1], x[DLT]


def _delta_cap(W) -> int:
    # with |c_l| <= 1, no margin can exceed 2 * r * max|w| (keeps the LP bounded)
    scale = max([abs(x) for x in W.reshape(-1)] + [1])
    return int(math.ceil(2 * W.shape[1] * float(scale))) + 1


def _full_functional(P: PointConfiguration, c_red):
    B = P.reduction
    return c_red if B is None else c_red.dot(B)


def _normalized(c, *offsets):
    norm = max(abs(x) for x in c) if len(c) else 0
    if norm == 0:
        return None
    return (c / norm, *(o / norm for o in offsets))


def _check_subset(P: PointConfiguration, S: Iterable[int]) -> tuple[int, ...]:
    S = tuple(sorted(set(int(i) for i in S)))
    if not S:
        raise DomainError("subset must be non-empty")
    if S[0] < 0 or S[-1] >= P.N:
        raise DomainError("subset index out of range")
    return S


def _with_retry(P: PointConfiguration, attempt: Callable, retry: bool):
    try:
        return attempt(P)
    except SolverError as exc:
        if not retry:
            raise
        higher = P.precision.doubled()
        logger.warning("solver error at %d bits (%s); retrying at %d bits", P.precision.bits, exc, higher.bits)
        return attempt(P.at_precision(higher))


def certify_face(P: PointConfiguration, S: Iterable[int], tol: Tolerances | None = None,
                 retry: bool = True, backend: str | None = None):
    """Certify ``S`` as an exposed face of ``conv(P)``.

    Returns a :class:`FaceCertificate` or a :class:`Refusal`; raises
    :class:`SolverError` if the LP fails (after one retry at doubled
    precision).
    """
    S = _check_subset(P, S)
    tol = tol or default_tolerances(P.precision)

    def attempt(Q: PointConfiguration):
        prec = Q.precision
        c_red, b, delta = _lp_face(Q.lp_coordinates(), S, prec, backend)
        c = _full_functional(Q, c_red)
        normed = _normalized(c, b, delta)
        if normed is None or not delta > 0:
            return Refusal(S, 0.0, "zero functional" if normed is None else "margin below tolerance")
        c, b, delta = normed
        if not delta > tol.face:
            return Refusal(S, float(delta))
        cert = FaceCertificate(c, b, delta, S, precision_bits=prec.bits)
        check = validate_face(Q.vertices, cert, tol)
        if not check.ok:
            raise SolverError(
                f"face certificate for {S} failed re-validation (residual {float(check.residual):.3g}, "
                f"margin {float(check.margin):.3g})"
            )
        cert.margin = check.margin
        cert.residual = check.residual
        return cert

    return _with_retry(P, attempt, retry)


def certify_slab(X: PointConfiguration, top: Iterable[int], bottom: Iterable[int],
                 tol: Tolerances | None = None, retry: bool = True, backend: str | None = None):
    """Certify that ``top`` and ``bottom`` are cut out by two parallel supporting hyperplanes."""
    if not isinstance(X, PointConfiguration):
        X = PointConfiguration(X)
    top = _check_subset(X, top)
    bottom = _check_subset(X, bottom)
    if set(top) & set(bottom):
        raise DomainError("top and bottom sets must be disjoint")
    tol = tol or default_tolerances(X.precision)

    def attempt(Q: PointConfiguration):
        prec = Q.precision
        c_red, hi, lo, delta = _lp_slab(Q.lp_coordinates(), top, bottom, prec, backend)
        c = _full_functional(Q, c_red)
        normed = _normalized(c, hi, lo, delta)
        if normed is None or not delta > 0:
            return Refusal((top, bottom), 0.0)
        c, hi, lo, delta = normed
        if not delta > tol.face:
            return Refusal((top, bottom), float(delta))
        cert = SlabCertificate(c, hi, lo, delta, top, bottom, precision_bits=prec.bits)
        check = validate_slab(Q.vertices, cert, tol)
        if not check.ok:
            raise SolverError(f"slab certificate for {top}/{bottom} failed re-validation")
        cert.margin = check.margin
        cert.residual = check.residual
        return cert

    return _with_retry(X, attempt, retry)


def antipodal_simplex_pair(X: PointConfiguration, U1: Iterable[int], U2: Iterable[int],
                           tol: Tolerances | None = None):
    U1, U2 = set(U1), set(U2)
    if U1 & U2:
        raise DomainError("simplices must have disjoint vertex sets")
    return certify_slab(X, U1, U2, tol)


def lift_certificate(cert: FaceCertificate, coords: Sequence[int], D: int) -> FaceCertificate:
    """Pad a certificate found on a coordinate projection with zeros."""
    c = np.zeros(D, dtype=np.asarray(cert.functional).dtype)
    if c.dtype == object:
        c.fill(cert.functional[0] * 0)
    for src, dst in enumerate(coords):
        c[dst] = cert.functional[src]
    return FaceCertificate(c, cert.offset, cert.margin, cert.face_vertices, cert.residual, cert.precision_bits)


# -- enumeration -----------------------------------------------------------


def _map(fn, items, workers: int):
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _check_cap(count: int, cap: int):
    if count > cap:
        raise EnumerationCapError(f"{count} LP instances exceed the enumeration cap {cap}")


@dataclass
class EdgeCount:
    count: int
    refused_pairs: list[tuple[int, int]]
    min_margin: float
    certificates: dict = field(default_factory=dict, repr=False)
    refusals: list = field(default_factory=list, repr=False)


@dataclass
class NeighborlinessReport:
    k: int
    subsets_checked: int
    subsets_certified: int
    subsets_failed: int
    failure_witnesses: list[tuple[int, ...]]
    min_margin: float
    certificates: dict = field(default_factory=dict, repr=False)
    refusals: list = field(default_factory=list, repr=False)

    @property
    def neighborly(self) -> bool:
        return self.subsets_failed == 0


def _run_subsets(P, subsets, tol, workers, keep):
    def one(S):
        try:
            return S, certify_face(P, S, tol)
        except SolverError as exc:
            raise SolverError(f"{exc} [subset {S}]") from exc

    results = _map(one, subsets, workers)
    certified, refusals, margins, certs = 0, [], [], {}
    for S, out in results:
        if isinstance(out, FaceCertificate):
            certified += 1
            margins.append(float(out.margin))
            if keep:
                certs[S] = out
        else:
            refusals.append(out)
    refusals.sort(key=lambda r: r.subset)
    return certified, refusals, (min(margins) if margins else math.nan), certs


def count_edges(P: PointConfiguration, tol: Tolerances | None = None, cap: int = DEFAULT_CAP,
                workers: int = 1, keep_certificates: bool = False) -> EdgeCount:
    pairs = list(itertools.combinations(range(P.N), 2))
    _check_cap(len(pairs), cap)
    certified, refusals, mm, certs = _run_subsets(P, pairs, tol, workers, keep_certificates)
    return EdgeCount(certified, [r.subset for r in refusals], mm, certs, refusals)


def admissible_subsets(P: EmbeddedPolytope, k: int, exclusion: str = "antipodal_pairs"):
    """k-subsets with no antipodal pair (or no two points from opposite clusters)."""
    if exclusion not in ("antipodal_pairs", "opposite_clusters"):
        raise ValueError(f"unknown exclusion {exclusion!r}")
    if exclusion == "antipodal_pairs":
        anti = {i: P.antipode_index(i) for i in range(P.N)}

        def ok(S):
            return all(anti[i] not in S for i in S)
    else:
        cid = P.seeds.cluster_ids
        opp = P.opposite_cluster

        def ok(S):
            cl = {cid[i] for i in S}
            return all(opp.get(c) not in cl for c in cl)

    return [S for S in itertools.combinations(range(P.N), k) if ok(set(S))]


def check_k_neighborly(P: EmbeddedPolytope, k: int, exclusion: str = "antipodal_pairs",
                       tol: Tolerances | None = None, cap: int = DEFAULT_CAP, workers: int = 1,
                       keep_certificates: bool = False) -> NeighborlinessReport:
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_cap(math.comb(P.N, k), cap)
    subsets = admissible_subsets(P, k, exclusion)
    certified, refusals, mm, certs = _run_subsets(P, subsets, tol, workers, keep_certificates)
    return NeighborlinessReport(k, len(subsets), certified, len(refusals), [r.subset for r in refusals], mm,
                                certs, refusals)


def admissible_count(n_pairs: int, s: int, k: int) -> int:
    """Number of k-subsets of ``2 n_pairs`` clusters of size ``s`` avoiding opposite clusters.

    Coefficient of ``x^k`` in ``(2 (1+x)^s - 1)^n_pairs``.
    """
    per_pair = [2 * math.comb(s, j) for j in range(s + 1)]
    per_pair[0] = 1
    poly = [1]
    for _ in range(n_pairs):
        nxt = [0] * (len(poly) + s)
        for a, ca in enumerate(poly):
            for b, cb in enumerate(per_pair):
                nxt[a + b] += ca * cb
        poly = nxt
    return poly[k] if k < len(poly) else 0


def cluster_product_bound(n_pairs: int, s: int, k: int) -> float:
    """Lower bound on the fraction of k-subsets avoiding opposite clusters."""
    out = 1.0
    for i in range(k):
        out *= ((2 * n_pairs - i) * s - i) / (2 * n_pairs * s - i)
    return out


@dataclass
class ClusteredFaceCount:
    k: int
    n_pairs: int
    s: int
    admissible: int
    certified_count: int
    total: int
    lower_bound_fraction: float
    product_bound: float
    observed_fraction: float
    report: NeighborlinessReport

    @property
    def bound_vacuous(self) -> bool:
        return self.lower_bound_fraction <= 0


def count_k_faces_clustered(P: EmbeddedPolytope, k: int, tol: Tolerances | None = None,
                            cap: int = DEFAULT_CAP, workers: int = 1) -> ClusteredFaceCount:
    """Certify every k-subset avoiding opposite clusters and compare with the bounds.

    ``n_pairs`` is the number of opposite-cluster pairs (``|F|`` for family
    based seeds, ``3^m - 1`` for equally spaced seeds).
    """
    if not P.cs_flag:
        raise DomainError("clustered face counting needs a centrally symmetric polytope")
    clusters = P.seeds.clusters()
    n_pairs = len(clusters) // 2
    s = P.seeds.s
    report = check_k_neighborly(P, k, "opposite_clusters", tol, cap, workers)
    total = math.comb(P.N, k)
    return ClusteredFaceCount(
        k=k,
        n_pairs=n_pairs,
        s=s,
        admissible=report.subsets_checked,
        certified_count=report.subsets_certified,
        total=total,
        lower_bound_fraction=1 - k * k / n_pairs,
        product_bound=cluster_product_bound(n_pairs, s, k),
        observed_fraction=report.subsets_certified / total,
        report=report,
    )


def antipodal_pairs(X: PointConfiguration, pairs: Iterable[tuple[int, int]] | None = None,
                    tol: Tolerances | None = None, cap: int = DEFAULT_CAP, workers: int = 1):
    """Slab-certify pairs; returns ``(certified_pairs, refused_pairs, min_margin)``."""
    if not isinstance(X, PointConfiguration):
        X = PointConfiguration(X)
    pairs = list(pairs) if pairs is not None else list(itertools.combinations(range(X.N), 2))
    _check_cap(len(pairs), cap)

    def one(p):
        try:
            return p, certify_slab(X, [p[0]], [p[1]], tol)
        except SolverError as exc:
            raise SolverError(f"{exc} [pair {p}]") from exc

    good, bad, margins = [], [], []
    for p, out in _map(one, pairs, workers):
        if isinstance(out, SlabCertificate):
            good.append(p)
            margins.append(float(out.margin))
        else:
            bad.append(p)
    return good, sorted(bad), (min(margins) if margins else math.nan)


def antipodal_pair_count(X, tol: Tolerances | None = None, cap: int = DEFAULT_CAP,
                         workers: int = 1) -> int:
    return len(antipodal_pairs(X, None, tol, cap, workers)[0])
