"""Command-line theorem checker.

Each subcommand builds one construction, certifies the properties claimed
for it, and writes a JSON report with one entry per claim.  Exit codes:

* 0: every claim certified (informational entries do not count)
* 2: at least one claim failed
* 3: the LP solver or the precision budget failed
* 4: invalid configuration or input

Example::

    csneighborly theorem-2neighb --m 2 --out report.json
    csneighborly theorem-kneighb --k 3 --m 8 --strategy exhaustive --target 3
    csneighborly antipodal --m 2 --s 2
    csneighborly family --m 8 --k 3 --strategy exhaustive --family-out f.json
"""

from __future__ import annotations

import argparse
import itertools
import logging
import math
import sys
import time
from dataclasses import asdict, dataclass, field

from . import __version__
from ._precision import PrecisionError, get_precision
from .circle import DomainError
from .curves import CurveSpec
from .families import STRATEGIES, SearchFailure, SetFamily, first_failure, fll_bound, generate_family
from .lp import BACKEND, SolverError
from .reports import dumps_report, refusals_csv, vertices_csv
from .seeds import (
    ConstructionError as SeedConstructionError,
    build_A,
    build_A_clustered,
    build_V,
    build_V_clustered,
    check_injectivity,
    first_injectivity_failure,
    half_set,
    small_arc_witness,
)
from .verify import (
    DEFAULT_CAP,
    ConstructionError,
    EnumerationCapError,
    Tolerances,
    admissible_count,
    admissible_subsets,
    affine_dimension,
    antipodal_pairs,
    assemble,
    check_k_neighborly,
    cluster_product_bound,
    count_edges,
    default_tolerances,
    suggested_precision,
)

logger = logging.getLogger("csneighborly")

EXIT_OK, EXIT_CLAIM, EXIT_SOLVER, EXIT_CONFIG = 0, 2, 3, 4


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    m: int | None = None
    s: int | None = None
    k: int | None = None
    strategy: str | None = None
    target: int | None = None
    family: str | None = None
    seed: int = 0
    precision: int | None = None  # None: chosen from the construction
    tol_face: float | None = None
    cap: int = DEFAULT_CAP
    workers: int = 1
    out: str | None = None
    family_out: str | None = None
    vertices_csv: str | None = None
    refusals_csv: str | None = None
    timing: bool = True

    def validate(self):
        for name in ("m", "s", "k", "target"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ConfigError(f"--{name} must be a positive integer")
        if self.precision is not None and self.precision < 64:
            raise ConfigError("--precision must be at least 64 bits")
        if self.tol_face is not None and not self.tol_face > 0:
            raise ConfigError("--tol-face must be positive")
        if self.cap < 1 or self.workers < 1:
            raise ConfigError("--cap and --workers must be positive")
        if self.strategy is not None and self.strategy not in STRATEGIES:
            raise ConfigError(f"--strategy must be one of {STRATEGIES}")

    def embedded(self) -> dict:
        """The part of the configuration that determines the report's content.

        Worker count and output locations are left out so that reports are
        byte-identical across them.
        """
        d = asdict(self)
        for key in ("workers", "out", "family_out", "vertices_csv", "refusals_csv", "timing"):
            d.pop(key)
        return d


@dataclass
class Claims:
    """Ordered claim list; failures below the theorem's hypothesis are only flagged."""

    below_hypothesis: bool = False
    items: list = field(default_factory=list)

    def add(self, name, paper_ref, predicted, observed, ok=None, min_margin=None, **extra):
        if ok is None:
            status = "reported"
        elif ok:
            status = "pass"
        else:
            status = "flagged" if self.below_hypothesis else "fail"
        entry = {
            "name": name,
            "paper_ref": paper_ref,
            "predicted": predicted,
            "observed": observed,
            "status": status,
            "min_margin": _margin(min_margin),
        }
        entry.update(extra)
        self.items.append(entry)
        return entry

    @property
    def failed(self) -> bool:
        return any(c["status"] == "fail" for c in self.items)


def _margin(x):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return None
    return float(x)


class Timer:
    def __init__(self):
        self.start = time.perf_counter()
        self.stages: dict[str, float] = {}

    def mark(self, stage: str, t0: float):
        self.stages[stage] = round(time.perf_counter() - t0, 6)

    def summary(self) -> dict:
        return {"total_seconds": round(time.perf_counter() - self.start, 6), "stages": self.stages}


def _tolerances(cfg: RunConfig, precision) -> Tolerances:
    tol = default_tolerances(precision)
    if cfg.tol_face is not None:
        tol = Tolerances(face=cfg.tol_face, eq=tol.eq, rank=tol.rank, sym=tol.sym, sep=tol.sep)
    return tol


def _build(spec, seeds, cfg: RunConfig):
    bits = cfg.precision or suggested_precision(spec, seeds)
    prec = get_precision(bits)
    tol = _tolerances(cfg, prec)
    P = assemble(spec, seeds, prec, tol)
    return P, tol


def _construction(P, tol, label: str) -> dict:
    return {
        "label": label,
        "curve": P.spec.describe(),
        "N": P.N,
        "ambient_dim": P.D,
        "affine_dim": affine_dimension(P, tol),
        "centrally_symmetric": P.cs_flag,
        "precision_bits": P.precision.bits,
        "tolerances": asdict(tol),
    }


def _injectivity(claims: Claims, seeds, powers: int, label: str):
    if powers < 1:
        claims.add(f"{label}: tripling injective", "tripling maps are injective on the seed set",
                   "vacuous (no powers to check)", True, ok=True)
        return
    fail = first_injectivity_failure(seeds, powers)
    observed = "injective" if fail is None else f"collision 3^{fail[0]} at seeds {fail[1]}, {fail[2]}"
    claims.add(f"{label}: tripling injective", f"t -> 3^n t injective on the seed set for n = 1..{powers}",
               "injective", observed, ok=fail is None)


# -- theorem-2neighb ---------------------------------------------------------


def run_2neighb(cfg: RunConfig, timer: Timer, out: dict):
    m, s = cfg.m, cfg.s
    claims = Claims(below_hypothesis=m < 2)
    out["claims"] = claims.items
    if m < 2:
        out["flags"] = ["below hypothesis: the 2-neighborly construction assumes m >= 2"]

    t0 = time.perf_counter()
    spec = CurveSpec.Phi(m)
    seeds = build_A(m)
    P, tol = _build(spec, seeds, cfg)
    out["construction"] = _construction(P, tol, f"A_{m}")
    timer.mark("assemble", t0)
    N, d = P.N, 2 * (m + 1)
    ref = "cs 2-neighborly polytope from equally spaced seeds"

    claims.add("vertex count", f"{ref}: 2(3^m - 1) vertices", 2 * (3**m - 1), N, ok=N == 2 * (3**m - 1))
    dim = out["construction"]["affine_dim"]
    claims.add("dimension", f"{ref}: dimension 2(m + 1)", d, dim, ok=dim == d)
    claims.add("centrally symmetric", f"{ref}: P = -P", True, P.cs_flag, ok=P.cs_flag)
    _injectivity(claims, seeds, m - 1, f"A_{m}")

    t0 = time.perf_counter()
    edges = count_edges(P, tol, cfg.cap, cfg.workers)
    timer.mark("edges", t0)
    predicted = math.comb(N, 2) - N // 2
    refused = edges.refused_pairs
    non_antipodal_refused = [p for p in refused if not P.is_antipodal_pair(*p)]
    claims.add("2-neighborly", f"{ref}: every non-antipodal pair of vertices spans an edge",
               predicted, predicted - len(non_antipodal_refused), ok=not non_antipodal_refused, min_margin=edges.min_margin,
               witnesses=[list(p) for p in non_antipodal_refused[:20]])
    claims.add("antipodal pairs refused", "an antipodal pair of a cs polytope with the origin inside is no edge",
               N // 2, len(refused) - len(non_antipodal_refused), ok=len(refused) - len(non_antipodal_refused) == N // 2)
    claims.add("edge count", f"{ref}: C(N,2) - N/2 edges", predicted, edges.count, ok=edges.count == predicted,
               min_margin=edges.min_margin)
    claims.add("vertex growth (asymptotic)", "vertex count of order 3^(d/2); not reproducible at desk scale",
               3 ** (d / 2), N, ok=None, note="finite instance: N = (2/3) 3^(d/2) - 2")
    refusal_rows = list(edges.refusals)

    if s is not None:
        t0 = time.perf_counter()
        seeds2 = build_A_clustered(m, s)
        P2, tol2 = _build(spec, seeds2, cfg)
        c2 = _construction(P2, tol2, f"A_{m},{s}")
        out["clustered_construction"] = c2
        timer.mark("assemble_clustered", t0)
        N2 = P2.N
        ref2 = "clustered 2-neighborly construction"
        claims.add("clustered vertex count", f"{ref2}: N = 2s(3^m - 1)", 2 * s * (3**m - 1), N2,
                   ok=N2 == 2 * s * (3**m - 1))
        claims.add("clustered dimension", f"{ref2}: dimension 2(m + 1)", d, c2["affine_dim"], ok=c2["affine_dim"] == d)
        claims.add("clustered centrally symmetric", f"{ref2}: P = -P", True, P2.cs_flag, ok=P2.cs_flag)
        _injectivity(claims, seeds2, m - 1, f"A_{m},{s}")

        t0 = time.perf_counter()
        e2 = count_edges(P2, tol2, cfg.cap, cfg.workers)
        timer.mark("edges_clustered", t0)
        cid, opp = seeds2.cluster_ids, P2.opposite_cluster
        certified_pairs = _certified_pairs(N2, e2.refused_pairs)
        cross = [p for p in certified_pairs if opp[cid[p[0]]] == cid[p[1]]]
        admissible_refused = [p for p in e2.refused_pairs if opp[cid[p[0]]] != cid[p[1]]]
        n_admissible = math.comb(N2, 2) - (3**m - 1) * s * s
        bound = N2 * (N2 - s - 1) // 2
        claims.add("clustered edges lower bound", f"{ref2}: at least N(N - s - 1)/2 edges", bound, e2.count,
                   ok=e2.count >= bound, min_margin=e2.min_margin)
        frac = 1 - 3.0**-m
        claims.add("clustered edge fraction", f"{ref2}: at least (1 - 3^-m) C(N,2) edges",
                   frac * math.comb(N2, 2), e2.count, ok=e2.count >= frac * math.comb(N2, 2))
        claims.add("clustered admissible pairs certified", "every pair not from opposite clusters spans an edge",
                   n_admissible, e2.count - len(cross), ok=not admissible_refused,
                   witnesses=[list(p) for p in admissible_refused[:20]])
        claims.add("clustered cross-cluster edges", "pairs from opposite clusters certified as edges (not predicted)",
                   None, len(cross), ok=None,
                   note=f"edge count = {n_admissible - len(admissible_refused)} admissible + {len(cross)} cross-cluster")
        refusal_rows += e2.refusals

    if cfg.vertices_csv:
        with open(cfg.vertices_csv, "w") as fh:
            vertices_csv(P, fh)
    if cfg.refusals_csv:
        with open(cfg.refusals_csv, "w") as fh:
            refusals_csv(refusal_rows, fh)
    return claims


def _certified_pairs(N, refused):
    bad = set(map(tuple, refused))
    return [p for p in itertools.combinations(range(N), 2) if p not in bad]


# -- theorem-kneighb ---------------------------------------------------------


def _family_for(cfg: RunConfig, k: int, claims: Claims, out: dict, timer: Timer):
    t0 = time.perf_counter()
    if cfg.family:
        try:
            F = SetFamily.load(cfg.family)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"cannot read family file {cfg.family}: {exc}") from exc
        if cfg.m is not None and F.m != cfg.m:
            raise ConfigError(f"family is over [{F.m}] but --m is {cfg.m}")
        source = "imported"
    else:
        F = generate_family(cfg.m, k, cfg.target or 1, cfg.strategy or "greedy", cfg.seed)
        source = f"{cfg.strategy or 'greedy'} search"
    timer.mark("family", t0)
    found = len(F)
    if cfg.target is not None and not cfg.family and len(F) > cfg.target:
        F = SetFamily(F.m, F.members[:cfg.target], F.verified_k)
    witness = first_failure(F, k)
    fam = {
        "m": F.m,
        "members": list(F.members),
        "sets": F.as_sets(),
        "size": len(F),
        "found_size": found,
        "source": source,
        "optimal_search": getattr(F, "optimal", False),
        "fll_bound": fll_bound(F.m, k) if k >= 2 else None,
    }
    out["family"] = fam
    claims.add("family k-independent", "every k members generate all 2^k Boolean atoms", True, witness is None,
               ok=witness is None,
               witness=None if witness is None else [F.as_sets()[i] for i in witness])
    if k >= 2:
        claims.add("family size vs cited bound", "k-independent families of size 2^(m / (5 (k-1) 2^k)) exist",
                   fll_bound(F.m, k), found, ok=None)
    if len(F) < k:
        out.setdefault("flags", []).append(f"vacuous: family has fewer than k={k} members")
    return F, witness


def run_kneighb(cfg: RunConfig, timer: Timer, out: dict):
    k = cfg.k
    claims = Claims()
    out["claims"] = claims.items
    F, witness = _family_for(cfg, k, claims, out, timer)
    if witness is not None:
        return claims
    m, s = F.m, cfg.s
    spec = CurveSpec.Psi(k, m)

    t0 = time.perf_counter()
    seeds = build_V(F.members, m) if s is None else build_V_clustered(F.members, m, s)
    P, tol = _build(spec, seeds, cfg)
    out["construction"] = _construction(P, tol, "V(F)" if s is None else f"V(F, s={s})")
    timer.mark("assemble", t0)
    ref = "cs k-neighborly polytope from a k-independent family"
    nF = len(F)
    size = 2 * nF * (s or 1)
    claims.add("vertex count", f"{ref}: 2|F| vertices" + ("" if s is None else " (times s per cluster)"),
               size, P.N, ok=P.N == size)
    claims.add("ambient dimension", f"{ref}: curve in R^(2k(m+1))", 2 * k * (m + 1), P.D,
               ok=P.D == 2 * k * (m + 1))
    dim_bound = 2 * k * (m + 1) - 2 * m * ((k + 1) // 3)
    dim = out["construction"]["affine_dim"]
    claims.add("dimension bound", f"{ref}: dimension at most 2k(m+1) - 2m floor((k+1)/3)", dim_bound, dim,
               ok=dim <= dim_bound)
    claims.add("centrally symmetric", f"{ref}: P = -P", True, P.cs_flag, ok=P.cs_flag)
    _injectivity(claims, seeds, m, "V(F)")

    exclusion = "antipodal_pairs" if s is None else "opposite_clusters"
    t0 = time.perf_counter()
    tuples = admissible_subsets(P, k, exclusion)
    no_witness = [S for S in tuples if small_arc_witness(seeds, [seeds[i] for i in S], m) is None]
    timer.mark("small_arc", t0)
    claims.add("small-arc witnesses", "every admissible k-tuple has n <= m with all 3^n t_i in [pi, 3pi/2)",
               len(tuples), len(tuples) - len(no_witness), ok=not no_witness,
               witnesses=[list(S) for S in no_witness[:20]])

    refusal_rows = []
    for j in range(2, k + 1):
        t0 = time.perf_counter()
        rep = check_k_neighborly(P, j, exclusion, tol, cfg.cap, cfg.workers)
        timer.mark(f"faces_{j}", t0)
        what = "no two antipodal" if s is None else "no two from opposite clusters"
        claims.add(f"{j}-subsets are faces", f"{ref}: every {j} vertices, {what}, span a ({j}-1)-face",
                   rep.subsets_checked, rep.subsets_certified, ok=rep.neighborly, min_margin=rep.min_margin,
                   witnesses=[list(S) for S in rep.failure_witnesses[:20]])
        refusal_rows += rep.refusals
        if s is not None and j == k:
            N = P.N
            total = math.comb(N, k)
            formula = admissible_count(nF, s, k)
            claims.add("admissible count formula", "k-subsets avoiding opposite clusters, counted combinatorially",
                       formula, rep.subsets_checked, ok=formula == rep.subsets_checked)
            simple = 1 - k * k / nF
            claims.add("k-face fraction vs 1 - k^2/|F|", "clustered construction: at least (1 - k^2/|F|) C(N,k) faces",
                       simple, rep.subsets_certified / total, ok=None if simple <= 0 else rep.subsets_certified >= simple * total,
                       vacuous=simple <= 0, certified_count=rep.subsets_certified, total=total)
            prod = cluster_product_bound(nF, s, k)
            claims.add("k-face fraction vs product bound", "clustered construction: fraction at least prod (1 - ...)",
                       prod, rep.subsets_certified / total, ok=rep.subsets_certified >= prod * total - 1e-9)

    d = dim_bound
    claims.add("dimension vs 4km/3 (asymptotic)", "dimension of order 4km/3; not reproducible at desk scale",
               4 * k * m / 3, dim, ok=None)
    claims.add("vertex growth (asymptotic)", "vertex count 2^(3d / (20 k^2 2^k)); not reproducible at desk scale",
               2 ** (3 * d / (20 * k * k * 2**k)), P.N, ok=None)
    if s is not None:
        claims.add("many-k face fraction (asymptotic)", "fraction 1 - 2^(-delta_k d) for large d; not reproducible at desk scale",
                   None, None, ok=None)

    if cfg.vertices_csv:
        with open(cfg.vertices_csv, "w") as fh:
            vertices_csv(P, fh)
    if cfg.refusals_csv:
        with open(cfg.refusals_csv, "w") as fh:
            refusals_csv(refusal_rows, fh)
    return claims


# -- antipodal ---------------------------------------------------------------


def talata_baseline(d: int) -> int:
    """``floor(3^(d/3) / 3)``, computed exactly."""
    # largest n with 3 n <= 3^(d/3), i.e. (3 n)^3 <= 3^d
    n = int(3 ** (d / 3) / 3) + 2
    while (3 * n) ** 3 > 3**d:
        n -= 1
    return n


def run_antipodal(cfg: RunConfig, timer: Timer, out: dict):
    m, s = cfg.m, cfg.s
    d = 2 * (m + 1)
    claims = Claims(below_hypothesis=m < 2)
    out["claims"] = claims.items
    if m < 2:
        out["flags"] = ["below hypothesis: 3^m - 1 points cannot affinely span R^(2(m+1)) when m = 1"]
    spec = CurveSpec.Phi(m)
    t0 = time.perf_counter()
    X_seeds = half_set(build_A(m))
    X, tol = _build(spec, X_seeds, cfg)
    out["construction"] = _construction(X, tol, f"X_{m}")
    timer.mark("assemble", t0)
    ref = "strictly antipodal set from half of the equally spaced seeds"
    n = X.N
    claims.add("set size", f"{ref}: 3^m - 1 points", 3**m - 1, n, ok=n == 3**m - 1)
    dim = out["construction"]["affine_dim"]
    claims.add("affinely spanning", f"{ref}: affinely spans R^(2(m+1))", d, dim, ok=dim == d)
    t0 = time.perf_counter()
    good, bad, mm = antipodal_pairs(X, None, tol, cfg.cap, cfg.workers)
    timer.mark("pairs", t0)
    claims.add("all pairs strictly antipodal", f"{ref}: every pair is strictly antipodal", math.comb(n, 2), len(good),
               ok=not bad, min_margin=mm, witnesses=[list(p) for p in bad[:20]])
    bound = 3 ** (d // 2 - 1) - 1
    claims.add("A'(d) lower bound", "A'(d) >= 3^(floor(d/2) - 1) - 1", bound, n if not bad else None,
               ok=not bad and n >= bound)
    base = talata_baseline(d)
    claims.add("beats earlier baseline", "previous lower bound floor(3^(d/3) / 3)", base, n if not bad else None,
               ok=not bad and n > base)
    rows = [tuple(p) for p in bad]

    if s is not None:
        t0 = time.perf_counter()
        Y_seeds = half_set(build_A_clustered(m, s))
        Y, tol2 = _build(spec, Y_seeds, cfg)
        out["clustered_construction"] = _construction(Y, tol2, f"Y_{m},{s}")
        timer.mark("assemble_clustered", t0)
        cid = Y_seeds.cluster_ids
        pairs = [p for p in itertools.combinations(range(Y.N), 2) if cid[p[0]] != cid[p[1]]]
        t0 = time.perf_counter()
        good2, bad2, mm2 = antipodal_pairs(Y, pairs, tol2, cfg.cap, cfg.workers)
        timer.mark("pairs_clustered", t0)
        n2 = Y.N
        ref2 = "clustered strictly antipodal pairs"
        claims.add("clustered set size", f"{ref2}: n = s(3^m - 1)", s * (3**m - 1), n2, ok=n2 == s * (3**m - 1))
        claims.add("clustered pairs across clusters", f"{ref2}: every pair from different clusters is strictly antipodal",
                   len(pairs), len(good2), ok=not bad2, min_margin=mm2, witnesses=[list(p) for p in bad2[:20]])
        pred = (1 - 1 / (3**m - 1)) * n2 * n2 / 2
        claims.add("clustered pair count bound", f"{ref2}: at least (1 - 1/(3^m - 1)) n^2/2 pairs", pred, len(good2),
                   ok=len(good2) >= pred - 1e-9)
        rows += [tuple(p) for p in bad2]

    claims.add("A'(d) growth (asymptotic)", "A'(d) of order 3^(d/2); not reproducible at desk scale",
               3 ** (d / 2), n, ok=None)
    if cfg.vertices_csv:
        with open(cfg.vertices_csv, "w") as fh:
            vertices_csv(X, fh)
    if cfg.refusals_csv:
        with open(cfg.refusals_csv, "w") as fh:
            refusals_csv(rows, fh)
    return claims


# -- family ------------------------------------------------------------------


def run_family(cfg: RunConfig, timer: Timer, out: dict):
    k = cfg.k
    claims = Claims()
    out["claims"] = claims.items
    F, witness = _family_for(cfg, k, claims, out, timer)
    if witness is None and k >= 2 and len(F) >= k:
        w2 = first_failure(F, k - 1)
        claims.add("(k-1)-independent", "k-independence implies (k-1)-independence", True, w2 is None,
                   ok=w2 is None)
    if witness is None and cfg.family_out:
        F.verified_k = k
        F.dump(cfg.family_out)
    return claims


# -- entry point -------------------------------------------------------------


COMMANDS = {
    "theorem-2neighb": run_2neighb,
    "theorem-kneighb": run_kneighb,
    "antipodal": run_antipodal,
    "family": run_family,
}


def _common(p: argparse.ArgumentParser):
    g = p.add_argument_group("run options")
    g.add_argument("--precision", type=int, metavar="BITS",
                   help="working precision: 64 (double), 80 (long double) or more (software); default from the construction")
    g.add_argument("--tol-face", type=float, metavar="REAL", help="minimum certified margin")
    g.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum LP instances per enumeration")
    g.add_argument("--workers", type=int, default=1, help="threads for LP enumeration")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", metavar="PATH", help="report file (default: stdout)")
    g.add_argument("--vertices-csv", metavar="PATH", help="dump vertices as decimal strings")
    g.add_argument("--refusals-csv", metavar="PATH", help="dump refused subsets")
    g.add_argument("--no-timing", action="store_true", help="omit wall-clock timings for byte-stable reports")
    g.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="csneighborly", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("theorem-2neighb", help="cs 2-neighborly polytopes from equally spaced seeds")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--s", type=int, help="cluster size for the clustered construction")
    _common(p)

    p = sub.add_parser("theorem-kneighb", help="cs k-neighborly polytopes from k-independent families")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--family", metavar="PATH", help="family JSON ({m, members: [bitmask, ...]})")
    p.add_argument("--strategy", choices=STRATEGIES)
    p.add_argument("--target", type=int, help="family size to search for and use")
    p.add_argument("--s", type=int, help="cluster size for the clustered construction")
    _common(p)

    p = sub.add_parser("antipodal", help="strictly antipodal point sets")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--s", type=int, help="cluster size")
    _common(p)

    p = sub.add_parser("family", help="search for or verify a k-independent family")
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--strategy", choices=STRATEGIES, default="greedy")
    p.add_argument("--target", type=int)
    p.add_argument("--import", dest="family", metavar="PATH", help="verify this family instead of searching")
    p.add_argument("--family-out", metavar="PATH", help="write the verified family here")
    _common(p)
    return parser


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        m=args.m,
        s=getattr(args, "s", None),
        k=getattr(args, "k", None),
        strategy=getattr(args, "strategy", None),
        target=getattr(args, "target", None),
        family=getattr(args, "family", None),
        seed=args.seed,
        precision=args.precision,
        tol_face=args.tol_face,
        cap=args.cap,
        workers=args.workers,
        out=args.out,
        family_out=getattr(args, "family_out", None),
        vertices_csv=args.vertices_csv,
        refusals_csv=args.refusals_csv,
        timing=not args.no_timing,
    )
    cfg.validate()
    if cfg.command in ("theorem-kneighb", "family"):
        if cfg.family is None and cfg.m is None:
            raise ConfigError("--m is required unless a family file is given")
        if cfg.command == "theorem-kneighb" and cfg.family is None and cfg.strategy is None:
            cfg.strategy = "greedy"
    return cfg


def run(cfg: RunConfig) -> tuple[dict, int]:
    """Execute one command; returns ``(report, exit_code)``."""
    timer = Timer()
    report = {
        "tool": {"name": "csneighborly", "version": __version__, "lp_backend": BACKEND},
        "command": cfg.command,
        "config": cfg.embedded(),
        "construction": None,
        "claims": [],
    }
    code = EXIT_OK
    try:
        claims = COMMANDS[cfg.command](cfg, timer, report)
        code = EXIT_CLAIM if claims.failed else EXIT_OK
    except (SolverError, PrecisionError) as exc:
        report["error"] = {"kind": "solver", "message": str(exc)}
        code = EXIT_SOLVER
    except (ConfigError, EnumerationCapError, SearchFailure, DomainError, ConstructionError,
            SeedConstructionError, ValueError) as exc:
        report["error"] = {"kind": "config", "type": type(exc).__name__, "message": str(exc)}
        code = EXIT_CONFIG
    report["status"] = {EXIT_OK: "certified", EXIT_CLAIM: "claim failure", EXIT_SOLVER: "solver failure",
                        EXIT_CONFIG: "configuration error"}[code]
    report["timing"] = timer.summary() if cfg.timing else None
    return report, code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
    except ConfigError as exc:
        print(f"csneighborly: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    report, code = run(cfg)
    text = dumps_report(report)
    if cfg.out:
        try:
            with open(cfg.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"csneighborly: cannot write {cfg.out}: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    else:
        sys.stdout.write(text)
    if code != EXIT_OK:
        err = report.get("error", {}).get("message")
        if err is None:
            failed = [c for c in report["claims"] if c["status"] == "fail"]
            err = "; ".join(
                c["name"] + (f" (witness {c['witness']})" if c.get("witness") else "") for c in failed
            )
        print(f"csneighborly: {report['status']}: {err}", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
