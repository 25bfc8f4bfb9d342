"""k-independent families of subsets of ``[m] = {1, ..., m}``.

Members are bitmasks: bit ``i - 1`` is set iff ``i`` belongs to the set.
A family is k-independent when every k distinct members, each taken
either as itself or as its complement, have a non-empty intersection in
all ``2^k`` sign patterns.
"""

from __future__ import annotations

import itertools
import json
import logging
import random
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)

STRATEGIES = ("exhaustive", "greedy", "random_restart")


class SearchFailure(RuntimeError):
    """The family search could not reach the requested size."""


@dataclass
class SetFamily:
    m: int
    members: list[int]
    verified_k: int | None = None
    optimal: bool = False  # exhaustive search proved maximality
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.members = [int(x) for x in self.members]
        if len(set(self.members)) != len(self.members):
            raise ValueError("family members must be pairwise distinct")
        full = (1 << self.m) - 1
        for x in self.members:
            if x < 0 or x & ~full:
                raise ValueError(f"{x:#b} is not a subset of [{self.m}]")

    def __len__(self):
        return len(self.members)

    def as_sets(self) -> list[list[int]]:
        return [[i + 1 for i in range(self.m) if x >> i & 1] for x in self.members]

    def to_dict(self) -> dict:
        return {"m": self.m, "members": list(self.members), "verified_k": self.verified_k}

    @classmethod
    def from_dict(cls, d: dict) -> "SetFamily":
        return cls(int(d["m"]), list(d["members"]), d.get("verified_k"))

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)

    @classmethod
    def load(cls, path) -> "SetFamily":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def _atoms_ok(masks, full: int) -> bool:
    # all 2^k intersections of the masks or their complements are non-empty
    k = len(masks)
    for signs in range(1 << k):
        acc = full
        for j, x in enumerate(masks):
            acc &= x if signs >> j & 1 else full ^ x
            if not acc:
                return False
    return True


def first_failure(F: SetFamily, k: int) -> tuple[int, ...] | None:
    """Indices of the first k members (lexicographic) that miss an atom."""
    if k < 1:
        raise ValueError("k must be >= 1")
    full = (1 << F.m) - 1
    for idx in itertools.combinations(range(len(F.members)), k):
        if not _atoms_ok([F.members[i] for i in idx], full):
            return idx
    return None


def is_k_independent(F: SetFamily, k: int) -> bool:
    """Fewer than ``k`` members is vacuously independent (see :func:`verify_report`)."""
    return first_failure(F, k) is None


def verify_report(F: SetFamily, k: int) -> dict:
    witness = first_failure(F, k)
    return {
        "k": k,
        "size": len(F),
        "independent": witness is None,
        "vacuous": len(F) < k,
        "witness": None if witness is None else [F.as_sets()[i] for i in witness],
    }


def fll_bound(m: int, k: int) -> float:
    """``2^(m / (5 (k-1) 2^k))``, the family size guaranteed by the cited construction."""
    if k < 2:
        raise ValueError("fll_bound needs k >= 2")
    return 2.0 ** (m / (5 * (k - 1) * 2**k))


# -- search ---------------------------------------------------------------


def _candidates(m: int) -> list[int]:
    # complementing a member permutes the atoms, so every k-independent family
    # (k >= 1) is equivalent to one whose members all contain element 1;
    # [m] itself has an empty complement and is never admissible
    full = (1 << m) - 1
    return [x for x in range(1, full) if x & 1]


class _Search:
    def __init__(self, m: int, k: int, strict: bool = True):
        self.m = m
        self.k = k
        self.full = (1 << m) - 1
        self.strict = strict  # atom size bounds valid for families of >= k members

    def least(self, j: int) -> int:
        return 1 << (self.k - j) if self.strict else 1


def _atoms_at_least(masks, full: int, least: int) -> bool:
    k = len(masks)
    for signs in range(1 << k):
        acc = full
        for j, x in enumerate(masks):
            acc &= x if signs >> j & 1 else full ^ x
        if acc.bit_count() < least:
            return False
    return True


def _compatible_lower(search: _Search, chosen: list[int], x: int) -> bool:
    # In a k-independent family with at least k members, any j members cut
    # [m] into 2^j atoms of at least 2^(k-j) elements each (the remaining
    # k-j members must split every atom further).  Requiring this of every
    # j-subset through x prunes prefixes that can never reach size k.
    full = search.full
    top = min(search.k, len(chosen) + 1)
    for j in range(1, top + 1):
        least = search.least(j)
        for combo in itertools.combinations(chosen, j - 1):
            if not _atoms_at_least(list(combo) + [x], full, least):
                return False
    return True


def _greedy(search: _Search, order: list[int]) -> list[int]:
    chosen: list[int] = []
    for x in order:
        if _compatible_lower(search, chosen, x):
            chosen.append(x)
    return chosen


def _compatible_pair(search: _Search, chosen: list[int], x: int, y: int) -> bool:
    # y is already compatible with ``chosen``; only subsets through both x and y are new
    full = search.full
    top = min(search.k, len(chosen) + 2)
    for j in range(2, top + 1):
        least = search.least(j)
        for combo in itertools.combinations(chosen, j - 2):
            if not _atoms_at_least(list(combo) + [x, y], full, least):
                return False
    return True


def _exhaustive(search: _Search, pool: list[int], budget: int):
    """Branch and bound; ``budget`` caps the number of compatibility checks."""
    best: list[int] = _greedy(search, pool)  # incumbent for pruning
    work = 0
    exhausted = False

    def rec(chosen: list[int], cands: list[int]):
        nonlocal best, work, exhausted
        if len(chosen) > len(best):
            best = list(chosen)
        for idx, x in enumerate(cands):
            if len(chosen) + len(cands) - idx <= len(best):
                return
            rest = cands[idx + 1:]
            work += len(rest) + 1
            if work > budget:
                exhausted = True
                return
            rec(chosen + [x], [y for y in rest if _compatible_pair(search, chosen, x, y)])
            if exhausted:
                return

    rec([], [x for x in pool if _compatible_lower(search, [], x)])
    return best, not exhausted


def _run_strategy(search: _Search, pool, strategy, seed, restarts, node_budget):
    if strategy == "exhaustive":
        return _exhaustive(search, pool, node_budget)
    best = _greedy(search, pool)
    if strategy == "random_restart":
        rng = random.Random(seed)
        for _ in range(restarts):
            order = list(pool)
            rng.shuffle(order)
            cand = _greedy(search, order)
            if len(cand) > len(best):
                best = cand
    return best, False


def generate_family(m: int, k: int, target_size: int = 1, strategy: str = "greedy", seed: int = 0,
                    restarts: int = 64, node_budget: int = 2_000_000) -> SetFamily:
    """Search for a k-independent family of subsets of ``[m]``.

    ``exhaustive`` runs branch and bound and returns a maximum family when it
    finishes within ``node_budget`` compatibility checks (``optimal`` is set); otherwise the best
    family found.  ``greedy`` scans candidates in increasing bitmask order;
    ``random_restart`` repeats greedy on ``restarts`` shuffled orders drawn
    from ``seed``.  Raises :class:`SearchFailure` when the result is smaller
    than ``target_size``.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"strategy must be one of {STRATEGIES}")
    if k < 1:
        raise ValueError("k must be >= 1")
    pool = _candidates(m)
    best, optimal = _run_strategy(_Search(m, k), pool, strategy, seed, restarts, node_budget)
    if len(best) < k:
        # no family reaches k members along this search; the largest
        # (vacuously independent) ones need only the plain atom condition
        best, optimal = _run_strategy(_Search(m, k, strict=False), pool, strategy, seed, restarts, node_budget)
    best = sorted(best)
    F = SetFamily(m, best, optimal=optimal)
    witness = first_failure(F, k)
    if witness is not None:  # pragma: no cover - guarded by construction
        raise AssertionError(f"generator emitted a non-{k}-independent family: {witness}")
    F.verified_k = k
    if len(F) < k:
        F.notes.append(f"vacuous: fewer than k={k} members")
    logger.info("family search m=%d k=%d strategy=%s -> size %d", m, k, strategy, len(F))
    if len(F) < target_size:
        raise SearchFailure(f"{strategy} search found {len(F)} < target {target_size} members (m={m}, k={k})")
    return F
