import itertools
import math
import random

import pytest

from csneighborly.families import (
    SearchFailure,
    SetFamily,
    first_failure,
    fll_bound,
    generate_family,
    is_k_independent,
    verify_report,
)


def brute_force_independent(members, m, k):
    """Oracle: every k members, every sign pattern, atom non-empty (set arithmetic)."""
    universe = set(range(1, m + 1))
    sets = [{i + 1 for i in range(m) if x >> i & 1} for x in members]
    for combo in itertools.combinations(sets, k):
        for signs in itertools.product([True, False], repeat=k):
            atom = set(universe)
            for S, keep in zip(combo, signs):
                atom &= S if keep else universe - S
            if not atom:
                return False
    return True


def fam(m, sets):
    return SetFamily(m, [sum(1 << (i - 1) for i in S) for S in sets])


def test_examples():
    assert is_k_independent(fam(4, [{1, 2}, {1, 3}]), 2)
    assert not is_k_independent(fam(2, [{1}, {2}]), 2)


def test_k1_means_proper_nonempty():
    assert is_k_independent(fam(3, [{1}, {1, 2}]), 1)
    assert not is_k_independent(fam(3, [{1}, set()]), 1)
    assert not is_k_independent(fam(3, [{1}, {1, 2, 3}]), 1)


def test_vacuous_family_flagged():
    F = fam(4, [{1, 2}])
    assert is_k_independent(F, 3)
    assert verify_report(F, 3)["vacuous"]


def test_against_oracle_on_random_families():
    rng = random.Random(11)
    agree = 0
    for _ in range(200):
        m = rng.randint(2, 10)
        k = rng.randint(1, 3)
        size = rng.randint(0, 6)
        members = rng.sample(range(2**m), min(size, 2**m))
        F = SetFamily(m, members)
        assert is_k_independent(F, k) == brute_force_independent(members, m, k)
        agree += 1
    assert agree == 200


def test_fll_bound_values():
    assert fll_bound(40, 3) == pytest.approx(2**0.5)
    assert fll_bound(80, 3) == pytest.approx(2.0)
    assert fll_bound(20, 2) == pytest.approx(2.0)  # exponent 20 / (5 * 1 * 4) = 1
    with pytest.raises(ValueError):
        fll_bound(10, 1)


@pytest.mark.parametrize("m,k", [(4, 2), (8, 3)])
def test_exhaustive_generator_passes_oracle(m, k):
    F = generate_family(m, k, strategy="exhaustive")
    assert F.optimal
    assert len(F) >= 3
    assert brute_force_independent(F.members, m, k)
    full = (1 << m) - 1
    assert 0 not in F.members and full not in F.members


def test_exhaustive_is_maximum_small_case():
    # (m=4, k=2): compare with a brute-force maximum over all families
    m, k = 4, 2
    pool = list(range(1, 2**m - 1))
    best = 0
    for r in range(1, 7):
        if any(brute_force_independent(c, m, k) for c in itertools.combinations(pool, r)):
            best = r
    assert len(generate_family(m, k, strategy="exhaustive")) == best


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 7])
def test_exhaustive_matches_known_maximum_for_pairs(m):
    # maximum 2-independent family over [m] has C(m-1, floor(m/2) - 1) members
    F = generate_family(m, 2, strategy="exhaustive")
    assert F.optimal
    assert len(F) == math.comb(m - 1, m // 2 - 1)


def test_exhaustive_budget_reports_non_optimal():
    F = generate_family(9, 2, strategy="exhaustive", node_budget=10_000)
    assert not F.optimal
    assert is_k_independent(F, 2)


def test_m8_k3_bit_slices():
    F = generate_family(8, 3, target_size=3, strategy="greedy")
    assert len(F) >= 3 and is_k_independent(F, 3)


@pytest.mark.parametrize("strategy", ["greedy", "random_restart"])
def test_heuristics_verified_and_deterministic(strategy):
    a = generate_family(9, 2, strategy=strategy, seed=5)
    b = generate_family(9, 2, strategy=strategy, seed=5)
    assert a.members == b.members
    assert brute_force_independent(a.members, 9, 2)


def test_search_failure():
    with pytest.raises(SearchFailure):
        generate_family(4, 2, target_size=10, strategy="exhaustive")


def test_monotonicity_under_subfamilies():
    rng = random.Random(3)
    F = generate_family(8, 3, strategy="exhaustive")
    for _ in range(20):
        sub = rng.sample(F.members, rng.randint(0, len(F)))
        assert is_k_independent(SetFamily(8, sub), 3)


def test_k_implies_k_minus_one():
    for m, k in [(6, 2), (8, 3), (10, 3)]:
        F = generate_family(m, k, strategy="greedy")
        if len(F) >= k:
            assert is_k_independent(F, k - 1)


def test_first_failure_witness():
    F = fam(3, [{1}, {1, 2}, {2}])
    assert first_failure(F, 2) == (0, 1)


def test_json_round_trip(tmp_path):
    F = generate_family(8, 3, strategy="exhaustive")
    path = tmp_path / "f.json"
    F.dump(path)
    G = SetFamily.load(path)
    assert G.members == F.members and G.m == 8


def test_rejects_bad_members():
    with pytest.raises(ValueError):
        SetFamily(3, [1, 1])
    with pytest.raises(ValueError):
        SetFamily(3, [8])
