import cmath
import math
import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from csneighborly._precision import get_precision
from csneighborly.circle import CirclePoint
from csneighborly.curves import CurveSpec, eval_many
from csneighborly.seeds import build_A
from csneighborly.trigpoly import (
    TrigPoly,
    count_roots_on_circle,
    eval_lift_on_circle,
    eval_trig,
    lift,
    pullback,
)

EXT = get_precision(80)


def P(num, den=1):
    return CirclePoint.from_pi(num, den)


def random_poly(rng, d, exact=False):
    if exact:
        coef = lambda: Fraction(rng.randint(-50, 50), rng.randint(1, 20))  # noqa: E731
    else:
        coef = lambda: rng.uniform(-1, 1)  # noqa: E731
    return TrigPoly(coef(), tuple(coef() for _ in range(d)), tuple(coef() for _ in range(d)))


@pytest.mark.parametrize("f,t,expected", [
    (TrigPoly.from_terms(0, cos={1: 1}), P(0), 1),
    (TrigPoly.from_terms(0, sin={3: 1}), P(1, 6), 1),
    (TrigPoly.from_terms(1, cos={1: 1}), P(1), 0),
])
def test_eval_examples(f, t, expected):
    assert abs(eval_trig(f, t, EXT) - expected) < 1e-18
    assert abs(eval_trig(f, t.angle) - expected) < 1e-12


def test_lift_cos():
    L = lift(TrigPoly.from_terms(Fraction(0), cos={1: Fraction(1)}))
    assert L.real == (Fraction(1, 2), 0, Fraction(1, 2))
    assert all(x == 0 for x in L.imag)
    assert abs(L(1j)) < 1e-15 and abs(L(-1j)) < 1e-15


def test_lift_constant():
    L = lift(TrigPoly(Fraction(5), (), ()))
    assert L.real == (Fraction(5),) and L.imag == (Fraction(0),)


def test_lift_sin():
    # (z^2 - 1) / 2i = (i/2) - (i/2) z^2
    L = lift(TrigPoly.from_terms(Fraction(0), sin={1: Fraction(1)}))
    assert L.imag == (Fraction(1, 2), 0, Fraction(-1, 2))
    assert all(x == 0 for x in L.real)
    assert abs(L(1)) < 1e-15 and abs(L(-1)) < 1e-15


def test_lift_self_inversive_exact():
    rng = random.Random(4)
    for _ in range(100):
        f = random_poly(rng, rng.randint(0, 6), exact=True)
        assert lift(f).is_self_inversive(0)


def test_lift_modulus_double():
    rng = random.Random(5)
    for _ in range(200):
        f = random_poly(rng, rng.randint(1, 8))
        t = rng.uniform(0, 2 * math.pi)
        assert abs(abs(eval_lift_on_circle(lift(f), t)) - abs(eval_trig(f, t))) < 1e-12


def test_lift_modulus_extended():
    rng = random.Random(6)
    prec = get_precision(128)
    mp = mpmath.mp.clone() if hasattr(mpmath.mp, "clone") else mpmath.MPContext()
    mp.prec = 160
    for _ in range(50):
        f = random_poly(rng, rng.randint(1, 6), exact=True)
        t = P(rng.randrange(0, 2000), 1000)
        L = lift(f)
        z = mp.expjpi(mp.mpf(t.q.numerator) / t.q.denominator)
        acc = mp.mpc(0)
        for j in range(len(L.real) - 1, -1, -1):
            acc = acc * z + mp.mpc(mp.mpf(L.real[j].numerator) / L.real[j].denominator,
                                   mp.mpf(L.imag[j].numerator) / L.imag[j].denominator)
        assert abs(abs(acc) - abs(eval_trig(f, t, prec))) < 1e-25


def test_root_correspondence():
    # a root of f on the circle is a root of the lift and vice versa
    f = TrigPoly.from_terms(0.0, cos={3: 1.0})
    L = lift(f)
    for j in range(6):
        t = math.pi / 6 + j * math.pi / 3
        assert abs(eval_trig(f, t)) < 1e-14
        assert abs(L(cmath.exp(1j * t))) < 1e-14


@pytest.mark.parametrize("f,grid,expected", [
    (TrigPoly.from_terms(0.0, cos={1: 1.0}), 16, 2),
    (TrigPoly.from_terms(0.0, sin={3: 1.0}), 24, 6),
])
def test_count_roots_examples(f, grid, expected):
    assert count_roots_on_circle(f, grid) == expected


def test_count_roots_bound_random():
    rng = random.Random(8)
    for _ in range(100):
        d = rng.randint(1, 9)
        f = random_poly(rng, d)
        assert count_roots_on_circle(f, 64 * d) <= 2 * d


def test_count_roots_grid_precondition():
    with pytest.raises(ValueError):
        count_roots_on_circle(TrigPoly.from_terms(0.0, cos={4: 1.0}), 8)


def test_pullback_sign_pattern_matches_functional():
    # hyperplane-curve duality on the seeds of A_3
    rng = random.Random(9)
    spec = CurveSpec.Phi(3)
    seeds = build_A(3)
    V = eval_many(spec, seeds.angles, EXT)
    for _ in range(20):
        c = [Fraction(rng.randint(-100, 100), 100) for _ in range(spec.ambient_dim)]
        b = Fraction(rng.randint(-100, 100), 100)
        f = pullback(spec, c, b)
        assert f.degree == 27
        vals = V.dot(np.array([EXT.scalar(x) for x in c])) - EXT.scalar(b)
        for p, v in zip(seeds.angles, vals):
            w = eval_trig(f, p, EXT)
            assert abs(w - v) < 1e-15
            assert (w > 0) == (v > 0) or abs(v) < 1e-15


def test_pullback_length_check():
    with pytest.raises(ValueError):
        pullback(CurveSpec.Phi(2), [1, 2, 3], 0)
