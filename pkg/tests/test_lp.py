import os
import random
import subprocess
import sys

import numpy as np
import pytest

from csneighborly import lp
from csneighborly._precision import get_precision
from csneighborly.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, solve_lp

scipy_optimize = pytest.importorskip("scipy.optimize")

BACKENDS = ["python"] + (["compiled"] if lp.BACKEND == "compiled" else [])


@pytest.mark.parametrize("bits", [64, 80, 128])
@pytest.mark.parametrize("backend", BACKENDS)
def test_small_lp(bits, backend):
    # max 3x + 2y s.t. x + y <= 4, x + 3y <= 6, x <= 3 -> (3, 1), value 11
    p = get_precision(bits)
    res = solve_lp([3, 2], [[1, 1], [1, 3], [1, 0]], [4, 6, 3], precision=p, backend=backend)
    assert res.status == OPTIMAL
    assert abs(float(res.objective) - 11) < 1e-12
    assert np.allclose(p.to_float(res.x), [3, 1])


@pytest.mark.parametrize("backend", BACKENDS)
def test_equality_and_phase_one(backend):
    # max x + y s.t. x + y + z = 5, x - y >= -1 (i.e. -x + y <= 1), x <= 2
    res = solve_lp([1, 1, 0], [[-1, 1, 0], [1, 0, 0]], [1, 2], A_eq=[[1, 1, 1]], b_eq=[5], backend=backend)
    assert res.status == OPTIMAL
    assert abs(float(res.objective) - 5) < 1e-12


@pytest.mark.parametrize("backend", BACKENDS)
def test_infeasible_and_unbounded(backend):
    assert solve_lp([1], [[1], [-1]], [1, -2], backend=backend).status == INFEASIBLE
    assert solve_lp([1, 1], [[1, -1]], [1], backend=backend).status == UNBOUNDED


@pytest.mark.parametrize("backend", BACKENDS)
def test_beale_cycling_example(backend):
    # Dantzig's rule cycles here without an anti-cycling fallback
    c = [0.75, -20, 0.5, -6]
    A = [[0.25, -8, -1, 9], [0.5, -12, -0.5, 3], [0, 0, 1, 0]]
    res = solve_lp(c, A, [0, 0, 1], backend=backend, bland_after=5)
    assert res.status == OPTIMAL
    assert abs(float(res.objective) - 1.25) < 1e-12


def _random_lp(rng, n, r):
    A = rng.uniform(-1, 1, size=(r, n))
    b = rng.uniform(0, 1, size=r)
    A = np.vstack([A, np.eye(n)])  # keep it bounded
    b = np.concatenate([b, np.ones(n)])
    c = rng.uniform(-1, 1, size=n)
    return c, A, b


def test_matches_reference_solver():
    rng = np.random.default_rng(12)
    for _ in range(40):
        n, r = rng.integers(2, 8), rng.integers(1, 10)
        c, A, b = _random_lp(rng, n, r)
        ref = scipy_optimize.linprog(-c, A_ub=A, b_ub=b, bounds=[(0, None)] * n, method="highs")
        for backend in BACKENDS:
            res = solve_lp(c, A, b, precision=get_precision(64), backend=backend)
            assert res.status == OPTIMAL
            assert abs(float(res.objective) + ref.fun) < 1e-9


@pytest.mark.skipif(lp.BACKEND != "compiled", reason="compiled kernel not built")
@pytest.mark.parametrize("bits", [64, 80])
def test_backends_agree_exactly(bits):
    # same pivot rule, same arithmetic -> same tableau
    rng = np.random.default_rng(bits)
    p = get_precision(bits)
    for _ in range(20):
        n, r = rng.integers(2, 8), rng.integers(1, 10)
        c, A, b = _random_lp(rng, n, r)
        a = solve_lp(p.convert(c), p.convert(A), p.convert(b), precision=p, backend="python")
        z = solve_lp(p.convert(c), p.convert(A), p.convert(b), precision=p, backend="compiled")
        assert a.iterations == z.iterations
        assert abs(a.objective - z.objective) <= 64 * p.eps * max(1, abs(a.objective))


def test_pure_python_switch():
    env = dict(os.environ, CSNEIGHBORLY_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from csneighborly import lp; print(lp.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"


def test_iteration_limit_raises():
    rng = np.random.default_rng(1)
    c, A, b = _random_lp(rng, 6, 8)
    with pytest.raises(lp.SolverError):
        solve_lp(c, A, b, max_iter=1)
