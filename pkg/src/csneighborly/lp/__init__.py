"""Dense two-phase tableau simplex.

The pivot loop runs in the compiled ``_kernel`` extension when it is
available and the tableau is double or long double; otherwise (or when
``CSNEIGHBORLY_PURE_PYTHON=1``) the numpy implementation in ``_kernel_py``
is used.  mpmath tableaux always take the numpy path.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .._precision import Precision, get_precision
from . import _kernel_py

try:
    if os.environ.get("CSNEIGHBORLY_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _kernel as _compiled
except ImportError:  # pragma: no cover - depends on build
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"

OPTIMAL, UNBOUNDED, ITERATION_LIMIT = 0, 1, 2
INFEASIBLE = 3

__all__ = ["BACKEND", "LPResult", "SolverError", "solve_lp", "run_phase", "tolerance_for"]


class SolverError(ArithmeticError):
    """The simplex method failed numerically (iteration limit, lost feasibility)."""


@dataclass
class LPResult:
    status: int
    x: np.ndarray | None
    objective: object
    iterations: int

    @property
    def ok(self) -> bool:
        return self.status == OPTIMAL


def tolerance_for(precision: Precision) -> float:
    """Pivot/optimality tolerance: ``eps^(3/4)`` of the working format."""
    return float(precision.eps) ** 0.75


def run_phase(T, basis, ncols, tol, max_iter, bland_after=50, backend=None):
    backend = backend or BACKEND
    if backend == "compiled" and _compiled is not None and T.dtype in (np.float64, np.longdouble):
        return _compiled.run_phase(T, basis, ncols, tol, max_iter, bland_after)
    return _kernel_py.run_phase(T, basis, ncols, tol, max_iter, bland_after)


def solve_lp(c, A_ub, b_ub, A_eq=None, b_eq=None, precision: Precision | None = None,
             max_iter: int | None = None, bland_after: int = 50, backend: str | None = None) -> LPResult:
    """Maximize ``c @ x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``, ``x >= 0``.

    Inputs are arrays in ``precision``'s dtype (they are converted if not).
    Phase one is entered only when some row needs an artificial variable
    (negative right-hand side or an equality).  Returns an :class:`LPResult`;
    ``status`` is ``OPTIMAL``, ``UNBOUNDED`` or ``INFEASIBLE``.  Raises
    :class:`SolverError` when an iteration limit is hit.
    """
    precision = precision or get_precision()
    dt = precision.dtype
    zero = precision.scalar(0)
    one = precision.scalar(1)

    def _as(a, shape0=None):
        a = np.asarray(a)
        if a.dtype != dt:
            a = precision.convert(a)
        return a

    c = _as(c)
    n = c.shape[0]
    A_ub = _as(A_ub).reshape(-1, n) if A_ub is not None else precision.zeros((0, n))
    b_ub = _as(b_ub).reshape(-1) if b_ub is not None else precision.zeros(0)
    A_eq = _as(A_eq).reshape(-1, n) if A_eq is not None else precision.zeros((0, n))
    b_eq = _as(b_eq).reshape(-1) if b_eq is not None else precision.zeros(0)

    rows = []  # (coefficients, rhs, kind) with kind in {"le", "ge", "eq"}, rhs >= 0
    for a, b in zip(A_ub, b_ub):
        rows.append((a, b, "le") if b >= 0 else (-a, -b, "ge"))
    for a, b in zip(A_eq, b_eq):
        rows.append((a, b, "eq") if b >= 0 else (-a, -b, "eq"))
    R = len(rows)
    n_slack = sum(kind != "eq" for _, _, kind in rows)
    n_art = sum(kind != "le" for _, _, kind in rows)
    ncols = n + n_slack + n_art
    T = precision.zeros((R + 1, ncols + 1))
    basis = np.zeros(R, dtype=np.intp)
    s = n
    art = n + n_slack
    art_rows = []
    for i, (a, b, kind) in enumerate(rows):
        T[i, :n] = a
        T[i, ncols] = b
        if kind == "le":
            T[i, s] = one
            basis[i] = s
            s += 1
        else:
            if kind == "ge":
                T[i, s] = -one
                s += 1
            T[i, art] = one
            basis[i] = art
            art_rows.append(i)
            art += 1

    tol = tolerance_for(precision)
    max_iter = max_iter or 50 * (R + ncols + 10)
    iterations = 0

    if art_rows:
        # phase one: maximize -(sum of artificials)
        T[R, n + n_slack:ncols] = one
        for i in art_rows:
            T[R] = T[R] - T[i]
        status, it = run_phase(T, basis, ncols, tol, max_iter, bland_after, backend)
        iterations += it
        if status == ITERATION_LIMIT:
            raise SolverError("phase one hit the iteration limit")
        if T[R, ncols] < -tol * max(1, R):
            return LPResult(INFEASIBLE, None, None, iterations)
        # drive artificials out of the basis, dropping redundant rows
        keep = []
        for i in range(R):
            if basis[i] >= n + n_slack:
                cols = np.flatnonzero(np.asarray(abs(T[i, :n + n_slack]) > tol, dtype=bool))
                if cols.size == 0:
                    continue
                e = int(cols[0])
                T[i] = T[i] / T[i, e]
                for r in range(R + 1):
                    if r != i and T[r, e] != 0:
                        T[r] = T[r] - T[r, e] * T[i]
                basis[i] = e
            keep.append(i)
        T = np.ascontiguousarray(np.concatenate([T[keep], T[R:R + 1]])[:, list(range(n + n_slack)) + [ncols]])
        basis = np.ascontiguousarray(basis[keep])
        R = len(keep)
        ncols = n + n_slack

    # phase two objective row: -c priced out over the current basis
    T[R, :] = zero
    T[R, :n] = -c
    for i in range(R):
        j = basis[i]
        if j < n and c[j] != 0:
            T[R] = T[R] + c[j] * T[i]
    status, it = run_phase(T, basis, ncols, tol, max_iter, bland_after, backend)
    iterations += it
    if status == ITERATION_LIMIT:
        raise SolverError("phase two hit the iteration limit")
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, None, None, iterations)
    x = precision.zeros(n)
    for i in range(R):
        if basis[i] < n:
            x[basis[i]] = T[i, ncols]
    return LPResult(OPTIMAL, x, T[R, ncols], iterations)
