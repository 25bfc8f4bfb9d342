"""Pure-Python simplex phase (numpy; any dtype including mpmath objects)."""

import numpy as np

OPTIMAL, UNBOUNDED, ITERATION_LIMIT = 0, 1, 2


def run_phase(T, basis, ncols, tol, max_iter, bland_after):
    """Pivot the tableau ``T`` in place until optimal.

    ``T`` has one row per constraint plus a final objective row holding
    reduced costs (negative entries improve the objective) and a final
    right-hand-side column.  Only columns ``< ncols`` may enter.  Dantzig's
    rule is used until ``bland_after`` consecutive degenerate pivots, then
    Bland's rule for the rest of the phase.

    Returns ``(status, iterations)``.
    """
    R = T.shape[0] - 1
    C = T.shape[1] - 1
    bland = False
    degenerate_run = 0
    neg_tol = -tol
    for it in range(max_iter):
        obj = T[R, :ncols]
        if bland:
            cand = np.flatnonzero(np.asarray(obj < neg_tol, dtype=bool))
            if cand.size == 0:
                return OPTIMAL, it
            e = int(cand[0])
        else:
            e = int(np.argmin(obj))
            if not obj[e] < neg_tol:
                return OPTIMAL, it
        col = T[:R, e]
        rhs = T[:R, C]
        rows = np.flatnonzero(np.asarray(col > tol, dtype=bool))
        if rows.size == 0:
            return UNBOUNDED, it
        ratios = rhs[rows] / col[rows]
        best = ratios.min()
        ties = rows[np.asarray(ratios <= best + tol, dtype=bool)]
        if bland or ties.size == 1:
            r = int(ties[np.argmin(basis[ties])])
        else:
            r = int(ties[np.argmax(col[ties])])
        if best <= tol:
            degenerate_run += 1
            if degenerate_run >= bland_after:
                bland = True
        else:
            degenerate_run = 0
        pivot_col = T[:, e].copy()
        T[r] = T[r] / pivot_col[r]
        pivot_col[r] = 0
        T -= np.outer(pivot_col, T[r])
        T[:, e] = 0
        T[r, e] = 1
        # clamp round-off that would make a basic variable negative
        neg = np.flatnonzero(np.asarray(T[:R, C] < 0, dtype=bool))
        for i in neg:
            if T[i, C] > neg_tol:
                T[i, C] = T[i, C] * 0
        basis[r] = e
    return ITERATION_LIMIT, max_iter
