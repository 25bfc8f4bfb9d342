# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled simplex phase for double and long double tableaux.

Same contract as ``_kernel_py.run_phase``.
"""

ctypedef fused real_t:
    double
    long double

cdef enum:
    OPTIMAL = 0
    UNBOUNDED = 1
    ITERATION_LIMIT = 2


def run_phase(real_t[:, ::1] T, Py_ssize_t[::1] basis, Py_ssize_t ncols, double tol,
              Py_ssize_t max_iter, Py_ssize_t bland_after):
    cdef Py_ssize_t R = T.shape[0] - 1
    cdef Py_ssize_t C = T.shape[1] - 1
    cdef Py_ssize_t it, i, j, e, r
    cdef bint bland = False
    cdef Py_ssize_t degenerate_run = 0
    cdef real_t t = <real_t> tol
    cdef real_t best, ratio, piv, f, colv, bestcol
    cdef int status = ITERATION_LIMIT

    with nogil:
        it = 0
        while it < max_iter:
            # entering column
            e = -1
            if bland:
                for j in range(ncols):
                    if T[R, j] < -t:
                        e = j
                        break
            else:
                best = -t
                for j in range(ncols):
                    if T[R, j] < best:
                        best = T[R, j]
                        e = j
            if e < 0:
                status = OPTIMAL
                break
            # ratio test
            r = -1
            best = 0
            for i in range(R):
                colv = T[i, e]
                if colv > t:
                    ratio = T[i, C] / colv
                    if r < 0 or ratio < best:
                        best = ratio
                        r = i
            if r < 0:
                status = UNBOUNDED
                break
            # tie break among near-minimal ratios
            bestcol = T[r, e]
            for i in range(R):
                colv = T[i, e]
                if colv > t and i != r:
                    ratio = T[i, C] / colv
                    if ratio <= best + t:
                        if bland:
                            if basis[i] < basis[r]:
                                r = i
                                bestcol = colv
                        elif colv > bestcol:
                            r = i
                            bestcol = colv
            if best <= t:
                degenerate_run += 1
                if degenerate_run >= bland_after:
                    bland = True
            else:
                degenerate_run = 0
            # pivot
            piv = T[r, e]
            for j in range(C + 1):
                T[r, j] = T[r, j] / piv
            for i in range(R + 1):
                if i != r:
                    f = T[i, e]
                    if f != 0:
                        for j in range(C + 1):
                            T[i, j] = T[i, j] - f * T[r, j]
                    T[i, e] = 0
            T[r, e] = 1
            for i in range(R):
                if T[i, C] < 0 and T[i, C] > -t:
                    T[i, C] = 0
            basis[r] = e
            it += 1
    return status, it
