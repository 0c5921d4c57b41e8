# cython: boundscheck=False, wraparound=False, initializedcheck=False
# cython: language_level=3
"""Compiled panel factorization kernel for blocked GF(p) elimination.

Same contract as ``_fallback.panel_eliminate``; see that module's docstring.
The inner axpy loop runs without modular reduction (the driver's dtype
choice keeps every intermediate exactly representable), so it compiles to a
plain vectorizable fused multiply-subtract.
"""

cimport cython


ctypedef fused real:
    float
    double


cdef inline long long _mod(long long v, long long p) noexcept nogil:
    v = v % p
    if v < 0:
        v += p
    return v


@cython.cdivision(True)
def panel_eliminate(real[:, ::1] mat, Py_ssize_t r0, Py_ssize_t c0,
                    Py_ssize_t c1, long long p):
    cdef Py_ssize_t m = mat.shape[0]
    cdef Py_ssize_t ncols = mat.shape[1]
    cdef Py_ssize_t r = r0
    cdef Py_ssize_t i, j, jj, piv
    cdef long long v, inv, mult
    cdef real tmp, multr

    piv_cols = []
    scales = []

    for j in range(c0, c1):
        piv = -1
        with nogil:
            # Reduce column j below the current pivot row; later axpys in
            # this panel never touch column j again, so these stay reduced
            # and double as the stored multipliers.
            for i in range(r, m):
                v = _mod(<long long> mat[i, j], p)
                mat[i, j] = <real> v
                if piv < 0 and v != 0:
                    piv = i
        if piv < 0:
            continue
        if piv != r:
            with nogil:
                for jj in range(ncols):
                    tmp = mat[r, jj]
                    mat[r, jj] = mat[piv, jj]
                    mat[piv, jj] = tmp
        inv = pow(<object> (<long long> mat[r, j]), p - 2, p)
        with nogil:
            # Scale the panel segment of the pivot row to a unit pivot.
            for jj in range(j, c1):
                mat[r, jj] = <real> _mod((<long long> mat[r, jj]) * inv, p)
            # Eliminate below within the panel, leaving values unreduced.
            for i in range(r + 1, m):
                multr = mat[i, j]
                if multr != 0:
                    for jj in range(j + 1, c1):
                        mat[i, jj] = mat[i, jj] - multr * mat[r, jj]
        piv_cols.append(j)
        scales.append(inv)
        r += 1
        if r == m:
            break
    return piv_cols, scales
