"""Pure numpy panel factorization kernel (fallback for the C extension).

Contract shared with ``_speedups.panel_eliminate``: factorize columns
[c0, c1) of ``mat`` in place starting at row ``r0``, with full-row pivot
swaps.  Pivot rows are scaled to unit pivots on the panel segment only;
multipliers are stored (reduced mod p) in place of the eliminated entries;
axpy updates inside the panel are left unreduced (the driver's dtype choice
guarantees they stay exact).  Returns the pivot column indices and the
pivot-inverse scales, which the driver replays on the trailing columns.
"""

from __future__ import annotations

import numpy as np


def panel_eliminate(mat: np.ndarray, r0: int, c0: int, c1: int, p: int):
    m = mat.shape[0]
    r = r0
    piv_cols: list[int] = []
    scales: list[int] = []
    for j in range(c0, c1):
        col = mat[r:, j]
        np.mod(col, p, out=col)
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            mat[[r, piv]] = mat[[piv, r]]
        inv = pow(int(mat[r, j]), p - 2, p)
        seg = mat[r, j:c1]
        seg *= inv
        np.mod(seg, p, out=seg)
        mults = mat[r + 1 :, j]
        if j + 1 < c1:
            mat[r + 1 :, j + 1 : c1] -= np.outer(mults, mat[r, j + 1 : c1])
        piv_cols.append(j)
        scales.append(inv)
        r += 1
        if r == m:
            break
    return piv_cols, scales
