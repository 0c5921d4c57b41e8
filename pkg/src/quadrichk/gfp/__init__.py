"""Dense rank computation over GF(p) with a compiled panel kernel.

The hot inner loop (panel factorization of a blocked LU) is provided both as
a Cython extension (``_speedups``) and as a pure numpy fallback
(``_fallback``); whichever is importable is selected at import time and
reported in ``BACKEND``.  Trailing Schur updates run as exact float matrix
products reduced mod p, with the dtype chosen so no product can lose integer
precision.
"""

from __future__ import annotations

import numpy as np

try:
    from ._speedups import panel_eliminate as _compiled_panel

    panel_eliminate = _compiled_panel
    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on build environment
    from ._fallback import panel_eliminate as _fallback_panel

    panel_eliminate = _fallback_panel
    BACKEND = "python"

#: Column-stripe width for trailing updates, bounding temporary memory.
_STRIPE = 4096


def choose_dtype(p: int, panel: int) -> type:
    """Smallest float dtype in which all intermediate values stay exact.

    Entries accumulate at most ``panel`` unreduced updates of magnitude
    (p-1)^2 on top of a reduced value, and matrix products sum at most
    ``panel`` terms of magnitude (p-1)^2; both must fit in the integer
    range of the dtype (2^24 for float32, 2^53 for float64).
    """
    bound = (p - 1) + panel * (p - 1) ** 2
    if bound < 2**24:
        return np.float32
    if bound < 2**53:
        return np.float64
    raise ValueError(f"p = {p} too large for exact float arithmetic")


def rank_mod_p(
    matrix: np.ndarray,
    p: int,
    panel: int = 256,
    kernel=None,
    overwrite: bool = False,
) -> int:
    """Rank of an integer matrix over GF(p) by blocked Gaussian elimination.

    Entries must be exactly representable in the working dtype (see
    ``choose_dtype``); values already reduced mod p always are.  With
    ``overwrite`` a suitably-typed contiguous input is destroyed in place
    instead of copied.  ``kernel`` overrides the panel factorization routine
    (used by the benchmark to compare the compiled and pure kernels).
    """
    if p < 2:
        raise ValueError("p must be a prime >= 2")
    if kernel is None:
        kernel = panel_eliminate
    if matrix.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    m, ncols = matrix.shape
    if m == 0 or ncols == 0:
        return 0
    dtype = choose_dtype(p, panel)
    if overwrite and matrix.dtype == dtype and matrix.flags.c_contiguous:
        mat = matrix
    else:
        mat = np.ascontiguousarray(matrix, dtype=dtype)
    np.mod(mat, p, out=mat)

    r = 0
    c = 0
    while r < m and c < ncols:
        c1 = min(c + panel, ncols)
        piv_cols, scales = kernel(mat, r, c, c1, p)
        k = len(piv_cols)
        if k:
            piv = np.asarray(piv_cols, dtype=np.intp)
            # Rebuild the trailing segments of the k new U rows: replay the
            # stored multipliers against the rows above, then apply the
            # stored pivot-inverse scale.
            for t in range(k):
                row = r + t
                trail = mat[row, c1:]
                if t and trail.size:
                    trail -= mat[row, piv[:t]] @ mat[r:row, c1:]
                    np.mod(trail, p, out=trail)
                if scales[t] != 1 and trail.size:
                    trail *= scales[t]
                    np.mod(trail, p, out=trail)
            # Schur update of the block below, in column stripes.
            if r + k < m and c1 < ncols:
                low = mat[r + k :, piv]
                for s0 in range(c1, ncols, _STRIPE):
                    s1 = min(s0 + _STRIPE, ncols)
                    block = mat[r + k :, s0:s1]
                    block -= low @ mat[r : r + k, s0:s1]
                    np.mod(block, p, out=block)
        r += k
        c = c1
    return r
