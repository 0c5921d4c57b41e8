"""Brute-force GF(p) rank oracle for quadric colengths.

Computes the graded colength ell(R/m^[q])_d for R = k[x_0..x_{n+1}]/(f),
f = sum x_i^2, q = p^s, directly from ranks of multiplication matrices over
GF(p) — no decomposition theory is used, so this is an independent check of
the structural algorithms in :mod:`quadrichk.frobenius`.

The colength in degree d equals ``X_d - rank(Macaulay_d)`` where the
Macaulay matrix stacks the rows ``f * m`` (m of degree d-2) and
``x_i^q * m`` (m of degree d-q) in the monomial basis of degree d.  A
``literal`` path builds exactly that matrix.  The default fast path applies
rank-preserving reductions, each of which is plain linear algebra:

1.  The ``x_i^q * m`` rows are distinct monomials; eliminating them leaves
    ``rank = (X_d - A_d) + rank(f: A_{d-2} -> A_d)`` where A is the span of
    monomials with all exponents < q.
2.  Multiplication by f preserves exponent parities, so the matrix is block
    diagonal over parity classes; substituting e_i = eps_i + 2g_i turns each
    block into multiplication by y_0 + ... + y_{n+1} on monomials with
    exponent bounds (q+1)/2 (even slots) and (q-1)/2 (odd slots).
3.  Permuting variables identifies all classes of equal parity weight.
4.  Each bounded-exponent algebra is a tensor product of k[y]/(y^B) and
    carries a perfect pairing; multiplication ranks are symmetric about the
    middle degree, halving the work.

Reductions 1-4 are themselves validated against the literal path in the
test suite.  Matrix sizes are capped by a resource ceiling (parameter,
``HKQ_CEILING`` env var, or the built-in default, in that order).
"""

from __future__ import annotations

import itertools
import os
from functools import lru_cache
from typing import Iterator

import numpy as np

from .exact import binomial, dim_projective
from .frobenius import QuadricContext
from .gfp import choose_dtype, rank_mod_p

DEFAULT_CEILING = 32768


class CeilingExceededError(RuntimeError):
    """A required rank computation exceeds the resource ceiling."""


def _resolve_ceiling(ceiling: int | None) -> int:
    if ceiling is not None:
        return int(ceiling)
    env = os.environ.get("HKQ_CEILING")
    if env is not None:
        return int(env)
    return DEFAULT_CEILING


def bounded_count(bounds: tuple[int, ...], k: int) -> int:
    """Number of monomials of degree k with exponent i below bounds[i]."""
    if k < 0:
        return 0
    nv = len(bounds)
    # Inclusion-exclusion over the subset of variables that overflow.
    # Bounds take at most two distinct values here, so group them.
    values = sorted(set(bounds))
    counts = [sum(1 for b in bounds if b == v) for v in values]
    total = 0
    ranges = [range(c + 1) for c in counts]
    for pick in itertools.product(*ranges):
        sign = (-1) ** sum(pick)
        coeff = 1
        shift = 0
        for v, c, a in zip(values, counts, pick):
            coeff *= binomial(c, a)
            shift += a * v
        total += sign * coeff * binomial(k - shift + nv - 1, nv - 1)
    return total


def bounded_monomials(bounds: tuple[int, ...], k: int) -> Iterator[tuple[int, ...]]:
    """Monomials of degree k with exponents below bounds, in lex order."""
    nv = len(bounds)

    def rec(pos: int, remaining: int, prefix: tuple[int, ...]):
        if pos == nv - 1:
            if remaining < bounds[pos]:
                yield prefix + (remaining,)
            return
        tail_cap = sum(b - 1 for b in bounds[pos + 1 :])
        lo = max(0, remaining - tail_cap)
        hi = min(bounds[pos] - 1, remaining)
        for e in range(hi, lo - 1, -1):
            yield from rec(pos + 1, remaining - e, prefix + (e,))

    if k >= 0:
        yield from rec(0, k, ())


def _linear_mult_matrix(
    bounds: tuple[int, ...], k: int, dtype
) -> np.ndarray:
    """Matrix of multiplication by y_0+...+y_{nv-1} from degree k-1 to k."""
    rows = list(bounded_monomials(bounds, k - 1))
    col_index = {m: i for i, m in enumerate(bounded_monomials(bounds, k))}
    mat = np.zeros((len(rows), len(col_index)), dtype=dtype)
    ridx: list[int] = []
    cidx: list[int] = []
    for i, mono in enumerate(rows):
        for v, e in enumerate(mono):
            if e + 1 < bounds[v]:
                target = mono[:v] + (e + 1,) + mono[v + 1 :]
                ridx.append(i)
                cidx.append(col_index[target])
    mat[ridx, cidx] = 1
    return mat


@lru_cache(maxsize=None)
def _block_rank(nv: int, w: int, q: int, k: int, p: int, ceiling: int) -> int:
    """Rank of y-multiplication on the weight-w parity class in degree k."""
    bounds = ((q + 1) // 2,) * (nv - w) + ((q - 1) // 2,) * w
    socle = sum(b - 1 for b in bounds)
    if k < 1 or k > socle:
        return 0
    # Tensor-product duality: the rank from degree k-1 to k equals the rank
    # from degree socle-k to socle-k+1.
    k = min(k, socle + 1 - k)
    ncols = bounded_count(bounds, k)
    nrows = bounded_count(bounds, k - 1)
    size = max(nrows, ncols)
    if size > ceiling:
        raise CeilingExceededError(
            f"block of size {nrows} x {ncols} exceeds ceiling {ceiling} "
            f"(q={q}, parity weight {w}, degree {k})"
        )
    if nrows == 0 or ncols == 0:
        return 0
    mat = _linear_mult_matrix(bounds, k, choose_dtype(p, 256))
    return rank_mod_p(mat, p, overwrite=True)


def oracle_graded_length(
    n: int, p: int, s: int, d: int, ceiling: int | None = None
) -> int:
    """Graded colength ell(R_{p,n+1}/m^[p^s])_d by GF(p) rank computation."""
    ctx = QuadricContext(n, p)
    if s < 1:
        raise ValueError("s must be >= 1")
    if d < 0:
        return 0
    q = ctx.q(s)
    nv = n + 2
    cap = _resolve_ceiling(ceiling)
    free = bounded_count((q,) * nv, d)
    rank = 0
    for w in range(d % 2, nv + 1, 2):
        k = (d - w) // 2
        if k < 1:
            continue
        rank += binomial(nv, w) * _block_rank(nv, w, q, k, p, cap)
    return free - rank


def oracle_total_colength(n: int, p: int, s: int, ceiling: int | None = None) -> int:
    """Total colength ell(R_{p,n+1}/m^[p^s]) by summing graded pieces.

    Sums from degree 0 upward and stops after three consecutive zeros
    (the support is an initial segment, so this is a safe stopping rule,
    itself checked against the hard bound d <= (n+2)(q-1))."""
    total = 0
    zeros = 0
    d = 0
    hard_stop = (n + 2) * (p**s - 1) + 1
    while zeros < 3 and d <= hard_stop + 3:
        piece = oracle_graded_length(n, p, s, d, ceiling=ceiling)
        if piece == 0 and d > 0:
            zeros += 1
        else:
            zeros = 0
        total += piece
        d += 1
    return total


def max_block_columns(n: int, p: int, s: int) -> int:
    """Largest rank-block dimension the fast path would need for (n, p, s).

    Used to predict resource-ceiling violations without allocating anything;
    block sizes are unimodal in the degree, so the middle degree is enough.
    """
    q = p**s
    nv = n + 2
    worst = 0
    for w in range(nv + 1):
        bounds = ((q + 1) // 2,) * (nv - w) + ((q - 1) // 2,) * w
        socle = sum(b - 1 for b in bounds)
        mid = (socle + 1) // 2
        worst = max(worst, bounded_count(bounds, mid))
    return worst


# ---------------------------------------------------------------------------
# Literal path: the unreduced Macaulay matrix, for validating the reductions.
# ---------------------------------------------------------------------------


def _monomials(nv: int, d: int) -> Iterator[tuple[int, ...]]:
    yield from bounded_monomials((d + 1,) * nv, d)


def macaulay_matrix(n: int, p: int, s: int, d: int) -> np.ndarray:
    """The literal degree-d Macaulay matrix of (f, x_0^q, ..., x_{n+1}^q)."""
    nv = n + 2
    q = p**s
    cols = {m: i for i, m in enumerate(_monomials(nv, d))}
    rows: list[dict[int, int]] = []
    if d >= 2:
        for mono in _monomials(nv, d - 2):
            row: dict[int, int] = {}
            for v in range(nv):
                target = mono[:v] + (mono[v] + 2,) + mono[v + 1 :]
                row[cols[target]] = row.get(cols[target], 0) + 1
            rows.append(row)
    if d >= q:
        for mono in _monomials(nv, d - q):
            for v in range(nv):
                target = mono[:v] + (mono[v] + q,) + mono[v + 1 :]
                rows.append({cols[target]: 1})
    mat = np.zeros((len(rows), len(cols)), dtype=np.float64)
    for i, row in enumerate(rows):
        for jcol, val in row.items():
            mat[i, jcol] = val % p
    return mat


def oracle_graded_length_literal(n: int, p: int, s: int, d: int) -> int:
    """Graded colength from the literal Macaulay matrix (small inputs only)."""
    QuadricContext(n, p)
    if d < 0:
        return 0
    total = dim_projective(n + 1, d)
    mat = macaulay_matrix(n, p, s, d)
    if mat.shape[0] == 0:
        return total
    return total - rank_mod_p(mat, p)
