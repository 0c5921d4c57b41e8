"""Tests for the GF(p) rank kernels (compiled and pure fallback)."""

import numpy as np
import pytest

from quadrichk.gfp import BACKEND, choose_dtype, rank_mod_p
from quadrichk.gfp._fallback import panel_eliminate as pure_kernel

try:
    from quadrichk.gfp._speedups import panel_eliminate as compiled_kernel
except ImportError:  # pragma: no cover
    compiled_kernel = None

KERNELS = [pure_kernel] + ([compiled_kernel] if compiled_kernel else [])


def reference_rank(matrix: np.ndarray, p: int) -> int:
    """Plain integer Gaussian elimination, written independently."""
    rows = [[int(x) % p for x in row] for row in matrix]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    for col in range(ncols):
        piv = next(
            (i for i in range(rank, len(rows)) if rows[i][col] % p != 0), None
        )
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                c = rows[i][col]
                rows[i] = [
                    (v - c * w) % p for v, w in zip(rows[i], rows[rank])
                ]
        rank += 1
        if rank == len(rows):
            break
    return rank


class TestChooseDtype:
    def test_small_p_uses_float32(self):
        assert choose_dtype(13, 256) == np.float32

    def test_large_p_uses_float64(self):
        assert choose_dtype(1009, 256) == np.float64

    def test_huge_p_rejected(self):
        with pytest.raises(ValueError):
            choose_dtype(2**28, 256)


class TestRank:
    @pytest.mark.parametrize("kernel", KERNELS)
    @pytest.mark.parametrize("p", [3, 5, 13, 101])
    def test_random_matrices_match_reference(self, kernel, p):
        rng = np.random.default_rng(20260826 + p)
        for trial in range(8):
            m = rng.integers(3, 40)
            n = rng.integers(3, 40)
            mat = rng.integers(0, p, size=(m, n))
            # Inject rank deficiency half the time.
            if trial % 2:
                mat[m // 2] = (mat[0] + 2 * mat[m - 1]) % p
            expected = reference_rank(mat, p)
            # Small panel exercises multi-panel Schur updates and U-row
            # reconstruction.
            assert rank_mod_p(mat, p, panel=4, kernel=kernel) == expected
            assert rank_mod_p(mat, p, panel=256, kernel=kernel) == expected

    @pytest.mark.parametrize("kernel", KERNELS)
    def test_row_permutation_invariance(self, kernel):
        rng = np.random.default_rng(7)
        mat = rng.integers(0, 7, size=(30, 25))
        base = rank_mod_p(mat, 7, kernel=kernel)
        for _ in range(4):
            perm = rng.permutation(30)
            assert rank_mod_p(mat[perm], 7, kernel=kernel) == base

    def test_kernels_agree_on_larger_matrix(self):
        if compiled_kernel is None:
            pytest.skip("compiled kernel unavailable")
        rng = np.random.default_rng(99)
        mat = rng.integers(0, 5, size=(300, 260))
        assert rank_mod_p(mat, 5, kernel=pure_kernel) == rank_mod_p(
            mat, 5, kernel=compiled_kernel
        )

    def test_edge_shapes(self):
        assert rank_mod_p(np.zeros((0, 5)), 5) == 0
        assert rank_mod_p(np.zeros((4, 4)), 5) == 0
        assert rank_mod_p(np.eye(6), 5) == 6

    def test_negative_entries(self):
        mat = np.array([[-1, 4], [4, -1]])  # -1 == 4 mod 5: rank 1
        assert rank_mod_p(mat, 5) == 1

    def test_backend_reported(self):
        assert BACKEND in ("compiled", "python")
