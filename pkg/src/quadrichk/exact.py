"""Exact scalar and polynomial arithmetic.

Everything downstream (ladder coefficients, density functions, HK
multiplicities) is built from the primitives here: big rationals, binomial
coefficients, graded dimension counters for projective space and the smooth
quadric, zigzag (sec+tan) series coefficients, and piecewise polynomials
with exact integration.  No floating point anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

# The universal scalar.  ``fractions.Fraction`` already guarantees lowest
# terms and a positive denominator, which is exactly the contract we need.
Rational = Fraction

RationalLike = Union[int, Fraction]


def binomial(m: int, k: int) -> int:
    """C(m, k), with C(m, k) = 0 whenever k < 0, m < 0 or m < k.

    The zero convention is load-bearing: dimension counters evaluated at
    negative degree must vanish, and several ladder formulas rely on that.
    """
    if k < 0 or m < 0 or m < k:
        return 0
    return math.comb(m, k)


def dim_projective(N: int, m: int) -> int:
    """Dimension of the degree-m graded piece of k[x_0..x_N]: C(m+N, N)."""
    if N < 1:
        raise ValueError(f"ambient dimension must be >= 1, got {N}")
    return binomial(m + N, N) if m >= 0 else 0


def dim_quadric(n: int, m: int) -> int:
    """Dimension of the degree-m piece of a smooth (n+2)-variable quadric ring.

    Y_m = C(m+n+1, n+1) - C(m+n-1, n+1) for m >= 0, and 0 for m < 0.
    """
    if n < 3:
        raise ValueError(f"quadric dimension must be >= 3, got {n}")
    if m < 0:
        return 0
    return binomial(m + n + 1, n + 1) - binomial(m + n - 1, n + 1)


def spinor_rank(n: int) -> int:
    """Rank of the (sum of the) spinor bundle(s) on an n-dimensional quadric."""
    return 2 ** (n // 2)


def dim_spinor(n: int, m: int) -> int:
    """Global sections of the twisted spinor bundle S(m) on Q_n.

    Equals 2^(floor(n/2)+1) * (X_{m-1} - X_{m-2}) with X taken over P^{n+1};
    zero for m <= 0.
    """
    if m <= 0:
        return 0
    two_lambda0 = 2 * spinor_rank(n)
    return two_lambda0 * (dim_projective(n + 1, m - 1) - dim_projective(n + 1, m - 2))


def _zigzag_numbers(d: int) -> list[int]:
    """Zigzag numbers A_0..A_d via the boustrophedon (Entringer) triangle."""
    out = [1]
    row = [1]
    for k in range(1, d + 1):
        prev = row
        row = [0]
        for j in range(1, k + 1):
            row.append(row[j - 1] + prev[k - j])
        out.append(row[k])
    return out


def sec_tan_coefficient(d: int) -> Fraction:
    """Coefficient of x^d in the Maclaurin series of sec(x) + tan(x)."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    return Fraction(_zigzag_numbers(d)[d], math.factorial(d))


class Polynomial:
    """Dense univariate polynomial with rational coefficients.

    Coefficients are stored lowest degree first with no trailing zeros;
    the zero polynomial has an empty coefficient tuple.  Immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def shifted_power(cls, c: RationalLike, d: int) -> "Polynomial":
        """(x - c)^d expanded by the binomial theorem."""
        c = Fraction(c)
        return cls(binomial(d, j) * (-c) ** (d - j) for j in range(d + 1))

    @property
    def degree(self) -> int:
        """Degree, with the convention deg 0 = -1."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial(
            [x + y for x, y in zip(a, b)] + list(a[len(b):])
        )

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: Union["Polynomial", RationalLike]) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial(c * other for c in self.coeffs)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __call__(self, x: RationalLike) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def antiderivative(self) -> "Polynomial":
        return Polynomial(
            [Fraction(0)] + [c / (i + 1) for i, c in enumerate(self.coeffs)]
        )

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Polynomial(0)"
        terms = ", ".join(str(c) for c in self.coeffs)
        return f"Polynomial([{terms}])"


class PiecewisePolynomial:
    """Piecewise polynomial on [b_0, b_k), one polynomial per half-open piece.

    Value is 0 outside the covered interval.  Breakpoints are strictly
    increasing rationals; the object is immutable once built.
    """

    __slots__ = ("breakpoints", "pieces")

    def __init__(
        self,
        breakpoints: Sequence[RationalLike],
        pieces: Sequence[Polynomial],
    ):
        bps = tuple(Fraction(b) for b in breakpoints)
        if len(pieces) != max(len(bps) - 1, 0):
            raise ValueError("need exactly one piece per breakpoint interval")
        if any(bps[i] >= bps[i + 1] for i in range(len(bps) - 1)):
            raise ValueError("breakpoints must be strictly increasing")
        self.breakpoints = bps
        self.pieces = tuple(pieces)

    @classmethod
    def empty(cls) -> "PiecewisePolynomial":
        return cls((), ())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PiecewisePolynomial):
            return (
                self.breakpoints == other.breakpoints
                and self.pieces == other.pieces
            )
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.breakpoints, self.pieces))

    def piece_at(self, x: RationalLike) -> Polynomial | None:
        """The polynomial governing x, or None outside the domain."""
        x = Fraction(x)
        bps = self.breakpoints
        if not bps or x < bps[0] or x >= bps[-1]:
            return None
        lo, hi = 0, len(bps) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if x < bps[mid]:
                hi = mid
            else:
                lo = mid
        return self.pieces[lo]

    def __call__(self, x: RationalLike) -> Fraction:
        piece = self.piece_at(x)
        return piece(x) if piece is not None else Fraction(0)

    def is_continuous(self) -> bool:
        """Exact two-sided agreement at every interior breakpoint."""
        for i in range(1, len(self.breakpoints) - 1):
            b = self.breakpoints[i]
            if self.pieces[i - 1](b) != self.pieces[i](b):
                return False
        return True

    def refine(self, extra: Iterable[RationalLike]) -> "PiecewisePolynomial":
        """Insert breakpoints (values unchanged); points outside are ignored."""
        if not self.breakpoints:
            return self
        bps = set(self.breakpoints)
        for x in extra:
            x = Fraction(x)
            if self.breakpoints[0] < x < self.breakpoints[-1]:
                bps.add(x)
        new_bps = sorted(bps)
        new_pieces = [self.piece_at(b) for b in new_bps[:-1]]
        return PiecewisePolynomial(new_bps, new_pieces)

    def integral(self, lo: RationalLike, hi: RationalLike) -> Fraction:
        """Exact integral over [lo, hi] (clipped to the domain)."""
        lo, hi = Fraction(lo), Fraction(hi)
        if not self.breakpoints or hi <= lo:
            return Fraction(0)
        total = Fraction(0)
        bps = self.breakpoints
        for i, poly in enumerate(self.pieces):
            a, b = max(bps[i], lo), min(bps[i + 1], hi)
            if a < b:
                anti = poly.antiderivative()
                total += anti(b) - anti(a)
        return total

    def integrate(self) -> Fraction:
        """Exact integral over the whole domain."""
        if not self.breakpoints:
            return Fraction(0)
        return self.integral(self.breakpoints[0], self.breakpoints[-1])

    def agrees_with(
        self,
        other: "PiecewisePolynomial",
        exclude: tuple[RationalLike, RationalLike] | None = None,
    ) -> bool:
        """Piecewise-exact equality, optionally ignoring one open interval."""
        if not self.breakpoints and not other.breakpoints:
            return True
        cut = set(self.breakpoints) | set(other.breakpoints)
        a = self.refine(cut)
        b = other.refine(cut)
        if a.breakpoints != b.breakpoints:
            return False
        for i, (pa, pb) in enumerate(zip(a.pieces, b.pieces)):
            if exclude is not None:
                lo, hi = Fraction(exclude[0]), Fraction(exclude[1])
                # Skip pieces fully inside the excluded interval.
                if lo <= a.breakpoints[i] and a.breakpoints[i + 1] <= hi:
                    continue
            if pa != pb:
                return False
        return True

    def __repr__(self) -> str:
        return (
            f"PiecewisePolynomial(breakpoints={[str(b) for b in self.breakpoints]}, "
            f"pieces={len(self.pieces)})"
        )


def integrate(f: PiecewisePolynomial) -> Fraction:
    """Exact integral of a piecewise polynomial over its domain."""
    return f.integrate()
