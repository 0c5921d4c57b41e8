"""Hilbert-Kunz density functions and multiplicities for quadrics.

Builds the density function f_{R_{p,n+1}} (and its p -> infinity limit
f^infinity) as an exact piecewise polynomial, evaluates the n = 3 density on
its nested p-adic interval tree, integrates to HK multiplicities, and
computes F-thresholds.  All arithmetic is exact; approximate answers carry
certified brackets.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .exact import (
    PiecewisePolynomial,
    Polynomial,
    Rational,
    sec_tan_coefficient,
)
from .frobenius import (
    OutOfScopeError,
    QuadricContext,
    _l_coeffs,
    _z_coeffs,
    decompose_s1,
)

RationalLike = int | Fraction


def z_limit_poly(n: int, i: int) -> Polynomial:
    """The limit function of Z^s_{-i}(floor(xq) - iq)/q^n on [i, i+1)."""
    acc = Polynomial.zero()
    for j, r in enumerate(_z_coeffs(n, i)):
        acc = acc + Polynomial.shifted_power(i - j, n) * r
    return acc * Fraction(2, math.factorial(n))


def l_limit_poly(n: int, i: int) -> Polynomial:
    """The limit function of L^s_{-i}(floor(xq) - iq)/q^n on [i, i+1)."""
    acc = Polynomial.zero()
    sign = (-1) ** n
    for j, s in enumerate(_l_coeffs(n, i)):
        # (i+1+j-x)^n = (-1)^n (x-(i+1+j))^n
        acc = acc + Polynomial.shifted_power(i + 1 + j, n) * (sign * s)
    return acc * Fraction(2, math.factorial(n))


@dataclass(frozen=True)
class DensityValue:
    """An exact value (lo == hi) or a certified enclosure [lo, hi]."""

    lo: Fraction
    hi: Fraction
    depth: int | None = None

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Fraction:
        if not self.exact:
            raise ValueError(f"value only enclosed in [{self.lo}, {self.hi}]")
        return self.lo


@dataclass(frozen=True)
class HKBracket:
    """Certified enclosure of a Hilbert-Kunz multiplicity."""

    lower: Fraction
    upper: Fraction
    method: str  # "exact" | "truncated" | "bracketed"
    depth: int | None = None

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ValueError("lower > upper")
        if self.method == "exact" and self.lower != self.upper:
            raise ValueError("exact bracket must be degenerate")

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def midpoint(self) -> Fraction:
        return (self.upper + self.lower) / 2


class N3IntervalTree:
    """Nested p-adic interval evaluator for the Q_3 density middle range.

    The middle range [2+P_1, 2+P_1+1/p) splits at every level j into an
    exactly-solved left piece [P_j, P_{j+1}), an exactly-solved right piece
    [P_{j+1}+1/p^{j+1}, P_j+1/p^j), and an unresolved core that shrinks
    geometrically onto x = 5/2.  The two integer constants mu and mu_bar
    drive the level weights mu * mu_bar^(i-1).
    """

    def __init__(self, p: int):
        if p < 5:
            raise OutOfScopeError(f"n=3 middle-range closed form needs p >= 5, got {p}")
        ctx = QuadricContext(3, p)
        p0 = (p - 1) // 2
        self.p = p
        self.mu = decompose_s1(ctx, p0 - 2, "O").mu[-1]
        self.mu_bar = decompose_s1(ctx, p0 - 1, "S").mu[-1]

    def P(self, j: int) -> Fraction:
        """P_j = ((p-1)/2p)(1 + 1/p + ... + 1/p^(j-1)) = (1 - p^-j)/2."""
        return Fraction(self.p**j - 1, 2 * self.p**j)

    def _head(self) -> Polynomial:
        # (3-x)^3/3
        return Polynomial.shifted_power(3, 3) * Fraction(-1, 3)

    def _term(self, i: int) -> Polynomial:
        # (4/3) (1/p^i + P_i + 2 - x)^3 * mu * mu_bar^(i-1)
        c = Fraction(1, self.p**i) + self.P(i) + 2
        w = Fraction(4 * self.mu * self.mu_bar ** (i - 1), 3)
        return Polynomial.shifted_power(c, 3) * (-w)

    def _case(self, j: int) -> Polynomial:
        # ((8/3)u^3 - (4/p^j)u^2 + 2/(3p^{3j})) * mu_bar^j,  u = x - 2 - P_j
        c = 2 + self.P(j)
        w = self.mu_bar**j
        return (
            Polynomial.shifted_power(c, 3) * Fraction(8 * w, 3)
            + Polynomial.shifted_power(c, 2) * Fraction(-4 * w, self.p**j)
            + Polynomial([Fraction(2 * w, 3 * self.p ** (3 * j))])
        )

    def level_pieces(
        self, j: int
    ) -> tuple[tuple[Fraction, Fraction, Polynomial], tuple[Fraction, Fraction, Polynomial]]:
        """Exact (interval, polynomial) pairs solved at level j >= 1."""
        partial = self._head()
        for i in range(1, j + 1):
            partial = partial + self._term(i)
        pj, pj1 = self.P(j), self.P(j + 1)
        left = (2 + pj, 2 + pj1, partial + self._case(j))
        right = (
            2 + pj1 + Fraction(1, self.p ** (j + 1)),
            2 + pj + Fraction(1, self.p**j),
            partial,
        )
        return left, right

    def unresolved(self, depth: int) -> tuple[Fraction, Fraction, Polynomial]:
        """Interval and truncated lower polynomial left after ``depth`` levels."""
        partial = self._head()
        for i in range(1, depth + 1):
            partial = partial + self._term(i)
        lo = 2 + self.P(depth + 1)
        return lo, lo + Fraction(1, self.p ** (depth + 1)), partial

    def tail_bound(self, depth: int) -> Fraction:
        """Pointwise bound on the value dropped by truncating at ``depth``.

        The unresolved core rescales onto a copy of the whole middle-range
        problem with an extra weight (mu_bar/p^3)^depth, and the full
        remainder value is at most 2 (the rank bound 2*lambda0*mu <= 2q^n).
        """
        return 2 * Fraction(self.mu_bar, self.p**3) ** depth

    def center_value(self) -> Fraction:
        """Exact value at the tree limit point x = 5/2 (geometric series)."""
        return Fraction(1, 24) + Fraction(self.mu, 6 * (self.p**3 - self.mu_bar))

    def value(self, x: RationalLike, depth: int) -> DensityValue:
        """Middle-range value at x in [2+P_1, 2+P_1+1/p)."""
        x = Fraction(x)
        if x == Fraction(5, 2):
            v = self.center_value()
            return DensityValue(v, v, depth=None)
        for j in range(1, depth + 1):
            left, right = self.level_pieces(j)
            for lo, hi, poly in (left, right):
                if lo <= x < hi:
                    v = poly(x)
                    return DensityValue(v, v, depth=j)
        lo, hi, poly = self.unresolved(depth)
        assert lo <= x < hi
        v = poly(x)
        return DensityValue(v, v + self.tail_bound(depth), depth=depth)


@dataclass(frozen=True)
class DensityProfile:
    """Density function f_{R_{p,n+1}} (p = None means the p -> inf limit).

    ``closed_form`` covers all of [0, n); inside ``difficult_range`` its
    pieces are only certified lower bounds (they coincide with the limit
    profile there), exact elsewhere.  For n = 3 the attached interval tree
    upgrades the difficult range to exact evaluation.
    """

    n: int
    p: int | None
    closed_form: PiecewisePolynomial
    difficult_range: tuple[Fraction, Fraction] | None = None
    n3_tree: N3IntervalTree | None = None

    def value(self, x: RationalLike, depth: int = 24) -> DensityValue:
        x = Fraction(x)
        if self.difficult_range is not None:
            lo, hi = self.difficult_range
            if lo <= x < hi:
                if self.n3_tree is not None:
                    return self.n3_tree.value(x, depth)
                v = self.closed_form(x)
                return DensityValue(v, v + 2)
        v = self.closed_form(x)
        return DensityValue(v, v)

    def __call__(self, x: RationalLike, depth: int = 24) -> Fraction:
        """Exact evaluation; raises inside an unresolvable difficult range."""
        return self.value(x, depth).value


def _profile_breaks_and_pieces(n: int) -> tuple[list[Fraction], list[Polynomial]]:
    n0 = -(-n // 2) - 1  # ceil(n/2) - 1, the large-p pivot index
    breaks: list[Fraction] = []
    pieces: list[Polynomial] = []
    if n % 2 == 0:
        for i in range(n0 + 2):
            breaks.append(Fraction(i))
            pieces.append(z_limit_poly(n, i))
        for i in range(n0 + 2, n):
            breaks.append(Fraction(i))
            pieces.append(l_limit_poly(n, i))
        breaks.append(Fraction(n))
    else:
        for i in range(n0 + 1):
            breaks.append(Fraction(i))
            pieces.append(z_limit_poly(n, i))
        breaks.append(Fraction(n0 + 1))
        pieces.append(z_limit_poly(n, n0 + 1))
        breaks.append(Fraction(2 * n0 + 3, 2))
        pieces.append(l_limit_poly(n, n0 + 1))
        for i in range(n0 + 2, n):
            breaks.append(Fraction(i))
            pieces.append(l_limit_poly(n, i))
        breaks.append(Fraction(n))
    return breaks, pieces


def f_infinity(n: int) -> DensityProfile:
    """The limit density function f^infinity on [0, n), exact everywhere."""
    if n < 3:
        raise OutOfScopeError(f"n = {n} out of scope (n >= 3 required)")
    breaks, pieces = _profile_breaks_and_pieces(n)
    form = PiecewisePolynomial(breaks, pieces)
    if not form.is_continuous():
        raise AssertionError(f"limit profile for n = {n} is discontinuous")
    return DensityProfile(n=n, p=None, closed_form=form)


def f_p(n: int, p: int) -> DensityProfile:
    """The density function of R_{p,n+1}, with its difficult range marked.

    Off the difficult range the profile equals f^infinity exactly; on it the
    stored pieces are the proven lower bounds (the f^infinity restriction)
    and, for n = 3, the interval tree provides exact values.
    """
    ctx = QuadricContext(n, p)
    if not ctx.closed_form_valid:
        raise OutOfScopeError(
            f"(n={n}, p={p}) outside the closed-form validity range"
        )
    margin = Fraction(n - 2, 2 * p)
    mid = Fraction(n + 2, 2)
    breaks, pieces = _profile_breaks_and_pieces(n)
    form = PiecewisePolynomial(breaks, pieces).refine([mid - margin, mid + margin])
    tree = N3IntervalTree(p) if n == 3 and p >= 5 else None
    return DensityProfile(
        n=n,
        p=p,
        closed_form=form,
        difficult_range=(mid - margin, mid + margin),
        n3_tree=tree,
    )


def f_n3_at(p: int, x: RationalLike, depth: int = 24) -> DensityValue:
    """Value of the Q_3 density at rational x >= 0, exact to depth levels."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    return f_p(3, p).value(x, depth)


def ehk_infinity(n: int) -> Fraction:
    """Exact integral of f^infinity (the limit HK multiplicity)."""
    return f_infinity(n).closed_form.integrate()


def ehk(n: int, p: int, epsilon: RationalLike = Fraction(1, 10**6)) -> HKBracket:
    """Hilbert-Kunz multiplicity of R_{p,n+1} at the irrelevant ideal.

    n = 3: exact integration of the interval-tree pieces down to the depth
    where the certified tail is below epsilon.  n >= 4: exact integral of
    the closed-form region plus the proven [lower, lower+2] enclosure on
    the difficult range (epsilon plays no role there).
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    profile = f_p(n, p)
    dl, dh = profile.difficult_range
    closed = profile.closed_form.integral(0, dl) + profile.closed_form.integral(
        dh, n
    )
    if n == 3:
        tree = profile.n3_tree
        depth = 0
        while Fraction(1, p ** (depth + 1)) * tree.tail_bound(depth) > epsilon:
            depth += 1
        total = closed
        for j in range(1, depth + 1):
            for lo, hi, poly in tree.level_pieces(j):
                anti = poly.antiderivative()
                total += anti(hi) - anti(lo)
        lo, hi, poly = tree.unresolved(depth)
        anti = poly.antiderivative()
        total += anti(hi) - anti(lo)
        tail = (hi - lo) * tree.tail_bound(depth)
        return HKBracket(total, total + tail, "truncated", depth=depth)
    lower = closed + profile.closed_form.integral(dl, dh)
    return HKBracket(lower, lower + 2 * (dh - dl), "bracketed")


def f_threshold(n: int, p: int) -> Fraction:
    """The F-threshold of the irrelevant ideal: sup of the density support."""
    profile = f_p(n, p)
    last = profile.closed_form.pieces[-1]
    expected = Polynomial.shifted_power(n, n) * Fraction(
        2 * (-1) ** n, math.factorial(n)
    )
    if last != expected:
        raise AssertionError(
            f"last density piece is not 2(n-x)^n/n! for (n={n}, p={p})"
        )
    return Fraction(profile.closed_form.breakpoints[-1])


def _rational_grid(
    lo: Fraction, hi: Fraction, count: int, rng: random.Random
) -> Iterator[Fraction]:
    for _ in range(count):
        den = rng.randint(2, 997)
        num = rng.randint(0, den - 1)
        yield lo + (hi - lo) * Fraction(num, den)


def verify_wy(n: int, p: int, samples: int = 40, seed: int = 0) -> dict:
    """Cross-check the headline density/multiplicity bounds for (n, p).

    Four checks: (i) f_p = f^infinity off the difficult range as exact
    piecewise polynomials; (ii) f_p >= f^infinity inside it (pointwise exact
    for n = 3, bracket consistency otherwise); (iii) the ehk bracket sits in
    [1+m_{n+1}, 1+m_{n+1}+(2n-4)/p]; (iv) partial symmetry f_p(x) = f_p(n-x)
    on sampled x up to (n-2)(1-1/p)/2.
    """
    rng = random.Random(seed)
    fp = f_p(n, p)
    finf = f_infinity(n)
    dl, dh = fp.difficult_range

    equal_off_middle = fp.closed_form.agrees_with(
        finf.closed_form, exclude=(dl, dh)
    )

    middle_mode = "pointwise" if n == 3 else "bracket"
    middle_geq = True
    for x in _rational_grid(dl, dh, samples, rng):
        target = finf.closed_form(x)
        got = fp.value(x)
        # For exact values this is >=; for enclosures it is consistency.
        if got.hi < target:
            middle_geq = False

    m = sec_tan_coefficient(n + 1)
    bracket = ehk(n, p)
    ehk_in_bounds = (1 + m) <= bracket.lower and bracket.upper <= 1 + m + Fraction(
        2 * n - 4, p
    )

    bound = Fraction((n - 2) * (p - 1), 2 * p)
    symmetry = True
    for x in _rational_grid(Fraction(0), bound, samples, rng):
        if fp.value(x) != fp.value(n - x):
            symmetry = False

    report = {
        "n": n,
        "p": p,
        "equal_off_middle": equal_off_middle,
        "middle_geq": middle_geq,
        "middle_mode": middle_mode,
        "ehk_in_bounds": ehk_in_bounds,
        "ehk_lower": bracket.lower,
        "ehk_upper": bracket.upper,
        "symmetry": symmetry,
    }
    report["all_pass"] = bool(
        equal_off_middle and middle_geq and ehk_in_bounds and symmetry
    )
    return report
