"""Frobenius pushforward decompositions on smooth quadrics.

For the quadric hypersurface ring R = k[x_0..x_{n+1}]/(sum x_i^2) in odd
characteristic p, the s-fold Frobenius pushforward of any twisted line or
spinor bundle on Q_n = Proj R splits into line bundles O(t) and (sums of)
spinor bundles S(t).  This module computes the multiplicities nu_t / mu_t
of that splitting, the Z/L ladder values that package them, and the graded
colengths ell(R/m^[q])_d they determine.

The only inputs are the occurrence inequalities for O(t) and S(t) inside
F^s_*(O(a)) / F^s_*(S(a)) and exact dimension counting; everything else is
triangular linear algebra over the integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Literal, Mapping

from .exact import dim_quadric, dim_spinor, spinor_rank

Source = Literal["O", "S"]


class OutOfScopeError(ValueError):
    """Raised for parameter ranges the closed-form theory does not cover."""


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class QuadricContext:
    """Immutable parameter bundle for Q_n in characteristic p.

    Derived quantities: lambda0 = rank of the spinor sheaf, n0 = the pivot
    twist index, delta = its ceiling defect, and the validity flag for the
    closed-form pair formulas (p >= n-2 for even n, p >= 2n-4 for odd n).
    """

    n: int
    p: int

    def __post_init__(self) -> None:
        if self.n < 3:
            raise OutOfScopeError(
                f"n = {self.n}: quadrics of dimension < 3 are classical cases "
                "not covered by this library (n >= 3 required)"
            )
        if not _is_odd_prime(self.p):
            raise OutOfScopeError(f"p = {self.p} is not an odd prime")

    @property
    def lambda0(self) -> int:
        return spinor_rank(self.n)

    @property
    def two_lambda0(self) -> int:
        return 2 * spinor_rank(self.n)

    @property
    def n0(self) -> int:
        n, p = self.n, self.p
        return -((-(n - 2) * (p - 1)) // (2 * p))  # ceil((n-2)(p-1)/2p)

    @property
    def delta(self) -> Fraction:
        return self.n0 - Fraction((self.n - 2) * (self.p - 1), 2 * self.p)

    @property
    def parity(self) -> str:
        return "even" if self.n % 2 == 0 else "odd"

    @property
    def closed_form_valid(self) -> bool:
        if self.n % 2 == 0:
            return self.p >= self.n - 2
        return self.p >= 2 * self.n - 4

    def q(self, s: int) -> int:
        return self.p**s

    def Y(self, m: int) -> int:
        return dim_quadric(self.n, m)

    def h0_spinor(self, m: int) -> int:
        return dim_spinor(self.n, m)


@dataclass(frozen=True)
class IntBracket:
    """An integer known exactly (lo == hi) or confined to [lo, hi]."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if not 0 <= self.lo <= self.hi:
            raise ValueError(f"invalid bracket [{self.lo}, {self.hi}]")

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> int:
        if not self.is_exact:
            raise ValueError(f"bracket [{self.lo}, {self.hi}] is not exact")
        return self.lo

    def contains(self, v: int) -> bool:
        return self.lo <= v <= self.hi

    def __add__(self, other: "IntBracket") -> "IntBracket":
        return IntBracket(self.lo + other.lo, self.hi + other.hi)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.is_exact and self.lo == other
        if isinstance(other, IntBracket):
            return (self.lo, self.hi) == (other.lo, other.hi)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __repr__(self) -> str:
        if self.is_exact:
            return f"IntBracket({self.lo})"
        return f"IntBracket({self.lo}, {self.hi})"


@dataclass(frozen=True)
class Decomposition:
    """Multiplicities of F^s_*(O(a)) or F^s_*(S(a)) on Q_n.

    nu maps a line-bundle twist t to its multiplicity, mu does the same for
    spinor twists.  When ``exact`` is False the entries of nu/mu listed in
    nu_bracket/mu_bracket are only confined to intervals; the dict values
    then hold the bracket lower bounds.
    """

    q: int
    a: int
    source: Source
    nu: Mapping[int, int]
    mu: Mapping[int, int]
    exact: bool = True
    nu_bracket: Mapping[int, tuple[int, int]] | None = None
    mu_bracket: Mapping[int, tuple[int, int]] | None = None

    def rank_weight(self, lambda0: int) -> int:
        """Sum nu + lambda0 * sum mu (equals rank(source) * q^n when exact)."""
        return sum(self.nu.values()) + lambda0 * sum(self.mu.values())


def occurs_line(ctx: QuadricContext, s: int, a: int, t: int) -> bool:
    """Does O(t) occur in F^s_*(O(a))?"""
    q = ctx.q(s)
    return 0 <= a - t * q <= ctx.n * (q - 1)


def occurs_spinor(
    ctx: QuadricContext, s: int, a: int, t: int, source: Source = "O"
) -> bool:
    """Does S(t) occur in F^s_*(O(a)) (source='O') or F^s_*(S(a)) ('S')?"""
    lo, hi = _spinor_window(ctx, s, source)
    return lo <= a - t * ctx.q(s) <= hi


def _spinor_window(ctx: QuadricContext, s: int, source: Source) -> tuple[int, int]:
    """The inclusive window for a - t*q in the spinor occurrence criterion."""
    n, p = ctx.n, ctx.p
    qp = ctx.q(s) // p  # q/p, an integer for s >= 1
    base = (n - 2) * (p - 1) // 2
    lo = base * qp
    hi = (base + n - 2 + p) * qp - n
    if source == "S":
        d_s1 = 1 if s == 1 else 0
        lo += 1 - d_s1
        hi += d_s1
    return lo, hi


@lru_cache(maxsize=None)
def _z_coeffs(n: int, i: int) -> tuple[int, ...]:
    """Coefficients r_{ij} with Z^s_{-i}(a) = sum_j r_{ij} Y_{a+jq}."""
    if i == 0:
        return (1,)
    # Z_{-i}(a) = Y_{a+iq} - sum_{k=1..i} Y_k * Z_{-i+k}(a)
    out = [0] * i + [1]
    for k in range(1, i + 1):
        yk = dim_quadric(n, k)
        for j, c in enumerate(_z_coeffs(n, i - k)):
            out[j] -= yk * c
    return tuple(out)


@lru_cache(maxsize=None)
def _l_coeffs(n: int, i: int) -> tuple[int, ...]:
    """Coefficients s_{ij} with L^s_{-i}(a) = sum_j s_{ij} Y_{(j+1)q-a-n}."""
    if i == n - 1:
        return (1,)
    # L_{-i}(a) = Y_{(n-i)q-a-n} - sum_{k=1..n-1-i} Y_k * L_{-i-k}(a)
    out = [0] * (n - i - 1) + [1]
    for k in range(1, n - i):
        yk = dim_quadric(n, k)
        for j, c in enumerate(_l_coeffs(n, i + k)):
            out[j] -= yk * c
    return tuple(out)


def z_coefficients(ctx: QuadricContext, i: int) -> list[Fraction]:
    if not 0 <= i <= ctx.n - 1:
        raise ValueError(f"z index i = {i} outside [0, {ctx.n - 1}]")
    return [Fraction(c) for c in _z_coeffs(ctx.n, i)]


def l_coefficients(ctx: QuadricContext, i: int) -> list[Fraction]:
    if not ctx.n0 + 1 <= i <= ctx.n - 1:
        raise ValueError(f"l index i = {i} outside [{ctx.n0 + 1}, {ctx.n - 1}]")
    return [Fraction(c) for c in _l_coeffs(ctx.n, i)]


def z_eval(ctx: QuadricContext, s: int, i: int, a: int) -> int:
    q = ctx.q(s)
    return sum(c * ctx.Y(a + j * q) for j, c in enumerate(_z_coeffs(ctx.n, i)))


def l_eval(ctx: QuadricContext, s: int, i: int, a: int) -> int:
    q = ctx.q(s)
    return sum(
        c * ctx.Y((j + 1) * q - a - ctx.n)
        for j, c in enumerate(_l_coeffs(ctx.n, i))
    )


def _spinor_types(ctx: QuadricContext, s: int, a: int, source: Source) -> list[int]:
    """All spinor twists occurring in F^s_*(source(a)), descending order."""
    q = ctx.q(s)
    lo, hi = _spinor_window(ctx, s, source)
    # lo <= a - t*q <= hi  =>  (a - hi)/q <= t <= (a - lo)/q
    t_min = -((hi - a) // q)
    t_max = (a - lo) // q
    return list(range(t_max, t_min - 1, -1))


def _decompose_single(
    ctx: QuadricContext, s: int, a: int, source: Source
) -> Decomposition:
    """Exact decomposition when at most one spinor type occurs.

    The nu ladder is solved triangularly from two section counts: twisting
    by O(i) and taking global sections pins nu_{-i} for i up to the spinor
    pivot, and the Serre-dual count (sections of the dual pushforward,
    which is again a pushforward) pins the remaining nu from the bottom.
    The single spinor multiplicity is the rank residual.
    """
    n, q = ctx.n, ctx.q(s)
    if not 0 <= a < q:
        raise ValueError(f"a = {a} outside [0, {q})")
    types = _spinor_types(ctx, s, a, source)
    if len(types) > 1:
        raise OutOfScopeError(
            f"two spinor types {types} occur for (n={n}, p={ctx.p}, s={s}, "
            f"a={a}, source={source}); no single-type decomposition"
        )
    tau = types[0] if types else None

    if source == "O":
        lhs_top = lambda i: ctx.Y(a + i * q)
        lhs_dual = lambda j: ctx.Y(j * q - a - n)
        rank = 1
    else:
        lhs_top = lambda i: ctx.h0_spinor(a + i * q)
        lhs_dual = lambda j: ctx.h0_spinor(1 + j * q - a - n)
        rank = ctx.lambda0

    nu: dict[int, int] = {}
    top_limit = n - 1 if tau is None else min(-tau, n - 1)
    for i in range(top_limit + 1):
        # h^0 after twisting by O(i); the spinor term vanishes for i <= -tau.
        v = lhs_top(i) - sum(ctx.Y(i - k) * nu[-k] for k in range(i))
        nu[-i] = v
    if tau is not None:
        # Dual side: h^0 of the dual pushforward twisted by O(j-n); the dual
        # spinor summand S(1-tau) contributes nothing while j <= n-1+tau.
        for j in range(1, n + tau):
            v = lhs_dual(j) - sum(
                ctx.Y(j - k) * nu[k - n] for k in range(1, j) if k - n in nu
            )
            nu[j - n] = v

    nu = {t: c for t, c in nu.items() if c != 0}
    if any(c < 0 for c in nu.values()):
        raise AssertionError(f"negative multiplicity in nu = {nu}")

    mu: dict[int, int] = {}
    residual = rank * q**n - sum(nu.values())
    if tau is None:
        if residual != 0:
            raise AssertionError(
                f"rank residual {residual} with no spinor type "
                f"(n={n}, p={ctx.p}, s={s}, a={a}, source={source})"
            )
    else:
        count, rem = divmod(residual, ctx.lambda0)
        if rem != 0 or count < 0:
            raise AssertionError(
                f"rank residual {residual} not a multiple of lambda0 = "
                f"{ctx.lambda0} (n={n}, p={ctx.p}, s={s}, a={a})"
            )
        if count:
            mu[tau] = count
    return Decomposition(q=q, a=a, source=source, nu=nu, mu=mu, exact=True)


def decompose_s1(ctx: QuadricContext, a: int, source: Source = "O") -> Decomposition:
    """Exact decomposition of F_*(O(a)) or F_*(S(a)) for 0 <= a < p."""
    if not 0 <= a < ctx.p:
        raise ValueError(f"a = {a} outside [0, {ctx.p})")
    return _decompose_single(ctx, 1, a, source)


# Basis for the 5-component transfer recursion on Q_3:
# components [nu_{-2}, nu_{-1}, nu_0, mu_0, mu_{-1}].
_N3_BASIS: tuple[tuple[Source, int], ...] = (
    ("O", -2),
    ("O", -1),
    ("O", 0),
    ("S", 0),
    ("S", -1),
)

# Entries that are structurally zero: a violation means the s=1 branch
# formulas were transcribed wrong, so it is checked at build time.
_N3_STRUCTURAL_ZEROS = ((0, 3), (1, 3), (1, 4), (2, 4), (3, 4), (4, 3))


@dataclass(frozen=True)
class TransferMatrix:
    """5x5 one-digit transfer matrix for the Q_3 middle-range recursion.

    Row k holds the components of F_*(X(P0 + t)) in the basis
    (O(-2), O(-1), O(0), S(0), S(-1)), where (X, t) is the k-th basis
    element and P0 = (p-1)/2.
    """

    p: int
    rows: tuple[tuple[int, int, int, int, int], ...]

    def apply(self, vec: tuple[int, ...]) -> tuple[int, ...]:
        """Row-vector multiplication vec * B (one digit-peeling step)."""
        return tuple(
            sum(vec[k] * self.rows[k][l] for k in range(5)) for l in range(5)
        )


def _vec_of(dec: Decomposition) -> tuple[int, int, int, int, int]:
    return (
        dec.nu.get(-2, 0),
        dec.nu.get(-1, 0),
        dec.nu.get(0, 0),
        dec.mu.get(0, 0),
        dec.mu.get(-1, 0),
    )


@lru_cache(maxsize=None)
def transfer_matrix(p: int) -> TransferMatrix:
    if p < 5:
        raise OutOfScopeError(
            f"transfer matrix needs p >= 5 (got p = {p}): for p = 3 the "
            "pushforward of O(P0 - 2) leaves the 5-component basis"
        )
    ctx = QuadricContext(3, p)
    p0 = (p - 1) // 2
    rows = tuple(_vec_of(decompose_s1(ctx, p0 + t, src)) for src, t in _N3_BASIS)
    for k, l in _N3_STRUCTURAL_ZEROS:
        if rows[k][l] != 0:
            raise AssertionError(
                f"transfer matrix entry ({k},{l}) = {rows[k][l]} should be 0 "
                f"for p = {p}"
            )
    for k, row in enumerate(rows):
        rank = 1 if _N3_BASIS[k][0] == "O" else 2
        if row[0] + row[1] + row[2] + 2 * (row[3] + row[4]) != rank * p**3:
            raise AssertionError(f"transfer matrix row {k} fails rank check")
    return TransferMatrix(p=p, rows=rows)


def _digits(a: int, p: int, s: int) -> list[int]:
    out = []
    for _ in range(s):
        a, r = divmod(a, p)
        out.append(r)
    return out


def _combine(
    acc_nu: dict[int, int], acc_mu: dict[int, int], count: int, sub: Decomposition, shift: int
) -> None:
    for t, c in sub.nu.items():
        acc_nu[t + shift] = acc_nu.get(t + shift, 0) + count * c
    for t, c in sub.mu.items():
        acc_mu[t + shift] = acc_mu.get(t + shift, 0) + count * c


def _decompose_rec(
    ctx: QuadricContext, s: int, a: int, source: Source, _memo: dict | None = None
) -> Decomposition:
    """Exact decomposition by peeling the lowest p-adic digit.

    Works for any odd p and any n for which every reachable one-digit
    decomposition has a single spinor type (always true at s = 1).  Used as
    the p = 3 path of decompose_n3, where the 5-component transfer basis is
    not closed, and as an independent cross-check of the digit recursion.
    """
    if _memo is None:
        _memo = {}
    q = ctx.q(s)
    shift, r = divmod(a, q)
    key = (s, r, source)
    if key in _memo:
        base = _memo[key]
    elif s == 1:
        base = decompose_s1(ctx, r, source)
        _memo[key] = base
    else:
        a0, b = r % ctx.p, r // ctx.p
        one = decompose_s1(ctx, a0, source)
        nu: dict[int, int] = {}
        mu: dict[int, int] = {}
        for t, c in one.nu.items():
            _combine(nu, mu, c, _decompose_rec(ctx, s - 1, t + b, "O", _memo), 0)
        for t, c in one.mu.items():
            _combine(nu, mu, c, _decompose_rec(ctx, s - 1, t + b, "S", _memo), 0)
        base = Decomposition(q=q, a=r, source=source, nu=nu, mu=mu, exact=True)
        _memo[key] = base
    if shift == 0:
        return base
    return Decomposition(
        q=q,
        a=a,
        source=source,
        nu={t + shift: c for t, c in base.nu.items()},
        mu={t + shift: c for t, c in base.mu.items()},
        exact=True,
    )


def decompose_n3(p: int, s: int, a: int) -> Decomposition:
    """Exact decomposition of F^s_*(O(a)) on Q_3, any s.

    For p >= 5: strip the run of leading p-adic digits equal to
    P0 = (p-1)/2, decompose the truncated value (which has a single spinor
    type), and push the 5-component vector through the transfer matrix once
    per stripped digit.  For p = 3 that basis is not closed, so the
    digit-peeling recursion is used instead; both paths are exact.
    """
    ctx = QuadricContext(3, p)
    q = p**s
    if not 0 <= a < q:
        raise ValueError(f"a = {a} outside [0, {q})")
    if p == 3:
        return _decompose_rec(ctx, s, a, "O")

    p0 = (p - 1) // 2
    digits = _digits(a, p, s)
    j = 0
    while j < s - 1 and digits[s - 1 - j] == p0:
        j += 1
    base_s = s - j
    base_a = a % p**base_s
    base = _decompose_single(ctx, base_s, base_a, "O")
    vec = _vec_of(base)
    if j:
        mat = transfer_matrix(p)
        for _ in range(j):
            vec = mat.apply(vec)
    nu = {t: c for t, c in zip((-2, -1, 0), vec[:3]) if c}
    mu = {t: c for t, c in zip((0, -1), vec[3:]) if c}
    return Decomposition(q=q, a=a, source="O", nu=nu, mu=mu, exact=True)


def decompose(
    ctx: QuadricContext, s: int, a: int, source: Source = "O"
) -> Decomposition:
    """Best-effort decomposition: exact when the theory pins it down.

    Exact for s = 1 (any n), for n = 3 (any s), and whenever a single
    spinor type occurs.  Otherwise returns a bracketed Decomposition whose
    unknown entries are confined by the rank residual.
    """
    q = ctx.q(s)
    if not 0 <= a < q:
        raise ValueError(f"a = {a} outside [0, {q})")
    if s == 1:
        return decompose_s1(ctx, a, source)
    if ctx.n == 3 and source == "O":
        return decompose_n3(ctx.p, s, a)
    if ctx.n == 3:
        return _decompose_rec(ctx, s, a, source)
    try:
        return _decompose_single(ctx, s, a, source)
    except OutOfScopeError:
        pass
    if source != "O" or not ctx.closed_form_valid:
        raise OutOfScopeError(
            f"no exact or bracketed decomposition available for "
            f"(n={ctx.n}, p={ctx.p}, s={s}, a={a}, source={source})"
        )
    return _decompose_bracketed(ctx, s, a)


def _known_nu(ctx: QuadricContext, s: int, a: int) -> dict[int, int]:
    """The nu entries that stay exact even when two spinor types occur.

    For i <= n0-1 the section-count ladder has no spinor contribution, and
    for i >= n0+2 the dual ladder has none, so those nu_{-i} equal Z / L
    values regardless of the spinor multiplicities.
    """
    n, n0 = ctx.n, ctx.n0
    known = {-i: z_eval(ctx, s, i, a) for i in range(min(n0, n - 1))}
    for i in range(n0 + 2, n):
        known[-i] = l_eval(ctx, s, i, a)
    return known


def _decompose_bracketed(ctx: QuadricContext, s: int, a: int) -> Decomposition:
    """Two-spinor-type case (even n, s >= 2): rank-residual brackets."""
    n, n0, lam = ctx.n, ctx.n0, ctx.lambda0
    q = ctx.q(s)
    known = _known_nu(ctx, s, a)
    residual = q**n - sum(known.values())
    if residual < 0:
        raise AssertionError(f"negative rank residual {residual}")
    nu_bracket = {-n0: (0, residual), -n0 - 1: (0, residual)}
    mu_bracket = {t: (0, residual // lam) for t in (-n0 + 1, -n0, -n0 - 1)}
    nu = dict(known)
    nu.update({t: lo for t, (lo, _) in nu_bracket.items()})
    mu = {t: lo for t, (lo, _) in mu_bracket.items()}
    return Decomposition(
        q=q,
        a=a,
        source="O",
        nu=nu,
        mu=mu,
        exact=False,
        nu_bracket=nu_bracket,
        mu_bracket=mu_bracket,
    )


@dataclass(frozen=True)
class PairTable:
    """Entries nu_{-i}(a) + 2*lambda0*mu_{-i+1}(a) for i = 0..n-1.

    Entry i is the graded colength ell(R/m^[q])_{a+iq}; entries for i >= n
    are zero and not stored.
    """

    q: int
    a: int
    entries: tuple[IntBracket, ...]


def pair_table(ctx: QuadricContext, s: int, a: int) -> PairTable:
    """All pair values for a fixed residue a, exact where the theory allows.

    Outside the difficult range the entries are plain Z/L ladder values.
    Inside it, n = 3 gets exact values from decompose_n3; other n get
    brackets: the lower bound drops unknown spinor terms, the upper bound
    adds twice the rank residual left by the exactly-known nu.
    """
    n, n0, p = ctx.n, ctx.n0, ctx.p
    q = ctx.q(s)
    if not ctx.closed_form_valid:
        raise OutOfScopeError(
            f"(n={n}, p={p}) outside the closed-form validity range; "
            "use the Macaulay oracle instead"
        )
    if not 0 <= a < q:
        raise ValueError(f"a = {a} outside [0, {q})")

    x = Fraction(a, q)
    margin = Fraction(n - 2, 2 * p)
    even = n % 2 == 0
    entries: list[IntBracket] = []

    def exact(v: int) -> IntBracket:
        return IntBracket(v, v)

    def bracket(lo_candidates: list[int]) -> IntBracket:
        lo = max(0, *lo_candidates)
        residual = q**n - sum(_known_nu(ctx, s, a).values())
        return IntBracket(lo, lo + 2 * residual)

    for i in range(n):
        if i <= n0:
            entries.append(exact(z_eval(ctx, s, i, a)))
        elif i == n0 + 1:
            if even:
                if x < 1 - margin:
                    entries.append(exact(z_eval(ctx, s, i, a)))
                elif n == 3:  # unreachable (n=3 is odd); kept for symmetry
                    raise AssertionError
                else:
                    entries.append(bracket([z_eval(ctx, s, i, a)]))
            else:
                if x < Fraction(1, 2) - margin:
                    entries.append(exact(z_eval(ctx, s, i, a)))
                elif x >= Fraction(1, 2) + margin:
                    entries.append(exact(l_eval(ctx, s, i, a)))
                elif n == 3:
                    dec = decompose_n3(p, s, a)
                    entries.append(
                        exact(dec.nu.get(-2, 0) + 4 * dec.mu.get(-1, 0))
                    )
                else:
                    entries.append(
                        bracket([z_eval(ctx, s, i, a), l_eval(ctx, s, i, a)])
                    )
        elif i == n0 + 2:
            if not even or x >= margin:
                entries.append(exact(l_eval(ctx, s, i, a)))
            else:
                entries.append(
                    bracket([z_eval(ctx, s, i, a), l_eval(ctx, s, i, a)])
                )
        else:
            entries.append(exact(l_eval(ctx, s, i, a)))
    return PairTable(q=q, a=a, entries=tuple(entries))


def graded_length(ctx: QuadricContext, s: int, d: int) -> IntBracket:
    """ell(R_{p,n+1}/m^[q])_d — exact integer or bracket."""
    if d < 0:
        raise ValueError(f"degree d = {d} must be >= 0")
    q = ctx.q(s)
    i, a = divmod(d, q)
    if i >= ctx.n:
        return IntBracket(0, 0)
    return pair_table(ctx, s, a).entries[i]


def total_colength(ctx: QuadricContext, s: int) -> IntBracket:
    """ell(R_{p,n+1}/m^[q]) — sum of all graded pieces (finite support)."""
    total = IntBracket(0, 0)
    for a in range(ctx.q(s)):
        for entry in pair_table(ctx, s, a).entries:
            total = total + entry
    return total
