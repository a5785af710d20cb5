"""Exact window counts, prime reciprocal sums, and smooth-product multisets.

The counters here are deliberately brute force: they are the oracles the
asymptotic main terms are compared against, so each one is a direct
enumeration with no shortcuts shared with the formulas being checked.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from . import arith
from .errors import BadRangeError, BadZetaError, WindowTooLargeError


@dataclass(frozen=True)
class CoprimeCountResult:
    """Exact coprime count over a dyadic window versus xi * M * kappa."""

    anchor: float
    modulus: int
    window_lo: int
    window_hi: int
    exact: int
    main_term: float
    error: float
    tau_q: int
    kappa: float

    @property
    def within_2tau(self) -> bool:
        return abs(self.error) <= 2 * self.tau_q

    @property
    def ratio_m_kappa(self) -> float:
        """exact / (M * kappa); the sieve-bound shape, reported only."""
        scale = self.anchor * self.kappa
        return self.exact / scale if scale > 0 else 0.0


def count_coprime_window(anchor: float, q: int) -> CoprimeCountResult:
    """Count m in the dyadic window at ``anchor`` with gcd(m, q) = 1."""
    if anchor < 1:
        raise BadRangeError(f"count_coprime_window: anchor {anchor} < 1")
    profile = arith.factor_profile(q)
    window = arith.dyadic_window(anchor if isinstance(anchor, int) else float(anchor))
    exact = sum(1 for m in window if math.gcd(m, q) == 1)
    main = arith.CONSTANTS.xi * float(anchor) * profile.kappa
    return CoprimeCountResult(
        anchor=float(anchor),
        modulus=q,
        window_lo=window.lo,
        window_hi=window.hi,
        exact=exact,
        main_term=main,
        error=exact - main,
        tau_q=profile.tau,
        kappa=profile.kappa,
    )


@dataclass(frozen=True)
class PrimeCofactorCount:
    """Exact count of pairs (p, m): p prime in [N^zeta, N], m ~ N/p, both coprime to q."""

    n_anchor: float
    zeta: float
    modulus: int
    exact: int
    main_term: float


def count_prime_cofactor_pairs(n_anchor: float, zeta: float, q: int) -> PrimeCofactorCount:
    """Double count over large primes p and window cofactors m ~ N/p.

    The main term xi * log(1/zeta) * kappa * N is reported for comparison
    only; nothing asserts the asymptotic error.
    """
    if not 0.0 < zeta < 1.0:
        raise BadZetaError(f"zeta {zeta} outside (0, 1)")
    if n_anchor < 1:
        raise BadRangeError(f"n_anchor {n_anchor} < 1")
    profile = arith.factor_profile(q)
    p_lo = n_anchor**zeta
    exact = 0
    for p in arith.primes_in_range(math.ceil(p_lo), math.floor(n_anchor)):
        if p < p_lo or math.gcd(p, q) != 1:
            continue
        exact += count_coprime_window(n_anchor / p, q).exact
    main = arith.CONSTANTS.xi * math.log(1.0 / zeta) * profile.kappa * n_anchor
    return PrimeCofactorCount(
        n_anchor=float(n_anchor), zeta=zeta, modulus=q, exact=exact, main_term=main
    )


@dataclass(frozen=True)
class MertensResult:
    x: float
    y: float
    reciprocal_sum: float
    main_term: float
    delta: float


def mertens_delta(x: float, y: float) -> MertensResult:
    """Exact sum of 1/p over primes in [x, y] against log(log y / log x)."""
    if not 2 <= x < y:
        raise BadRangeError(f"need 2 <= x < y, got x={x}, y={y}")
    if y > 1e8:
        raise BadRangeError(f"y={y} above the supported 1e8")
    total = 0.0
    for p in arith.primes_in_range(math.ceil(x), math.floor(y)):
        total += 1.0 / p
    main = math.log(math.log(y) / math.log(x))
    return MertensResult(x=x, y=y, reciprocal_sum=total, main_term=main, delta=total - main)


@dataclass(frozen=True)
class SmoothProductMultiset:
    """Ordered-pair products k = m*n over a dyadic window, all primes < N^zeta.

    ``elements`` lists one entry per ordered pair (multiplicity is the number
    of ordered in-window factorizations).
    """

    n_anchor: float
    zeta: float
    modulus: int
    threshold: float
    window_lo: int
    window_hi: int
    elements: tuple[tuple[int, int, int], ...]  # (k, m, n)
    counts: Counter = field(compare=False)

    @property
    def total(self) -> int:
        return len(self.elements)

    def multiplicity(self, k: int) -> int:
        return self.counts.get(k, 0)


def smooth_products(
    n_anchor: float,
    zeta: float,
    q: int = 1,
    require_coprime: bool = False,
    cap: int = 10**6,
) -> SmoothProductMultiset:
    """Enumerate the multiset {k = m*n : m, n in window, p | mn => p < N^zeta}.

    Smoothness is strict (p < threshold).  With ``require_coprime`` the
    factors are additionally restricted to gcd(m, q) = gcd(n, q) = 1.
    """
    if not 0.0 < zeta < 1.0:
        raise BadZetaError(f"zeta {zeta} outside (0, 1)")
    window = arith.dyadic_window(n_anchor if isinstance(n_anchor, int) else float(n_anchor))
    if len(window) > cap:
        raise WindowTooLargeError(f"window size {len(window)} exceeds cap {cap}")
    threshold = float(n_anchor) ** zeta
    admissible = [
        m
        for m in window
        if arith.is_smooth(m, threshold, strict=True)
        and (not require_coprime or math.gcd(m, q) == 1)
    ]
    elements = tuple((m * n, m, n) for m in admissible for n in admissible)
    counts = Counter(k for k, _, _ in elements)
    return SmoothProductMultiset(
        n_anchor=float(n_anchor),
        zeta=zeta,
        modulus=q,
        threshold=threshold,
        window_lo=window.lo,
        window_hi=window.hi,
        elements=elements,
        counts=counts,
    )


@dataclass(frozen=True)
class BalogDecomposition:
    """Three exact counts behind the lower bound lhs >= e_term - f_term."""

    lhs: int
    e_term: int
    f_term: int
    density: float | None = None  # caller-supplied lambda, recorded only

    @property
    def holds(self) -> bool:
        return self.lhs >= self.e_term - self.f_term


def balog_decompose(
    pairs,
    membership,
    threshold: float,
    density: float | None = None,
) -> BalogDecomposition:
    """Split pairs (m, n) into both-smooth / m-smooth / n-rough counts.

    ``membership`` is a predicate (or container) applied to the product m*n.
    Smoothness is strict (all primes < threshold); the rough count is its
    complement (some prime >= threshold), so the inequality is a pointwise
    identity rather than an asymptotic statement.
    """
    if callable(membership):
        member = membership
    else:
        pool = set(membership)
        member = pool.__contains__
    lhs = e_term = f_term = 0
    for m, n in pairs:
        if not member(m * n):
            continue
        m_smooth = arith.is_smooth(m, threshold, strict=True)
        n_smooth = arith.is_smooth(n, threshold, strict=True)
        if m_smooth and n_smooth:
            lhs += 1
        if m_smooth:
            e_term += 1
        if not n_smooth:
            f_term += 1
    return BalogDecomposition(lhs=lhs, e_term=e_term, f_term=f_term, density=density)
