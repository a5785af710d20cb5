"""Exact integer arithmetic: factorization, sieves, dyadic windows, constants.

Everything here is deterministic.  Factorization uses trial division up to
2^16 followed by Brent's cycle variant of Pollard rho with a fixed parameter
schedule, and primality is decided by Miller-Rabin with a witness set that is
exhaustive below 3.3e24, so no probabilistic failure is possible in the
supported range (values up to 2^63).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import OutOfRangeError, NotInvertibleError

MAX_VALUE = 2**63

# Witnesses proving deterministic Miller-Rabin for n < 3.317e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_LIMIT = 1 << 16


@dataclass(frozen=True)
class Constants:
    """Numeric parameters shared by the window and pattern constructions.

    ``beta`` is the factor-size exponent limit e^{-1/2}/4, ``psi`` the dyadic
    window growth factor 2^{1/36} with ``xi = psi - 1``, ``rho`` the
    smoothness base e^{-1/2}, and ``delta`` the smallest pattern exponent.
    """

    beta: float = math.exp(-0.5) / 4.0
    psi: float = 2.0 ** (1.0 / 36.0)
    xi: float = 2.0 ** (1.0 / 36.0) - 1.0
    rho: float = math.exp(-0.5)
    delta: Fraction = Fraction(1, 200)

    def alpha_full(self, eps: float) -> float:
        """Window exponent for the 33-prime pattern."""
        return (0.25 + eps) / (2.0 + float(self.delta) + 2.0 * eps)

    def alpha_sub(self, eps: float) -> float:
        """Window exponent for the 28-prime (subgroup) pattern."""
        return (0.25 + eps) / (1.25 + float(self.delta) + 2.0 * eps)

    def eta(self, eps: float) -> float:
        """Error-saving exponent eps^3."""
        return eps**3

    def zeta(self, eps: float) -> float:
        """Smoothness cutoff exponent rho*(1+eps); always > 1/2."""
        return self.rho * (1.0 + eps)


CONSTANTS = Constants()


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sieve_up_to(n: int) -> list[int]:
    """All primes <= n by a plain sieve of Eratosthenes."""
    if n < 2:
        return []
    marks = bytearray(b"\x01") * (n + 1)
    marks[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if marks[p]:
            start = p * p
            marks[start : n + 1 : p] = b"\x00" * ((n - start) // p + 1)
    return [i for i, m in enumerate(marks) if m]


def primes_in_range(lo: int, hi: int) -> list[int]:
    """Primes in [lo, hi], segmented so hi may be large (~1e8)."""
    if hi < max(lo, 2):
        return []
    lo = max(lo, 2)
    if hi <= _TRIAL_LIMIT:
        return [p for p in sieve_up_to(hi) if p >= lo]
    base = sieve_up_to(math.isqrt(hi))
    out: list[int] = []
    seg = 1 << 18
    start = lo
    while start <= hi:
        stop = min(start + seg - 1, hi)
        marks = bytearray(b"\x01") * (stop - start + 1)
        for p in base:
            first = max(p * p, ((start + p - 1) // p) * p)
            if first > stop:
                continue
            marks[first - start :: p] = b"\x00" * ((stop - first) // p + 1)
        out.extend(start + i for i, m in enumerate(marks) if m and start + i >= 2)
        start = stop + 1
    return out


def _brent_rho(n: int) -> int:
    # Fixed schedule (x0=2, c=1,2,3,...) keeps the factorization deterministic.
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, r, q = 2, 1, 1
        g, x, ys = 1, 0, 0
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")  # unreachable in range


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as sorted (prime, exponent) pairs."""
    if n < 1 or n > MAX_VALUE:
        raise OutOfRangeError(f"factorize: n={n} outside [1, 2^63]")
    factors: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d * d <= n and d < _TRIAL_LIMIT:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += wheel[i]
        i = (i + 1) % 8
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        g = _brent_rho(m)
        stack.append(g)
        stack.append(m // g)
    return sorted(factors.items())


@dataclass(frozen=True)
class FactoredInteger:
    """An integer together with its multiplicative-function profile."""

    value: int
    factors: tuple[tuple[int, int], ...]
    phi: int
    tau: int
    mu: int
    largest_prime: int
    cube_free: bool

    @property
    def kappa(self) -> float:
        """phi(n)/n."""
        return self.phi / self.value


def factor_profile(n: int) -> FactoredInteger:
    """Full factorization of n with phi, tau, mu, P+(n) and cube-freeness."""
    if n < 1 or n > MAX_VALUE:
        raise OutOfRangeError(f"factor_profile: n={n} outside [1, 2^63]")
    factors = tuple(factorize(n))
    phi = 1
    tau = 1
    mu = 1
    for p, e in factors:
        phi *= (p - 1) * p ** (e - 1)
        tau *= e + 1
        mu = 0 if e > 1 else -mu
    return FactoredInteger(
        value=n,
        factors=factors,
        phi=phi,
        tau=tau,
        mu=mu,
        largest_prime=factors[-1][0] if factors else 1,
        cube_free=all(e <= 2 for _, e in factors),
    )


@lru_cache(maxsize=1 << 18)
def largest_prime_factor(n: int) -> int:
    """P+(n); defined as 1 for n = 1."""
    fs = factorize(n)
    return fs[-1][0] if fs else 1


def euler_phi(n: int) -> int:
    return factor_profile(n).phi


def mod_inverse(a: int, q: int) -> int:
    """Inverse of a modulo q >= 2, in [1, q-1]."""
    if q < 2:
        raise OutOfRangeError(f"mod_inverse: modulus {q} < 2")
    try:
        return pow(a, -1, q)
    except ValueError:
        raise NotInvertibleError(f"gcd({a}, {q}) > 1") from None


@dataclass(frozen=True)
class DyadicInterval:
    """Integer endpoints of the window [A, psi*A] at a real anchor A.

    Endpoints are fixed as lo = ceil(A) and hi = floor(psi*A) (closed
    interval); for integer anchors the rounding is carried out exactly in
    integer arithmetic (m <= 2^{1/36} A  iff  m^36 <= 2 A^36).
    """

    anchor: float
    lo: int
    hi: int

    def __len__(self) -> int:
        return max(0, self.hi - self.lo + 1)

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def __contains__(self, m: int) -> bool:
        return self.lo <= m <= self.hi


def dyadic_window(anchor: float | int, widen: float | None = None) -> DyadicInterval:
    """Window [A, psi*A], optionally stretched to [A, widen*psi*A]."""
    if anchor <= 0:
        raise OutOfRangeError(f"dyadic_window: anchor {anchor} <= 0")
    psi = CONSTANTS.psi
    if widen is not None and widen < 1.0:
        raise OutOfRangeError(f"dyadic_window: widen {widen} < 1")
    if isinstance(anchor, int) and widen is None:
        lo = anchor
        # largest m with m^36 <= 2*anchor^36, found from the float guess
        hi = int(psi * anchor)
        target = 2 * anchor**36
        while (hi + 1) ** 36 <= target:
            hi += 1
        while hi**36 > target:
            hi -= 1
    else:
        top = psi * anchor * (widen if widen is not None else 1.0)
        lo = math.ceil(anchor)
        hi = math.floor(top)
    return DyadicInterval(anchor=float(anchor), lo=lo, hi=hi)


def primes_in_window(interval: DyadicInterval, coprime_to: int = 1) -> list[int]:
    """Sorted primes p in the window with gcd(p, coprime_to) = 1."""
    if interval.hi < 2 or interval.hi < interval.lo:
        return []
    lo = max(2, interval.lo)
    if interval.hi - lo > 1 << 22:
        return [p for p in primes_in_range(lo, interval.hi) if math.gcd(p, coprime_to) == 1]
    return [
        p
        for p in range(lo, interval.hi + 1)
        if math.gcd(p, coprime_to) == 1 and is_prime(p)
    ]


def smallest_prime_factor_sieve(n: int) -> list[int]:
    """spf[m] = smallest prime factor of m (spf[0] = spf[1] = 0)."""
    spf = [0] * (n + 1)
    for p in range(2, n + 1):
        if spf[p] == 0:
            for m in range(p, n + 1, p):
                if spf[m] == 0:
                    spf[m] = p
    return spf


def is_smooth(n: int, y: float, strict: bool = False) -> bool:
    """True when every prime divisor of n is <= y (or < y when strict)."""
    if n < 1:
        raise OutOfRangeError(f"is_smooth: n={n} < 1")
    if n == 1:
        return True
    p = largest_prime_factor(n)
    return p < y if strict else p <= y
