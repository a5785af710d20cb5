"""Multiplicative characters modulo cube-free q, with exact evaluation.

Representation.  A cube-free q factors into prime-power components p^e with
e <= 2, and every such component has a cyclic unit group (including 2 and 4,
with orders 1 and 2; the two-generator case 2^e, e >= 3 never arises).  A
character is therefore an exponent vector (c_1, ..., c_r), one residue per
component generator, and evaluation is a table lookup of per-component
discrete logs followed by an integer dot product:

    chi(n) = zeta_E ^ ( sum_j  c_j * log_j(n) * (E / d_j)  mod E ),

where d_j is the order of component j and E = lcm(d_j) is the group
exponent.  Values are carried exactly as root-of-unity indices (k, E);
identity checks stay in integer arithmetic and only magnitude scans go
through floating complex numbers (compared at 1e-9).
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import arith
from .errors import (
    NoNonprincipalError,
    NotCubeFreeError,
    OutOfRangeError,
    ResourceExceededError,
    UnknownCharacterError,
)

MAX_MODULUS = 2**31
SCAN_CELL_CAP = 5 * 10**7  # characters x summands per scan matrix


@dataclass(frozen=True)
class CharacterId:
    """One exponent per component generator, reduced mod the component order."""

    exponents: tuple[int, ...]

    @property
    def is_principal(self) -> bool:
        return all(c == 0 for c in self.exponents)

    def digest(self) -> str:
        return "c" + ".".join(str(c) for c in self.exponents)


@dataclass(frozen=True)
class CharValue:
    """chi(n) as the exact root of unity e^{2 pi i k / order}, or zero."""

    root_index: int | None
    root_order: int

    @property
    def is_zero(self) -> bool:
        return self.root_index is None

    @property
    def is_one(self) -> bool:
        return self.root_index == 0

    def as_complex(self) -> complex:
        if self.root_index is None:
            return 0j
        return cmath.exp(2j * math.pi * self.root_index / self.root_order)


@dataclass(frozen=True)
class _Component:
    modulus: int
    generator: int
    order: int


def _primitive_root(p: int) -> int:
    phi_factors = [r for r, _ in arith.factorize(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in phi_factors):
            return g
    raise ArithmeticError(f"no primitive root mod {p}")  # unreachable for prime p


class CharacterGroup:
    """All phi(q) multiplicative characters modulo a cube-free q."""

    def __init__(self, q: int):
        if q < 1 or q > MAX_MODULUS:
            raise OutOfRangeError(f"modulus {q} outside [1, 2^31]")
        profile = arith.factor_profile(q)
        if not profile.cube_free:
            raise NotCubeFreeError(f"modulus {q} is divisible by a cube")
        self.modulus = q
        self.order = profile.phi
        components = []
        for p, e in profile.factors:
            m = p**e
            if p == 2:
                gen = 1 if e == 1 else 3
            else:
                g = _primitive_root(p)
                if e == 2 and pow(g, p - 1, m) == 1:
                    g += p
                gen = g
            components.append(_Component(modulus=m, generator=gen, order=m - m // p))
        self.components = tuple(components)
        self.exponent = math.lcm(*(c.order for c in components)) if components else 1
        self._weights = tuple(self.exponent // c.order for c in components)
        self._logs = []
        for c in components:
            table = [-1] * c.modulus
            x = 1 % c.modulus
            for i in range(c.order):
                table[x] = i
                x = x * c.generator % c.modulus
            self._logs.append(table)
        self._roots = None
        self._exp_matrix = None

    # -- character bookkeeping ------------------------------------------------

    @property
    def principal(self) -> CharacterId:
        return CharacterId((0,) * len(self.components))

    def characters(self):
        """All phi(q) characters in lexicographic exponent order."""
        ranges = [range(c.order) for c in self.components]
        for exps in itertools.product(*ranges):
            yield CharacterId(exps)

    def character(self, exponents) -> CharacterId:
        exps = tuple(int(e) for e in exponents)
        if len(exps) != len(self.components) or any(
            not 0 <= e < c.order for e, c in zip(exps, self.components)
        ):
            raise UnknownCharacterError(f"exponent vector {exps} not valid mod {self.modulus}")
        return CharacterId(exps)

    def unit_logs(self, n: int) -> tuple[int, ...] | None:
        """Per-component discrete logs of n, or None when gcd(n, q) > 1."""
        logs = []
        for comp, table in zip(self.components, self._logs):
            l = table[n % comp.modulus]
            if l < 0:
                return None
            logs.append(l)
        return tuple(logs)

    def eval(self, chi: CharacterId, n: int) -> CharValue:
        if len(chi.exponents) != len(self.components):
            raise UnknownCharacterError(f"{chi} does not belong to the group mod {self.modulus}")
        logs = self.unit_logs(n)
        if logs is None:
            return CharValue(None, self.exponent)
        k = 0
        for c, l, w, comp in zip(chi.exponents, logs, self._weights, self.components):
            if not 0 <= c < comp.order:
                raise UnknownCharacterError(f"exponent {c} out of range for order {comp.order}")
            k += c * l * w
        return CharValue(k % self.exponent, self.exponent)

    # -- cached numeric tables -------------------------------------------------

    def roots(self) -> np.ndarray:
        """Complex E-th roots of unity, indexed by root index."""
        if self._roots is None:
            e = self.exponent
            self._roots = np.exp(2j * np.pi * np.arange(e) / e)
        return self._roots

    def exponent_matrix(self) -> np.ndarray:
        """phi(q) x r matrix of exponent vectors, rows in character order."""
        if self._exp_matrix is None:
            ranges = [range(c.order) for c in self.components]
            rows = list(itertools.product(*ranges)) or [()]
            self._exp_matrix = np.array(rows, dtype=np.int64).reshape(self.order, -1)
        return self._exp_matrix

    def weighted_log_vector(self, n: int) -> np.ndarray | None:
        logs = self.unit_logs(n)
        if logs is None:
            return None
        return np.array([l * w for l, w in zip(logs, self._weights)], dtype=np.int64)


def build_character_group(q: int) -> CharacterGroup:
    """Character group mod cube-free q with complete evaluation tables."""
    return CharacterGroup(q)


# -- sums and scans -------------------------------------------------------------


def char_sum(group: CharacterGroup, chi: CharacterId, upper: int) -> complex:
    """Sum of chi(m) for m = 1..upper (floating accumulation)."""
    if upper < 1:
        raise OutOfRangeError(f"char_sum: upper {upper} < 1")
    roots = group.roots()
    total = 0j
    for m in range(1, upper + 1):
        v = group.eval(chi, m)
        if v.root_index is not None:
            total += roots[v.root_index]
    return complex(total)


@dataclass(frozen=True)
class ScanResult:
    upper: int
    max_abs: float
    argmax: CharacterId
    ratio_sqrt: float
    ratio_linear: float


def char_sum_scan(group: CharacterGroup, upper: int) -> ScanResult:
    """Largest |sum_{m<=upper} chi(m)| over nonprincipal chi, with witness.

    Ties are broken by the first character in exponent order.
    """
    if upper < 1:
        raise OutOfRangeError(f"char_sum_scan: upper {upper} < 1")
    if group.order < 2:
        raise NoNonprincipalError(f"no nonprincipal character mod {group.modulus}")
    if group.order * min(upper, group.modulus) > SCAN_CELL_CAP:
        raise ResourceExceededError(
            f"scan matrix {group.order} x {upper} exceeds the cell cap"
        )
    cmat = group.exponent_matrix()
    wlogs = []
    for m in range(1, upper + 1):
        w = group.weighted_log_vector(m)
        if w is not None:
            wlogs.append(w)
    if wlogs:
        wmat = np.stack(wlogs, axis=1)  # r x n_units
        idx = cmat @ wmat % group.exponent
        sums = group.roots()[idx].sum(axis=1)
    else:
        sums = np.zeros(group.order, dtype=complex)
    mags = np.abs(sums)
    mags[0] = -1.0  # row 0 is the principal character
    best = int(np.argmax(mags))
    max_abs = float(mags[best])
    chi = CharacterId(tuple(int(c) for c in cmat[best]))
    return ScanResult(
        upper=upper,
        max_abs=max_abs,
        argmax=chi,
        ratio_sqrt=max_abs / math.sqrt(upper),
        ratio_linear=max_abs / upper,
    )


def prime_window_sum(
    group: CharacterGroup,
    chi: CharacterId,
    anchor: float,
    widen: float | None = None,
) -> complex:
    """Sum of chi over the primes in the dyadic window at the given anchor."""
    window = arith.dyadic_window(anchor, widen=widen)
    roots = group.roots()
    total = 0j
    for p in arith.primes_in_window(window):
        v = group.eval(chi, p)
        if v.root_index is not None:
            total += roots[v.root_index]
    return complex(total)


@dataclass(frozen=True)
class MeanValueResult:
    lhs: float
    rhs: float
    holds: bool


def value_matrix(group: CharacterGroup, n_max: int) -> np.ndarray:
    """Complex matrix V[chi, n] = chi(n+1) for n+1 = 1..n_max (0 off units)."""
    cmat = group.exponent_matrix()
    cols = np.zeros((group.order, n_max), dtype=complex)
    for j in range(n_max):
        w = group.weighted_log_vector(j + 1)
        if w is not None:
            cols[:, j] = group.roots()[(cmat @ w) % group.exponent]
    return cols


def mean_value_check(
    group: CharacterGroup, coeffs, matrix: np.ndarray | None = None
) -> MeanValueResult:
    """Check sum_chi |sum_n a_n chi(n)|^2 <= phi(q) (N/q + 1) sum |a_n|^2.

    The comparison allows 1e-9 slack for the floating accumulation; the
    inequality itself is unconditional.  A precomputed ``value_matrix``
    slice of matching width may be passed to amortize repeated checks.
    """
    a = np.asarray(list(coeffs), dtype=complex)
    n_len = len(a)
    if n_len < 1:
        raise OutOfRangeError("mean_value_check: empty coefficient sequence")
    cols = matrix if matrix is not None else value_matrix(group, n_len)
    if cols.shape != (group.order, n_len):
        raise OutOfRangeError("mean_value_check: matrix shape mismatch")
    inner = cols @ a
    lhs = float(np.sum(np.abs(inner) ** 2))
    rhs = group.order * (n_len / group.modulus + 1.0) * float(np.sum(np.abs(a) ** 2))
    return MeanValueResult(lhs=lhs, rhs=rhs, holds=lhs <= rhs * (1 + 1e-12) + 1e-9)


# -- exact root-of-unity identities ----------------------------------------------


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den is monic with integer coefficients, so the division stays integral
    num = list(num)
    dn = len(den) - 1
    quot = [0] * max(1, len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j, y in enumerate(den):
                num[i - dn + j] -= c * y
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, ascending."""
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert all(c == 0 for c in rem)
    return tuple(poly)


def exact_root_sum_is_zero(counts: dict[int, int], order: int) -> bool:
    """Whether sum_k counts[k] * e^{2 pi i k / order} is exactly zero.

    Uniform multiplicities over a full cyclic subgroup are recognized
    directly; anything else is decided by reducing the count polynomial
    modulo the order-th cyclotomic polynomial (exact integer arithmetic).
    """
    cs: dict[int, int] = {}
    for k, v in counts.items():
        if v:
            cs[k % order] = cs.get(k % order, 0) + v
    cs = {k: v for k, v in cs.items() if v}
    if not cs:
        return True
    g = order
    for k in cs:
        g = math.gcd(g, k)
    sub = order // g if g else 1
    if sub > 1 and len(cs) == sub and len(set(cs.values())) == 1:
        return True
    poly = [0] * order
    for k, v in cs.items():
        poly[k] = v
    _, rem = _poly_divmod(poly, list(cyclotomic_polynomial(order)))
    return all(c == 0 for c in rem)


def orthogonality_exact(group: CharacterGroup, n: int) -> bool:
    """Exact check of sum_chi chi(n) = phi(q) * [n = 1 mod q]."""
    q = group.modulus
    expected = group.order if n % q == 1 % q else 0
    w = group.weighted_log_vector(n)
    if w is None:
        return expected == 0  # every chi(n) vanishes off the units
    idx = (group.exponent_matrix() @ w) % group.exponent
    counts = np.bincount(idx, minlength=group.exponent)
    count_map = {k: int(c) for k, c in enumerate(counts) if c}
    count_map[0] = count_map.get(0, 0) - expected
    return exact_root_sum_is_zero(count_map, group.exponent)


def complete_sum_exact_zero(group: CharacterGroup, chi: CharacterId) -> bool:
    """Exact check of sum_{m=1}^{q} chi(m) = 0 for nonprincipal chi."""
    counts: dict[int, int] = {}
    for m in range(1, group.modulus + 1):
        v = group.eval(chi, m)
        if v.root_index is not None:
            counts[v.root_index] = counts.get(v.root_index, 0) + 1
    return exact_root_sum_is_zero(counts, group.exponent)
