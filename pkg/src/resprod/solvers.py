"""Solvers and oracles for bounded-factor product congruences.

Two independent routes answer "is ``a`` a product of ``k`` integers up to
``B`` modulo ``q``":

* a breadth-first search over the unit group (``product_length_map``) that
  records the first level reaching each residue, and
* a meet-in-the-middle solver (``solve_product``) that composes two
  exhaustive half-length product tables keyed by residue.

Padding with the factor 1 is always allowed, so reachability is monotone in
``k`` and fixed-``k`` solvability reduces to ``L(a) <= k``.  The subgroup
variants run the same searches in the quotient by a multiplicative subgroup,
with cosets canonicalized by their smallest element.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import arith
from .errors import (
    BadModulusError,
    BadRangeError,
    BadSubgroupError,
    BoundTooLargeError,
    IntervalEmptyError,
    NoSolutionError,
    NotInvertibleError,
    OutOfMemoryError,
    OutOfRangeError,
    PrimeTooLargeError,
    TooLargeError,
    VerificationError,
)

DEFAULT_UNIT_CAP = 10**7
DEFAULT_PAIR_CAP = 4 * 10**6

_CHUNK = 8_000_000  # max elements per BFS expansion batch


# -- subgroups -----------------------------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    """A multiplicative subgroup of the units mod q, stored as a sorted tuple."""

    modulus: int
    elements: tuple[int, ...]
    kind: str = "explicit"

    def __post_init__(self):
        q = self.modulus
        elems = self.elements
        if q < 2:
            raise BadModulusError(f"subgroup modulus {q} < 2")
        if not elems or elems[0] != 1:
            raise BadSubgroupError("subgroup must contain 1")
        if list(elems) != sorted(set(elems)):
            raise BadSubgroupError("elements must be sorted and distinct")
        for u in elems:
            if not 1 <= u < q or math.gcd(u, q) != 1:
                raise BadSubgroupError(f"{u} is not a unit mod {q}")
        phi = arith.euler_phi(q)
        if phi % len(elems) != 0:
            raise BadSubgroupError(f"order {len(elems)} does not divide phi({q}) = {phi}")
        if len(elems) <= 512:
            self.verify_closure()

    def verify_closure(self) -> None:
        pool = set(self.elements)
        for a in self.elements:
            for b in self.elements:
                if a * b % self.modulus not in pool:
                    raise BadSubgroupError(
                        f"{a}*{b} mod {self.modulus} escapes the element set"
                    )

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, u: int) -> bool:
        return u % self.modulus in set(self.elements)

    def digest(self) -> str:
        if self.kind != "explicit":
            return self.kind
        return "set:" + ",".join(str(u) for u in self.elements)

    # constructors

    @classmethod
    def explicit(cls, q: int, elements) -> "Subgroup":
        sub = cls(q, tuple(sorted(set(int(u) % q for u in elements))), kind="explicit")
        sub.verify_closure()
        return sub

    @classmethod
    def trivial(cls, q: int) -> "Subgroup":
        return cls(q, (1,), kind="trivial")

    @classmethod
    def full(cls, q: int) -> "Subgroup":
        units = tuple(u for u in range(1, q) if math.gcd(u, q) == 1)
        if q == 1:
            raise BadModulusError("no unit group mod 1")
        return cls(q, units, kind="full")

    @classmethod
    def kth_powers(cls, q: int, k: int) -> "Subgroup":
        if k < 1:
            raise OutOfRangeError(f"power {k} < 1")
        elems = sorted({pow(u, k, q) for u in range(1, q) if math.gcd(u, q) == 1})
        return cls(q, tuple(elems), kind=f"powers:{k}")

    @classmethod
    def pth_powers_mod_p_squared(cls, q: int) -> "Subgroup":
        p = math.isqrt(q)
        if p * p != q or not arith.is_prime(p):
            raise BadModulusError(f"{q} is not the square of a prime")
        elems = sorted({pow(u, p, q) for u in range(1, q) if u % p != 0})
        return cls(q, tuple(elems), kind="pth-powers")


def _carmichael(q: int) -> int:
    lam = 1
    for p, e in arith.factorize(q):
        if p == 2:
            part = 1 if e == 1 else (2 if e == 2 else 2 ** (e - 2))
        else:
            part = (p - 1) * p ** (e - 1)
        lam = math.lcm(lam, part)
    return lam


def make_subgroup(q: int, spec: str) -> Subgroup:
    """Build a subgroup from a short textual description.

    Accepted forms: ``trivial``, ``full``, ``squares``, ``powers:K``,
    ``pth-powers`` (q must be a prime square), ``auto-sqrt`` (the smallest
    power subgroup of order at least sqrt(q)), ``set:u1,u2,...``.
    """
    if spec in ("", "trivial"):
        return Subgroup.trivial(q)
    if spec == "full":
        return Subgroup.full(q)
    if spec == "squares":
        return Subgroup.kth_powers(q, 2)
    if spec.startswith("powers:"):
        return Subgroup.kth_powers(q, int(spec.split(":", 1)[1]))
    if spec == "pth-powers":
        return Subgroup.pth_powers_mod_p_squared(q)
    if spec == "auto-sqrt":
        best = None
        lam = _carmichael(q)
        for d in sorted(_divisors(lam)):
            sub = Subgroup.kth_powers(q, d)
            if sub.order * sub.order >= q and (best is None or sub.order < best.order):
                best = sub
        if best is None:
            raise BadSubgroupError(f"no power subgroup of order >= sqrt({q})")
        return best
    if spec.startswith("set:"):
        return Subgroup.explicit(q, (int(t) for t in spec[4:].split(",")))
    raise BadSubgroupError(f"unknown subgroup spec {spec!r}")


def _divisors(n: int) -> list[int]:
    out = []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            out.append(d)
            if d * d != n:
                out.append(n // d)
    return sorted(out)


def enumerate_subgroups(q: int, max_order: int) -> list[Subgroup]:
    """All multiplicative subgroups of Z_q^* with order <= max_order.

    Subgroups of order <= 8 need at most three generators, so closures of
    up to three small-order elements enumerate everything up to that size;
    the function is exact for max_order <= 8 and conservative beyond.
    """
    gens = []
    for u in range(1, q):
        if math.gcd(u, q) != 1:
            continue
        x, order = u, 1
        while x != 1 and order <= max_order:
            x = x * u % q
            order += 1
        if x == 1 and order <= max_order:
            gens.append(u)
    found: dict[frozenset, Subgroup] = {}
    for size in (1, 2, 3):
        for combo in combinations(gens, size):
            closure = {1}
            frontier = set(combo) - closure
            closure |= frontier
            ok = True
            while frontier and ok:
                nxt = set()
                for a in frontier:
                    for b in combo:
                        c = a * b % q
                        if c not in closure:
                            nxt.add(c)
                closure |= nxt
                frontier = nxt
                if len(closure) > max_order:
                    ok = False
            if ok:
                key = frozenset(closure)
                if key not in found:
                    found[key] = Subgroup(q, tuple(sorted(closure)), kind="explicit")
    return sorted(found.values(), key=lambda s: (s.order, s.elements))


# -- witnesses -----------------------------------------------------------------


@dataclass(frozen=True)
class WitnessSolution:
    """A verified solution n_1 * ... * n_k = target * u (mod q), u in G.

    Construction re-checks the congruence, the factor bounds, and coset
    membership; an inconsistent witness raises rather than existing.
    """

    target: int
    modulus: int
    factors: tuple[int, ...]
    coset_element: int = 1
    bound: int | None = None
    subgroup: Subgroup | None = None
    verified: bool = False

    def __post_init__(self):
        q = self.modulus
        prod = 1
        for n in self.factors:
            if n < 1:
                raise VerificationError(f"factor {n} < 1")
            if self.bound is not None and n > self.bound:
                raise VerificationError(f"factor {n} exceeds bound {self.bound}")
            if math.gcd(n, q) != 1:
                raise VerificationError(f"factor {n} shares a divisor with {q}")
            prod = prod * n % q
        if prod != self.target * self.coset_element % q:
            raise VerificationError(
                f"product {prod} != {self.target} * {self.coset_element} mod {q}"
            )
        if self.subgroup is not None and self.coset_element not in self.subgroup:
            raise VerificationError(f"coset element {self.coset_element} outside subgroup")
        object.__setattr__(self, "verified", True)


# -- BFS length oracle -----------------------------------------------------------


class LengthMap:
    """First-reached BFS level for every unit, i.e. the minimal factor count."""

    def __init__(self, modulus: int, bound: int, dist: np.ndarray):
        self.modulus = modulus
        self.bound = bound
        self._dist = dist
        self._units = None

    def _unit_array(self) -> np.ndarray:
        if self._units is None:
            q = self.modulus
            self._units = np.flatnonzero(np.gcd(np.arange(q, dtype=np.int64), q) == 1)
        return self._units

    def length_of(self, a: int) -> int | None:
        d = int(self._dist[a % self.modulus])
        return d if d > 0 else None

    def items(self):
        for a in self._unit_array():
            d = int(self._dist[a])
            yield int(a), (d if d > 0 else None)

    @property
    def uniform_k(self) -> int | None:
        """Max finite length over units, or None when some unit is unreachable."""
        du = self._dist[self._unit_array()]
        if (du < 0).any():
            return None
        return int(du.max())

    @property
    def argmax_unit(self) -> int:
        """Smallest unit attaining uniform_k (or the smallest unreachable unit)."""
        units = self._unit_array()
        du = self._dist[units]
        unreachable = units[du < 0]
        if unreachable.size:
            return int(unreachable[0])
        return int(units[du == du.max()][0])

    def coverage(self, k: int) -> float:
        """Fraction of units reachable with at most k factors."""
        du = self._dist[self._unit_array()]
        return float(((du > 0) & (du <= k)).sum() / du.size)


def _factor_array(q: int, bound: int) -> np.ndarray:
    ns = np.arange(1, bound + 1, dtype=np.int64)
    return ns[np.gcd(ns, q) == 1]


def product_length_map(q: int, bound: int, cap: int = DEFAULT_UNIT_CAP) -> LengthMap:
    """BFS over the unit group: multiply by every coprime n in [1, bound]."""
    if q < 2:
        raise OutOfRangeError(f"modulus {q} < 2")
    if not 1 <= bound < q:
        raise BoundTooLargeError(f"bound {bound} outside [1, {q - 1}]")
    if q > cap:
        raise OutOfMemoryError(f"modulus {q} exceeds the table cap {cap}")
    factors = _factor_array(q, bound)
    dist = np.full(q, -1, dtype=np.int32)
    dist[factors] = 1
    frontier = factors.copy()
    level = 1
    while frontier.size:
        level += 1
        batch = max(1, _CHUNK // max(1, factors.size))
        fresh = []
        for i in range(0, frontier.size, batch):
            prods = (frontier[i : i + batch, None] * factors[None, :]).reshape(-1) % q
            prods = np.unique(prods)
            fresh.append(prods[dist[prods] < 0])
        nxt = np.unique(np.concatenate(fresh)) if fresh else np.empty(0, dtype=np.int64)
        nxt = nxt[dist[nxt] < 0]
        if nxt.size == 0:
            break
        dist[nxt] = level
        frontier = nxt
    return LengthMap(q, bound, dist)


def witness_from_length_map(lmap: LengthMap, a: int) -> WitnessSolution:
    """Recover a factor tuple for ``a`` by walking the BFS levels backwards."""
    q = lmap.modulus
    a = a % q
    level = lmap.length_of(a)
    if level is None:
        raise NoSolutionError(f"{a} is unreachable mod {q} with bound {lmap.bound}")
    factors = []
    cur = a
    dist = lmap._dist
    pool = [int(f) for f in _factor_array(q, lmap.bound)]
    for lev in range(level, 1, -1):
        for f in pool:
            pred = cur * arith.mod_inverse(f, q) % q
            if dist[pred] == lev - 1:
                factors.append(f)
                cur = pred
                break
        else:  # pragma: no cover - BFS levels always admit a predecessor
            raise ArithmeticError("BFS backtrack found no predecessor")
    factors.append(cur)
    return WitnessSolution(
        target=a, modulus=q, factors=tuple(sorted(factors)), bound=lmap.bound
    )


# -- meet-in-the-middle ------------------------------------------------------------


@lru_cache(maxsize=512)
def _factor_list(q: int, bound: int) -> tuple[int, ...]:
    return tuple(int(f) for f in _factor_array(q, bound))


@lru_cache(maxsize=256)
def _mitm_table(q: int, bound: int, level: int) -> dict:
    """Residues of exactly ``level``-fold bounded products, one witness each.

    Witnesses are canonical nondecreasing tuples; when several reach the
    same residue the lexicographically smallest stored candidate wins, with
    residues expanded in ascending order for determinism.
    """
    if level == 0:
        return {1 % q: ()}
    prev = _mitm_table(q, bound, level - 1)
    factors = _factor_list(q, bound)
    table: dict[int, tuple[int, ...]] = {}
    for r in sorted(prev):
        tup = prev[r]
        for f in factors:
            s = r * f % q
            cand = tuple(sorted(tup + (f,)))
            old = table.get(s)
            if old is None or cand < old:
                table[s] = cand
    return table


def solve_product(
    a: int, q: int, k: int, bound: int, cap: int = DEFAULT_UNIT_CAP
) -> WitnessSolution:
    """Find n_1 * ... * n_k = a (mod q) with every n_i in [1, bound].

    Meet in the middle: the ceil(k/2)-fold product table is matched against
    a * (inverse of each floor(k/2)-fold product).  Tables are exhaustive,
    so a NoSolutionError is a certificate of unsolvability.
    """
    if q < 2:
        raise OutOfRangeError(f"modulus {q} < 2")
    if math.gcd(a, q) != 1:
        raise NotInvertibleError(f"target {a} is not a unit mod {q}")
    if k < 1:
        raise OutOfRangeError(f"k = {k} < 1")
    if not 1 <= bound < q:
        raise BoundTooLargeError(f"bound {bound} outside [1, {q - 1}]")
    if q > cap:
        raise OutOfMemoryError(f"modulus {q} exceeds the table cap {cap}")
    a = a % q
    t_hi = _mitm_table(q, bound, (k + 1) // 2)
    t_lo = _mitm_table(q, bound, k // 2)
    best = None
    for s, tup_lo in t_lo.items():
        need = a * arith.mod_inverse(s, q) % q if s != 1 else a
        tup_hi = t_hi.get(need)
        if tup_hi is not None:
            cand = tuple(sorted(tup_hi + tup_lo))
            if best is None or cand < best:
                best = cand
    if best is None:
        raise NoSolutionError(
            f"no {k}-fold product of integers <= {bound} hits {a} mod {q}",
            certified=True,
        )
    return WitnessSolution(target=a, modulus=q, factors=best, bound=bound)


# -- quotient-group (subgroup) variants ----------------------------------------------


@lru_cache(maxsize=128)
def _coset_reps(subgroup: Subgroup) -> np.ndarray:
    """rep[u] = smallest element of the coset u*G, or -1 off the units."""
    q = subgroup.modulus
    elems = np.array(subgroup.elements, dtype=np.int64)
    reps = np.full(q, -1, dtype=np.int64)
    for u in range(1, q):
        if reps[u] >= 0 or math.gcd(u, q) != 1:
            continue
        orbit = u * elems % q
        reps[orbit] = orbit.min()
    return reps


class CosetLengthMap:
    """BFS levels over the quotient Z_q^* / G, keyed by canonical coset reps."""

    def __init__(self, modulus: int, bound: int, subgroup: Subgroup, dist: dict):
        self.modulus = modulus
        self.bound = bound
        self.subgroup = subgroup
        self._dist = dist
        self._reps = _coset_reps(subgroup)

    def rep_of(self, a: int) -> int:
        r = int(self._reps[a % self.modulus])
        if r < 0:
            raise NotInvertibleError(f"{a} is not a unit mod {self.modulus}")
        return r

    def length_of(self, a: int) -> int | None:
        return self._dist.get(self.rep_of(a))

    def items(self):
        for rep in sorted(set(int(r) for r in self._reps if r >= 0)):
            yield rep, self._dist.get(rep)

    @property
    def uniform_k(self) -> int | None:
        lengths = [l for _, l in self.items()]
        if any(l is None for l in lengths):
            return None
        return max(lengths)

    @property
    def argmax_coset(self) -> int:
        items = list(self.items())
        missing = [rep for rep, l in items if l is None]
        if missing:
            return missing[0]
        top = max(l for _, l in items)
        return next(rep for rep, l in items if l == top)


def subgroup_length_map(
    q: int, bound: int, subgroup: Subgroup, cap: int = DEFAULT_UNIT_CAP
) -> CosetLengthMap:
    """BFS over cosets: minimal factor count to land in a*G for each coset."""
    if subgroup.modulus != q:
        raise BadSubgroupError("subgroup modulus mismatch")
    if not 1 <= bound < q:
        raise BoundTooLargeError(f"bound {bound} outside [1, {q - 1}]")
    if q > cap:
        raise OutOfMemoryError(f"modulus {q} exceeds the table cap {cap}")
    reps = _coset_reps(subgroup)
    factors = _factor_list(q, bound)
    dist: dict[int, int] = {}
    frontier = sorted({int(reps[f]) for f in factors})
    for r in frontier:
        dist[r] = 1
    level = 1
    while frontier:
        level += 1
        nxt = set()
        for r in frontier:
            for f in factors:
                s = int(reps[r * f % q])
                if s not in dist:
                    nxt.add(s)
        for s in nxt:
            dist[s] = level
        frontier = sorted(nxt)
    return CosetLengthMap(q, bound, subgroup, dist)


@lru_cache(maxsize=128)
def _mitm_table_quot(q: int, bound: int, level: int, subgroup: Subgroup) -> dict:
    reps = _coset_reps(subgroup)
    if level == 0:
        return {int(reps[1 % q]): ()}
    prev = _mitm_table_quot(q, bound, level - 1, subgroup)
    factors = _factor_list(q, bound)
    table: dict[int, tuple[int, ...]] = {}
    for r in sorted(prev):
        tup = prev[r]
        for f in factors:
            s = int(reps[r * f % q])
            cand = tuple(sorted(tup + (f,)))
            old = table.get(s)
            if old is None or cand < old:
                table[s] = cand
    return table


def solve_product_subgroup(
    a: int,
    q: int,
    k: int,
    bound: int,
    subgroup: Subgroup,
    cap: int = DEFAULT_UNIT_CAP,
) -> WitnessSolution:
    """Find n_1 * ... * n_k = a * u (mod q) with u in the subgroup.

    Runs meet-in-the-middle in the quotient by the subgroup, then lifts the
    coset element u = (product) * a^{-1} mod q.
    """
    if subgroup.modulus != q:
        raise BadSubgroupError("subgroup modulus mismatch")
    if math.gcd(a, q) != 1:
        raise NotInvertibleError(f"target {a} is not a unit mod {q}")
    if k < 1:
        raise OutOfRangeError(f"k = {k} < 1")
    if not 1 <= bound < q:
        raise BoundTooLargeError(f"bound {bound} outside [1, {q - 1}]")
    if q > cap:
        raise OutOfMemoryError(f"modulus {q} exceeds the table cap {cap}")
    a = a % q
    reps = _coset_reps(subgroup)
    t_hi = _mitm_table_quot(q, bound, (k + 1) // 2, subgroup)
    t_lo = _mitm_table_quot(q, bound, k // 2, subgroup)
    best = None
    for s, tup_lo in t_lo.items():
        need = int(reps[a * arith.mod_inverse(s, q) % q])
        tup_hi = t_hi.get(need)
        if tup_hi is not None:
            cand = tuple(sorted(tup_hi + tup_lo))
            if best is None or cand < best:
                best = cand
    if best is None:
        raise NoSolutionError(
            f"no {k}-fold product <= {bound} lands in {a}*G mod {q}", certified=True
        )
    prod = 1
    for f in best:
        prod = prod * f % q
    u = prod * arith.mod_inverse(a, q) % q
    return WitnessSolution(
        target=a, modulus=q, factors=best, coset_element=u, bound=bound, subgroup=subgroup
    )


# -- pair counting inside a subgroup -------------------------------------------------


@dataclass(frozen=True)
class RatioPairCount:
    """Solutions of x*u = y (mod q) with 1 <= x, y <= x_bound and u in G."""

    modulus: int
    x_bound: int
    order: int
    count: int
    bound_shape: float  # X^2 t / q, for report-only comparison


def count_subgroup_ratio_pairs(
    q: int, x_bound: int, subgroup: Subgroup, cap: int = DEFAULT_PAIR_CAP
) -> RatioPairCount:
    """Exact enumeration of x*u = y (mod q), 1 <= x, y <= x_bound, u in G.

    Only reduced x are counted (y is then automatically reduced): with the
    full unit group this makes the count exactly the number of unit pairs
    below the bound, which is the identity the verification suite asserts.
    """
    if subgroup.modulus != q:
        raise BadSubgroupError("subgroup modulus mismatch")
    if not 1 <= x_bound < q:
        raise BadRangeError(f"x_bound {x_bound} outside [1, {q - 1}]")
    t = subgroup.order
    if x_bound * t > cap:
        raise TooLargeError(f"{x_bound} * {t} pairs exceed the cap {cap}")
    xs = np.arange(1, x_bound + 1, dtype=np.int64)
    xs = xs[np.gcd(xs, q) == 1]
    g = np.array(subgroup.elements, dtype=np.int64)
    y = xs[:, None] * g[None, :] % q
    count = int(((y >= 1) & (y <= x_bound)).sum())
    return RatioPairCount(
        modulus=q,
        x_bound=x_bound,
        order=t,
        count=count,
        bound_shape=x_bound * x_bound * t / q,
    )


# -- greedy factor packing ------------------------------------------------------------


def greedy_pack(n: int, cap: int) -> list[int]:
    """Split n into factors <= cap by greedy packing of descending primes.

    For n <= cap^2 the result is the three-part split (greedy prefix, next
    prime, remainder), at most 3 factors; larger n falls back to next-fit
    bin packing, still with every bin product <= cap.
    """
    if n < 1:
        raise OutOfRangeError(f"n = {n} < 1")
    if cap < 2:
        raise OutOfRangeError(f"cap = {cap} < 2")
    primes: list[int] = []
    for p, e in arith.factorize(n):
        primes.extend([p] * e)
    primes.sort(reverse=True)
    if primes and primes[0] > cap:
        raise PrimeTooLargeError(f"prime factor {primes[0]} exceeds cap {cap}")
    if n <= cap * cap:
        v1 = 1
        i = 0
        while i < len(primes) and v1 * primes[i] <= cap:
            v1 *= primes[i]
            i += 1
        if i == len(primes):
            return [v1]
        v2 = primes[i]
        return [v1, v2, n // (v1 * v2)]
    bins = []
    b = 1
    for p in primes:
        if b * p <= cap:
            b *= p
        else:
            bins.append(b)
            b = p
    bins.append(b)
    return bins


# -- prime product patterns ------------------------------------------------------------


@dataclass(frozen=True)
class PatternSlot:
    count: int
    exponent: Fraction


@dataclass(frozen=True)
class PrimeProductPattern:
    """Slot structure (count, anchor exponent) for auxiliary prime products.

    The ``full`` variant uses 33 primes spanning q^{3/2 + 1/200}; the
    ``subgroup`` variant 28 primes spanning q^{3/4 + 1/200}.  Desk-scale
    moduli leave the q^{1/200} windows empty, so sampling may widen the
    windows; whether that happened is recorded on the pattern.
    """

    modulus: int
    variant: str
    slots: tuple[PatternSlot, ...]
    r_exponent: Fraction
    widen: float | None
    sampled_primes: tuple[tuple[int, ...], ...] | None

    @property
    def prime_count(self) -> int:
        return sum(s.count for s in self.slots)

    def r_value(self) -> int | None:
        if self.sampled_primes is None:
            return None
        r = 1
        for slot in self.sampled_primes:
            for p in slot:
                r *= p
        return r


_PATTERN_SLOTS = {
    "full": ((21, Fraction(1, 200)), (8, Fraction(3, 20)), (4, Fraction(1, 20))),
    "subgroup": ((21, Fraction(1, 200)), (3, Fraction(3, 20)), (4, Fraction(1, 20))),
}


def build_prime_pattern(
    q: int,
    variant: str = "full",
    widen: float | None = None,
    sample: bool = True,
) -> PrimeProductPattern:
    """Slot structure for the 33- or 28-prime products, optionally sampled.

    Sampling takes the smallest admissible primes in each dyadic window,
    cycling when a window holds fewer primes than the slot needs (the slot
    coordinates range independently, so repeats are legitimate).
    """
    if q < 2:
        raise OutOfRangeError(f"modulus {q} < 2")
    if variant not in _PATTERN_SLOTS:
        raise BadRangeError(f"unknown pattern variant {variant!r}")
    slots = tuple(PatternSlot(c, e) for c, e in _PATTERN_SLOTS[variant])
    r_exp = sum((s.count * s.exponent for s in slots), Fraction(0))
    sampled = None
    if sample:
        per_slot = []
        for slot in slots:
            anchor = q ** float(slot.exponent)
            window = arith.dyadic_window(anchor, widen=widen)
            primes = arith.primes_in_window(window, coprime_to=q)
            if not primes:
                raise IntervalEmptyError(
                    f"window [{window.lo}, {window.hi}] at q^{slot.exponent} has no "
                    f"admissible prime (try demo widening)"
                )
            per_slot.append(tuple(primes[i % len(primes)] for i in range(slot.count)))
        sampled = tuple(per_slot)
    return PrimeProductPattern(
        modulus=q,
        variant=variant,
        slots=slots,
        r_exponent=r_exp,
        widen=widen,
        sampled_primes=sampled,
    )
