"""Fermat quotients and the additive representation solver.

The quotient of u at an odd prime p is the unique residue w in [0, p-1]
with p*w = u^{p-1} - 1 (mod p^2), extended by 0 on multiples of p and by
periodicity p^2 elsewhere.  Sums of quotients of bounded arguments are
solved by BFS over the additive group Z_p, which also certifies
unsolvability; padding with u = 1 (quotient 0) makes reachability monotone
in the number of terms.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import arith, solvers
from .errors import (
    NoSolutionError,
    NotPrimeError,
    OutOfRangeError,
    VerificationError,
)

MAX_PRIME = 2**15  # keeps p^2 within comfortable 64-bit range
MAX_TABLE_PRIME = 2048  # full p^2 tables only below this


def fermat_quotient(u: int, p: int) -> int:
    """The quotient (u^{p-1} - 1)/p reduced mod p, in [0, p-1]."""
    if not arith.is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if p > MAX_PRIME:
        raise OutOfRangeError(f"prime {p} above the supported {MAX_PRIME}")
    if u < 0:
        raise OutOfRangeError(f"u = {u} < 0")
    if u % p == 0:
        return 0
    w = pow(u, p - 1, p * p)
    return ((w - 1) // p) % p


@dataclass(frozen=True)
class FermatQuotientTable:
    """All quotient values over one period [0, p^2 - 1]."""

    prime: int
    values: tuple[int, ...]

    @classmethod
    def build(cls, p: int) -> "FermatQuotientTable":
        if not arith.is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        if p > MAX_TABLE_PRIME:
            raise OutOfRangeError(f"table for p = {p} would hold p^2 > {MAX_TABLE_PRIME**2} entries")
        return cls(prime=p, values=tuple(fermat_quotient(u, p) for u in range(p * p)))

    def __call__(self, u: int) -> int:
        return self.values[u % (self.prime * self.prime)]

    def value_set(self, upper: int) -> set[int]:
        """{q_p(u) : 1 <= u <= upper} (upper may exceed one period)."""
        upper = min(upper, self.prime * self.prime)
        return {self.values[u % (self.prime**2)] for u in range(1, upper + 1)}


def fq_length_map(p: int, upper: int) -> list[int | None]:
    """Minimal number of terms u <= upper whose quotients sum to each residue.

    Entry a holds the minimal k with q_p(u_1) + ... + q_p(u_k) = a (mod p),
    or None when a is unreachable.  Exact BFS over Z_p.
    """
    if not arith.is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if not 1 <= upper < p * p:
        raise OutOfRangeError(f"upper {upper} outside [1, p^2 - 1]")
    values = sorted({fermat_quotient(u, p) for u in range(1, upper + 1)})
    lengths: list[int | None] = [None] * p
    frontier = set(values)
    level = 1
    while frontier:
        for a in frontier:
            lengths[a] = level
        level += 1
        nxt = {(a + v) % p for a in frontier for v in values}
        frontier = {a for a in nxt if lengths[a] is None}
    return lengths


@dataclass(frozen=True)
class FqWitness:
    """A verified solution q_p(u_1) + ... + q_p(u_k) = target (mod p)."""

    prime: int
    target: int
    terms: tuple[int, ...]
    upper: int
    verified: bool = False

    def __post_init__(self):
        p = self.prime
        total = 0
        for u in self.terms:
            if not 1 <= u <= self.upper:
                raise VerificationError(f"term {u} outside [1, {self.upper}]")
            total = (total + fermat_quotient(u, p)) % p
        if total != self.target % p:
            raise VerificationError(f"terms sum to {total}, not {self.target} mod {p}")
        object.__setattr__(self, "verified", True)


def solve_quotient_sum(a: int, p: int, k: int, upper: int) -> FqWitness:
    """Witness with exactly k terms, lexicographically smallest term tuple.

    Greedy by the BFS length map: at each position take the smallest u whose
    quotient leaves a remainder reachable in the remaining budget.
    """
    if k < 1:
        raise OutOfRangeError(f"k = {k} < 1")
    if not 0 <= a < p:
        raise OutOfRangeError(f"target {a} outside [0, {p - 1}]")
    lengths = fq_length_map(p, upper)
    if lengths[a] is None or lengths[a] > k:
        raise NoSolutionError(
            f"{a} needs more than {k} quotient terms <= {upper} mod {p}", certified=True
        )
    quotients = [fermat_quotient(u, p) for u in range(upper + 1)]
    terms = []
    rest = a
    budget = k
    for _ in range(k):
        for u in range(1, upper + 1):
            nxt = (rest - quotients[u]) % p
            remaining = budget - 1
            if remaining == 0:
                if nxt == 0:
                    terms.append(u)
                    rest = nxt
                    budget = remaining
                    break
            elif lengths[nxt] is not None and lengths[nxt] <= remaining:
                terms.append(u)
                rest = nxt
                budget = remaining
                break
        else:  # pragma: no cover - reachability was certified above
            raise ArithmeticError("greedy descent lost reachability")
    return FqWitness(prime=p, target=a, terms=tuple(terms), upper=upper)


@dataclass(frozen=True)
class CorrespondenceResult:
    """Additive quotient-sum lengths against subgroup product lengths."""

    prime: int
    upper: int
    additive: tuple[int | None, ...]  # indexed by target residue mod p
    multiplicative: tuple[int | None, ...]
    agree: bool


def quotient_product_correspondence(p: int, upper: int) -> CorrespondenceResult:
    """Compare the additive solver with the p-th-power subgroup solver mod p^2.

    The translation coset-of-n -> q_p(n) is verified to be constant on
    cosets before use (it is a homomorphism with the p-th powers as kernel);
    the two length maps must then agree pointwise.
    """
    if not arith.is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if p > 211:
        raise OutOfRangeError(f"exhaustive correspondence capped at p <= 211, got {p}")
    if not 1 <= upper < p * p:
        raise OutOfRangeError(f"upper {upper} outside [1, p^2 - 1]")
    q = p * p
    table = FermatQuotientTable.build(p)
    subgroup = solvers.Subgroup.pth_powers_mod_p_squared(q)
    # the translation must not depend on the coset representative
    for u in range(1, q):
        if u % p == 0:
            continue
        qu = table(u)
        for g in subgroup.elements:
            if table(u * g % q) != qu:
                raise VerificationError(
                    f"quotient not constant on the coset of {u} mod {q}"
                )
    additive = fq_length_map(p, upper)
    cmap = solvers.subgroup_length_map(q, upper, subgroup)
    multiplicative: list[int | None] = [None] * p
    for rep, length in cmap.items():
        multiplicative[table(rep)] = length
    agree = all(additive[b] == multiplicative[b] for b in range(p))
    return CorrespondenceResult(
        prime=p,
        upper=upper,
        additive=tuple(additive),
        multiplicative=tuple(multiplicative),
        agree=agree,
    )
