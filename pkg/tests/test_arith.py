import math

import pytest
from hypothesis import given, strategies as st

from resprod import arith
from resprod.arith import CONSTANTS
from resprod.errors import NotInvertibleError, OutOfRangeError


def test_constant_values():
    assert 0.15163 < CONSTANTS.beta < 0.15164
    assert 1.01944 < CONSTANTS.psi < 1.01945
    assert CONSTANTS.xi == CONSTANTS.psi - 1.0
    assert CONSTANTS.rho == math.exp(-0.5)
    assert CONSTANTS.delta == arith.Fraction(1, 200)


def test_derived_parameter_functions():
    assert CONSTANTS.alpha_full(0.0) == pytest.approx(0.25 / 2.005)
    assert CONSTANTS.alpha_sub(0.0) == pytest.approx(0.25 / 1.255)
    assert CONSTANTS.eta(0.1) == pytest.approx(1e-3)
    assert CONSTANTS.zeta(0.0) == CONSTANTS.rho


@given(st.floats(min_value=0.0, max_value=10.0))
def test_zeta_stays_above_half(eps):
    assert CONSTANTS.zeta(eps) > 0.5


def test_profile_of_one():
    p = arith.factor_profile(1)
    assert p.factors == ()
    assert (p.phi, p.tau, p.mu) == (1, 1, 1)
    assert p.largest_prime == 1
    assert p.cube_free


def test_profile_of_twelve():
    p = arith.factor_profile(12)
    assert p.factors == ((2, 2), (3, 1))
    assert (p.phi, p.tau, p.mu) == (4, 6, 0)
    assert p.cube_free


def test_profile_cube_divisor():
    assert not arith.factor_profile(24).cube_free


def test_profile_range_errors():
    with pytest.raises(OutOfRangeError):
        arith.factor_profile(0)
    with pytest.raises(OutOfRangeError):
        arith.factor_profile(2**63 + 1)


def test_profile_is_pure():
    assert arith.factor_profile(360360) == arith.factor_profile(360360)


@given(st.integers(min_value=1, max_value=10**6))
def test_profile_reconstructs_value(n):
    p = arith.factor_profile(n)
    value = 1
    for prime, e in p.factors:
        assert arith.is_prime(prime)
        value *= prime**e
    assert value == n
    if n <= 2000:
        assert p.tau == sum(1 for d in range(1, n + 1) if n % d == 0)


def test_large_semiprime_factorization():
    # forces the rho path past the trial-division limit
    p, q = 1_000_003, 1_000_033
    prof = arith.factor_profile(p * q)
    assert prof.factors == ((p, 1), (q, 1))


def test_mod_inverse():
    assert arith.mod_inverse(1, 97) == 1
    assert arith.mod_inverse(2, 5) == 3
    with pytest.raises(NotInvertibleError):
        arith.mod_inverse(6, 12)


def test_window_endpoints():
    w = arith.dyadic_window(3)
    assert (w.lo, w.hi) == (3, 3)
    assert len(w) == 1
    w100 = arith.dyadic_window(100)
    assert (w100.lo, w100.hi) == (100, 101)


def test_window_widening():
    w = arith.dyadic_window(100, widen=2.0)
    assert w.hi == math.floor(2.0 * CONSTANTS.psi * 100)


@given(st.integers(min_value=1, max_value=10**6))
def test_window_invariants(anchor):
    w = arith.dyadic_window(anchor)
    if w.hi >= w.lo:
        assert w.lo >= anchor
        assert w.hi**36 <= 2 * anchor**36  # hi <= psi * anchor, exactly
        assert w.hi / w.lo <= CONSTANTS.psi + 1.0 / w.lo
        assert w.hi < CONSTANTS.psi * w.lo + 1


def test_primes_in_window():
    assert arith.primes_in_window(arith.dyadic_window(10)) == []
    assert arith.primes_in_window(arith.dyadic_window(3)) == [3]
    assert arith.primes_in_window(arith.dyadic_window(3), coprime_to=6) == []


def test_primes_in_range_against_direct_check():
    lo, hi = 90_000, 90_500
    assert arith.primes_in_range(lo, hi) == [
        n for n in range(lo, hi + 1) if arith.is_prime(n)
    ]


def test_segmented_sieve_large_window():
    ps = arith.primes_in_range(10**7, 10**7 + 200)
    assert all(arith.is_prime(p) for p in ps)
    assert ps == sorted(ps)
    assert 10_000_019 in ps


def test_is_smooth():
    assert arith.is_smooth(1, 1.5)
    assert arith.is_smooth(12, 3)
    assert not arith.is_smooth(12, 3, strict=True)
    assert not arith.is_smooth(14, 5)


def test_spf_sieve_matches_factorize():
    spf = arith.smallest_prime_factor_sieve(500)
    for n in range(2, 501):
        assert spf[n] == arith.factorize(n)[0][0]
