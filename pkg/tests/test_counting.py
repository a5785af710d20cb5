import math

import pytest
from hypothesis import given, strategies as st

from resprod import arith, counting
from resprod.arith import CONSTANTS
from resprod.errors import BadRangeError, BadZetaError, WindowTooLargeError


def test_coprime_count_unit_window():
    res = counting.count_coprime_window(1, 2)
    assert res.exact == 1  # only m = 1


def test_coprime_count_hundred_mod_six():
    res = counting.count_coprime_window(100, 6)
    assert (res.window_lo, res.window_hi) == (100, 101)
    assert res.exact == 1  # 101 is the only coprime element
    assert res.main_term == pytest.approx(CONSTANTS.xi * 100 / 3)
    assert res.main_term == pytest.approx(0.648, abs=1e-3)
    assert res.within_2tau


def test_coprime_count_trivial_modulus():
    res = counting.count_coprime_window(100, 1)
    assert res.exact == 2
    assert res.tau_q == 1


def test_coprime_count_error_bound_small_battery():
    for q in range(2, 120):
        if not arith.factor_profile(q).cube_free:
            continue
        for anchor in (10, 100, 1000):
            res = counting.count_coprime_window(anchor, q)
            assert res.within_2tau, (q, anchor)


def test_prime_cofactor_examples():
    # oracle: p in {5, 7}; windows [2, 2] (2 shares a factor with 6) and
    # [2, 1] (empty), so the double sum is empty
    assert counting.count_prime_cofactor_pairs(10, 0.5, 6).exact == 0
    assert counting.count_prime_cofactor_pairs(10, 0.999, 1).exact == 0
    with pytest.raises(BadZetaError):
        counting.count_prime_cofactor_pairs(10, 1.0, 1)


def test_prime_cofactor_direct_recount():
    n_anchor, zeta, q = 400.0, 0.55, 6
    res = counting.count_prime_cofactor_pairs(n_anchor, zeta, q)
    direct = 0
    for p in range(2, 401):
        if not arith.is_prime(p) or p < n_anchor**zeta or math.gcd(p, q) != 1:
            continue
        w = arith.dyadic_window(n_anchor / p)
        direct += sum(1 for m in w if math.gcd(m, q) == 1)
    assert res.exact == direct
    assert res.main_term == pytest.approx(
        CONSTANTS.xi * math.log(1 / zeta) * (1 / 3) * n_anchor
    )


def test_mertens_single_prime():
    res = counting.mertens_delta(2, 2.5)
    assert res.reciprocal_sum == 0.5
    assert res.main_term == pytest.approx(math.log(math.log(2.5) / math.log(2)))


def test_mertens_ten_to_hundred():
    res = counting.mertens_delta(10, 100)
    # direct summation oracle over the 21 primes in [11, 97]
    direct = sum(1.0 / p for p in arith.primes_in_range(11, 97))
    assert res.reciprocal_sum == pytest.approx(direct, abs=1e-12)
    assert res.reciprocal_sum == pytest.approx(0.6266269, abs=1e-6)
    assert res.main_term == pytest.approx(math.log(2))


def test_mertens_empty_range():
    assert counting.mertens_delta(24, 28.5).reciprocal_sum == 0.0


def test_mertens_bad_range():
    with pytest.raises(BadRangeError):
        counting.mertens_delta(10, 10)
    with pytest.raises(BadRangeError):
        counting.mertens_delta(1.5, 10)


def test_smooth_products_examples():
    assert counting.smooth_products(4, 0.5).total == 0  # no prime below 2
    ms = counting.smooth_products(4, 0.9)
    assert dict(ms.counts) == {16: 1}
    assert counting.smooth_products(1, 0.5).counts == {1: 1}


def test_smooth_products_multiplicity_is_ordered_pairs():
    ms = counting.smooth_products(104, 0.9)
    window = list(arith.dyadic_window(104))
    direct = {}
    for m in window:
        for n in window:
            if arith.is_smooth(m * n, ms.threshold, strict=True):
                direct[m * n] = direct.get(m * n, 0) + 1
    assert dict(ms.counts) == direct
    assert any(v >= 2 for v in ms.counts.values())


def test_smooth_products_coprime_filter():
    ms = counting.smooth_products(10, 0.95, q=4, require_coprime=True)
    assert all(m % 2 == 1 and n % 2 == 1 for _, m, n in ms.elements)


def test_smooth_products_window_cap():
    with pytest.raises(WindowTooLargeError):
        counting.smooth_products(10**6, 0.5, cap=100)


def test_balog_equality_when_all_smooth():
    pairs = [(2, 2), (2, 3), (3, 2)]
    dec = counting.balog_decompose(pairs, lambda s: True, 10.0)
    assert dec.f_term == 0
    assert dec.lhs == dec.e_term == 3


def test_balog_worked_pairs():
    dec = counting.balog_decompose([(4, 4)], lambda s: True, 3.48)
    assert (dec.lhs, dec.e_term, dec.f_term) == (1, 1, 0)
    dec2 = counting.balog_decompose([(4, 5)], lambda s: True, 3.48)
    assert (dec2.lhs, dec2.e_term, dec2.f_term) == (0, 1, 1)
    assert dec2.holds


def test_balog_membership_set_and_density():
    dec = counting.balog_decompose([(2, 3), (3, 3)], {6}, 10.0, density=0.25)
    assert dec.lhs == 1
    assert dec.density == 0.25


@given(
    st.integers(min_value=2, max_value=60),
    st.integers(min_value=2, max_value=60),
    st.floats(min_value=1.5, max_value=40.0),
    st.integers(min_value=0, max_value=5),
)
def test_balog_inequality_property(lo_m, lo_n, threshold, width):
    pairs = [(m, n) for m in range(lo_m, lo_m + width + 1) for n in range(lo_n, lo_n + width + 1)]
    dec = counting.balog_decompose(pairs, lambda s: s % 3 != 1, threshold)
    assert dec.holds
