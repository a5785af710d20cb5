import math

import pytest

from resprod import arith, chars
from resprod.errors import (
    NoNonprincipalError,
    NotCubeFreeError,
    UnknownCharacterError,
)


def test_group_of_one():
    g = chars.build_character_group(1)
    assert g.order == 1
    assert list(g.characters()) == [g.principal]
    assert g.eval(g.principal, 42).is_one


def test_group_mod_five_is_cyclic_of_four():
    g = chars.build_character_group(5)
    assert g.order == 4
    assert g.exponent == 4
    assert g.components[0].generator == 2


def test_group_mod_twelve_all_real():
    g = chars.build_character_group(12)
    assert g.order == 4
    assert g.exponent == 2  # C2 x C2, every character is real
    for chi in g.characters():
        for n in (1, 5, 7, 11):
            v = g.eval(chi, n)
            assert v.root_index in (0, 1)


def test_cube_divisor_rejected():
    with pytest.raises(NotCubeFreeError):
        chars.build_character_group(8)
    with pytest.raises(NotCubeFreeError):
        chars.build_character_group(54)


def test_eval_examples():
    g12 = chars.build_character_group(12)
    assert g12.eval(g12.principal, 7).is_one
    for chi in g12.characters():
        assert g12.eval(chi, 6).is_zero
    g5 = chars.build_character_group(5)
    quad = g5.character((2,))
    v = g5.eval(quad, 2)  # 2 is a nonresidue mod 5
    assert v.as_complex() == pytest.approx(-1)


def test_unknown_character():
    g = chars.build_character_group(5)
    with pytest.raises(UnknownCharacterError):
        g.character((4,))
    with pytest.raises(UnknownCharacterError):
        g.eval(chars.CharacterId((0, 0)), 3)


def test_char_sum_examples():
    g = chars.build_character_group(5)
    quad = g.character((2,))
    quarter = g.character((1,))  # chi(2) = i
    assert chars.char_sum(g, quad, 5) == pytest.approx(0)
    assert chars.char_sum(g, quad, 2) == pytest.approx(0)
    assert chars.char_sum(g, quarter, 2) == pytest.approx(1 + 1j)


def test_scan_complete_period_vanishes():
    g = chars.build_character_group(5)
    scan = chars.char_sum_scan(g, 4)
    assert scan.max_abs == pytest.approx(0, abs=1e-9)


def test_scan_short_sum_mod_five():
    # oracle: enumerate the 3 nonprincipal characters by hand; the order-4
    # ones give |1 + i| = sqrt(2), the quadratic one gives 0
    g = chars.build_character_group(5)
    scan = chars.char_sum_scan(g, 2)
    assert scan.max_abs == pytest.approx(math.sqrt(2))
    assert scan.argmax in (g.character((1,)), g.character((3,)))
    assert scan.ratio_sqrt == pytest.approx(1.0)


def test_scan_mod_twelve():
    g = chars.build_character_group(12)
    scan = chars.char_sum_scan(g, 5)
    assert scan.max_abs == pytest.approx(2)
    witness = scan.argmax
    assert g.eval(witness, 5).is_one
    assert g.eval(witness, 7).as_complex() == pytest.approx(-1)


def test_scan_needs_nonprincipal():
    with pytest.raises(NoNonprincipalError):
        chars.char_sum_scan(chars.build_character_group(2), 3)


def test_prime_window_sums():
    g = chars.build_character_group(5)
    for chi in g.characters():
        assert chars.prime_window_sum(g, chi, 10.0) == 0
    assert chars.prime_window_sum(g, g.principal, 3) == pytest.approx(1)
    quad = g.character((2,))
    assert chars.prime_window_sum(g, quad, 3) == pytest.approx(-1)


@pytest.mark.parametrize(
    "n_len,coeffs,lhs,rhs",
    [
        (1, [1], 4.0, 4.8),
        (4, [1, 1, 1, 1], 16.0, 28.8),
        (5, [1, 1, 1, 1, 1], 16.0, 40.0),
    ],
)
def test_mean_value_worked_examples(n_len, coeffs, lhs, rhs):
    g = chars.build_character_group(5)
    res = chars.mean_value_check(g, coeffs)
    assert res.lhs == pytest.approx(lhs)
    assert res.rhs == pytest.approx(rhs)
    assert res.holds


def test_orthogonality_exact_small_moduli():
    for q in range(1, 61):
        if not arith.factor_profile(q).cube_free:
            continue
        g = chars.build_character_group(q)
        for n in range(1, q + 1):
            assert chars.orthogonality_exact(g, n), (q, n)


def test_complete_sums_exact_small_moduli():
    for q in (3, 4, 5, 7, 9, 12, 15, 36, 45):
        g = chars.build_character_group(q)
        for chi in g.characters():
            if chi.is_principal:
                continue
            assert chars.complete_sum_exact_zero(g, chi), (q, chi)


def test_cyclotomic_polynomials():
    assert chars.cyclotomic_polynomial(1) == (-1, 1)
    assert chars.cyclotomic_polynomial(2) == (1, 1)
    assert chars.cyclotomic_polynomial(4) == (1, 0, 1)
    assert chars.cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_exact_root_sum_decisions():
    # 1 + zeta_4^2 = 0, via the uniform-subgroup path
    assert chars.exact_root_sum_is_zero({0: 1, 2: 1}, 4)
    # full set of 4th roots
    assert chars.exact_root_sum_is_zero({0: 1, 1: 1, 2: 1, 3: 1}, 4)
    # i - 1 is not zero (cyclotomic fallback)
    assert not chars.exact_root_sum_is_zero({1: 1, 2: 1}, 4)
    assert not chars.exact_root_sum_is_zero({0: 2, 1: 1}, 4)
    # sum of the three cube roots with equal weight 5
    assert chars.exact_root_sum_is_zero({0: 5, 1: 5, 2: 5}, 3)


def test_quadratic_character_matches_euler_criterion():
    # independent oracle: n is a residue mod an odd prime q iff
    # n^((q-1)/2) = 1 (mod q)
    for q in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 97):
        g = chars.build_character_group(q)
        quad = g.character((g.order // 2,))
        for n in range(1, q):
            expected = 1 if pow(n, (q - 1) // 2, q) == 1 else -1
            assert g.eval(quad, n).as_complex() == pytest.approx(expected), (q, n)


def test_multiplicativity_exact_indices():
    g = chars.build_character_group(45)
    units = [n for n in range(1, 45) if math.gcd(n, 45) == 1]
    for chi in g.characters():
        for m in units[:6]:
            for n in units[:6]:
                vm, vn = g.eval(chi, m), g.eval(chi, n)
                vmn = g.eval(chi, m * n)
                assert vmn.root_index == (vm.root_index + vn.root_index) % g.exponent
