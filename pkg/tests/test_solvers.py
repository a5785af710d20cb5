import math
from fractions import Fraction

import pytest

from resprod import arith, solvers
from resprod.errors import (
    BadModulusError,
    BadSubgroupError,
    BoundTooLargeError,
    IntervalEmptyError,
    NoSolutionError,
    NotInvertibleError,
    OutOfMemoryError,
    PrimeTooLargeError,
    TooLargeError,
    VerificationError,
)


def test_length_map_q7_bound3():
    lm = solvers.product_length_map(7, 3)
    assert dict(lm.items()) == {1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 2}
    assert lm.uniform_k == 3
    assert lm.argmax_unit == 5


def test_length_map_q7_bound2_cycles():
    lm = solvers.product_length_map(7, 2)
    assert lm.length_of(5) is None  # powers of 2 cycle through {1, 2, 4}
    assert lm.uniform_k is None
    assert lm.coverage(10) == pytest.approx(0.5)


def test_length_map_minimal_modulus():
    lm = solvers.product_length_map(2, 1)
    assert dict(lm.items()) == {1: 1}
    assert lm.uniform_k == 1


def test_length_map_guards():
    with pytest.raises(BoundTooLargeError):
        solvers.product_length_map(7, 7)
    with pytest.raises(OutOfMemoryError):
        solvers.product_length_map(10**6 + 3, 10, cap=10**5)


def test_bfs_witness_replays():
    lm = solvers.product_length_map(101, 10)
    for a, length in lm.items():
        if length is None:
            continue
        w = solvers.witness_from_length_map(lm, a)
        assert len(w.factors) == length
        assert w.verified


def test_solve_identity_padding():
    w = solvers.solve_product(1, 10, 3, 1)
    assert w.factors == (1, 1, 1)


def test_solve_worked_example():
    w = solvers.solve_product(5, 7, 3, 3)
    assert w.factors == (2, 2, 3)
    assert w.verified


def test_solve_no_solution_certified():
    with pytest.raises(NoSolutionError) as err:
        solvers.solve_product(3, 7, 1, 2)
    assert err.value.certified


def test_solve_guards():
    with pytest.raises(BoundTooLargeError):
        solvers.solve_product(3, 7, 2, 7)
    with pytest.raises(NotInvertibleError):
        solvers.solve_product(2, 4, 2, 3)


def test_solve_matches_bfs_on_a_block():
    # dual-route check at one modulus; the acceptance suite sweeps q <= 500
    q = 143
    bound = math.isqrt(q)
    lm = solvers.product_length_map(q, bound)
    for a, length in lm.items():
        for k in range(1, 5):
            try:
                w = solvers.solve_product(a, q, k, bound)
                found = True
                assert len(w.factors) == k
            except NoSolutionError:
                found = False
            assert found == (length is not None and length <= k), (a, k)


def test_make_subgroup_pth_powers():
    sub = solvers.Subgroup.pth_powers_mod_p_squared(9)
    assert sub.elements == (1, 8)
    assert sub.order == 2
    with pytest.raises(BadModulusError):
        solvers.Subgroup.pth_powers_mod_p_squared(10)


def test_make_subgroup_squares_mod_seven():
    sub = solvers.make_subgroup(7, "squares")
    assert sub.elements == (1, 2, 4)


def test_make_subgroup_specs():
    assert solvers.make_subgroup(11, "trivial").elements == (1,)
    assert solvers.make_subgroup(7, "full").order == 6
    assert solvers.make_subgroup(9, "set:1,8").elements == (1, 8)
    auto = solvers.make_subgroup(49, "auto-sqrt")
    assert auto.order * auto.order >= 49
    with pytest.raises(BadSubgroupError):
        solvers.make_subgroup(7, "powers-of-two")


def test_subgroup_closure_check():
    with pytest.raises(BadSubgroupError):
        solvers.Subgroup.explicit(5, [1, 2])  # 2*2 = 4 escapes
    with pytest.raises(BadSubgroupError):
        solvers.Subgroup(7, (1, 2, 3))  # not closed: 2*2 = 4


def test_subgroup_order_divides_phi():
    with pytest.raises(BadSubgroupError):
        solvers.Subgroup(7, (1, 2, 4, 6))  # 4 does not divide 6


def test_enumerate_subgroups_mod_seven():
    subs = solvers.enumerate_subgroups(7, 3)
    assert [s.elements for s in subs] == [(1,), (1, 6), (1, 2, 4)]


def test_subgroup_solver_worked_examples():
    sub = solvers.Subgroup.pth_powers_mod_p_squared(9)
    w = solvers.solve_product_subgroup(7, 9, 1, 2, sub)
    assert (w.factors, w.coset_element) == ((2,), 8)
    w2 = solvers.solve_product_subgroup(2, 9, 1, 2, sub)
    assert (w2.factors, w2.coset_element) == ((2,), 1)
    w3 = solvers.solve_product_subgroup(1, 9, 4, 1, sub)
    assert w3.factors == (1, 1, 1, 1)


def test_subgroup_length_matches_translated_minimum():
    q, bound = 35, 5
    lm = solvers.product_length_map(q, bound)
    for sub in solvers.enumerate_subgroups(q, 4):
        cmap = solvers.subgroup_length_map(q, bound, sub)
        for a, _ in lm.items():
            direct = [
                lm.length_of(a * u % q)
                for u in sub.elements
                if lm.length_of(a * u % q) is not None
            ]
            assert cmap.length_of(a) == (min(direct) if direct else None)


def test_ratio_pair_counts():
    sub9 = solvers.Subgroup.pth_powers_mod_p_squared(9)
    assert solvers.count_subgroup_ratio_pairs(9, 2, sub9).count == 2
    full7 = solvers.Subgroup.full(7)
    res = solvers.count_subgroup_ratio_pairs(7, 6, full7)
    assert res.count == 36
    assert res.bound_shape == pytest.approx(36 * 6 / 7)
    trivial = solvers.Subgroup.trivial(11)
    assert solvers.count_subgroup_ratio_pairs(11, 1, trivial).count == 1
    with pytest.raises(TooLargeError):
        solvers.count_subgroup_ratio_pairs(7, 6, full7, cap=10)


def test_witness_verification_rejects_bad_data():
    with pytest.raises(VerificationError):
        solvers.WitnessSolution(target=5, modulus=7, factors=(2, 2, 2))
    with pytest.raises(VerificationError):
        solvers.WitnessSolution(target=5, modulus=7, factors=(2, 2, 3), bound=2)
    with pytest.raises(VerificationError):
        solvers.WitnessSolution(target=5, modulus=10, factors=(5, 3))


def test_greedy_pack_examples():
    assert solvers.greedy_pack(1, 10) == [1]
    assert solvers.greedy_pack(30, 6) == [5, 3, 2]
    assert solvers.greedy_pack(8, 4) == [4, 2, 1]
    assert solvers.greedy_pack(6, 10) == [6]


def test_greedy_pack_large_input_bins():
    n = 2**10 * 3**7
    parts = solvers.greedy_pack(n, 50)
    assert math.prod(parts) == n
    assert all(p <= 50 for p in parts)


def test_greedy_pack_guards():
    with pytest.raises(PrimeTooLargeError):
        solvers.greedy_pack(7, 5)
    with pytest.raises(Exception):
        solvers.greedy_pack(0, 10)


def test_prime_pattern_slot_structure():
    full = solvers.build_prime_pattern(10**4, "full", sample=False)
    assert [(s.count, s.exponent) for s in full.slots] == [
        (21, Fraction(1, 200)),
        (8, Fraction(3, 20)),
        (4, Fraction(1, 20)),
    ]
    assert full.prime_count == 33
    assert full.r_exponent == Fraction(3, 2) + Fraction(1, 200)
    sub = solvers.build_prime_pattern(10**4, "subgroup", sample=False)
    assert sub.prime_count == 28
    assert sub.r_exponent == Fraction(3, 4) + Fraction(1, 200)


def test_prime_pattern_sampling():
    with pytest.raises(IntervalEmptyError):
        solvers.build_prime_pattern(100, "full")
    pat = solvers.build_prime_pattern(100, "full", widen=4.0)
    assert pat.widen == 4.0
    assert pat.sampled_primes is not None
    for slot, primes in zip(pat.slots, pat.sampled_primes):
        assert len(primes) == slot.count
        for p in primes:
            assert arith.is_prime(p) and math.gcd(p, 100) == 1
    r = pat.r_value()
    assert r is not None and r > 1
