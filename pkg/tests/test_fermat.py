import pytest

from resprod import fermat
from resprod.errors import NoSolutionError, NotPrimeError, OutOfRangeError, VerificationError


def test_quotient_worked_values():
    assert fermat.fermat_quotient(2, 5) == 3  # (16 - 1)/5
    assert fermat.fermat_quotient(7, 5) == 0  # 2400/5 = 480 = 0 mod 5
    assert fermat.fermat_quotient(10, 5) == 0  # multiples of p vanish
    assert fermat.fermat_quotient(1, 2) == 0
    assert all(fermat.fermat_quotient(1, p) == 0 for p in (3, 5, 7, 11, 13))


def test_quotient_periodicity():
    for u in range(60):
        assert fermat.fermat_quotient(u + 49, 7) == fermat.fermat_quotient(u, 7)


def test_quotient_guards():
    with pytest.raises(NotPrimeError):
        fermat.fermat_quotient(2, 6)
    with pytest.raises(OutOfRangeError):
        fermat.fermat_quotient(-1, 5)


def test_table_defining_congruence():
    for p in (3, 5, 7, 11):
        table = fermat.FermatQuotientTable.build(p)
        sq = p * p
        for u in range(sq):
            if u % p == 0:
                assert table(u) == 0
            else:
                assert (p * table(u) - (pow(u, p - 1, sq) - 1)) % sq == 0
            assert 0 <= table(u) <= p - 1


def test_length_map_worked_example():
    lengths = fermat.fq_length_map(5, 2)
    # value set {0, 3}; BFS over Z_5 gives 2 -> 4 (3+3+3+3) and 1 -> 2 (3+3)
    assert lengths[0] == 1
    assert lengths[2] == 4
    assert lengths[1] == 2
    assert lengths == [1, 2, 4, 1, 3]


def test_length_map_upper_one():
    lengths = fermat.fq_length_map(7, 1)
    assert lengths[0] == 1
    assert all(l is None for l in lengths[1:])


def test_solve_zero_target_pads_with_ones():
    w = fermat.solve_quotient_sum(0, 11, 5, 3)
    assert w.terms == (1, 1, 1, 1, 1)


def test_solve_worked_example():
    w = fermat.solve_quotient_sum(2, 5, 4, 2)
    assert w.terms == (2, 2, 2, 2)
    assert w.verified


def test_solve_unreachable_is_certified():
    with pytest.raises(NoSolutionError) as err:
        fermat.solve_quotient_sum(2, 5, 1, 2)
    assert err.value.certified


def test_solve_exact_term_count():
    for k in range(2, 7):
        w = fermat.solve_quotient_sum(1, 5, k, 2)
        assert len(w.terms) == k


def test_witness_verification():
    with pytest.raises(VerificationError):
        fermat.FqWitness(prime=5, target=1, terms=(1, 1), upper=2)
    with pytest.raises(VerificationError):
        fermat.FqWitness(prime=5, target=0, terms=(3,), upper=2)


def test_correspondence_small_primes():
    for p, upper in ((3, 2), (5, 2), (7, 5)):
        res = fermat.quotient_product_correspondence(p, upper)
        assert res.agree, (p, upper)
    res5 = fermat.quotient_product_correspondence(5, 2)
    assert res5.additive[2] == 4
    assert res5.multiplicative[2] == 4


def test_correspondence_full_value_range():
    p = 7
    res = fermat.quotient_product_correspondence(p, p * p - 1)
    assert res.agree
    # every residue reachable in one step once the whole period is available
    assert all(l == 1 for l in res.additive)


def test_surjectivity_small_primes():
    for p in (2, 3, 5, 7, 11, 13):
        values = {fermat.fermat_quotient(u, p) for u in range(1, p * p) if u % p}
        assert values == set(range(p))
