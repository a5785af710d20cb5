"""Desk-scale number theory toolkit: products of small integers in residue
classes, multiplicative character sums mod cube-free moduli, and additive
representations by Fermat quotients."""

from . import arith, chars, counting, fermat, harness, solvers
from .arith import (
    CONSTANTS,
    Constants,
    DyadicInterval,
    FactoredInteger,
    dyadic_window,
    factor_profile,
    is_prime,
    is_smooth,
    mod_inverse,
    primes_in_window,
)
from .chars import (
    CharacterGroup,
    CharacterId,
    CharValue,
    build_character_group,
    char_sum,
    char_sum_scan,
    mean_value_check,
    prime_window_sum,
)
from .counting import (
    BalogDecomposition,
    CoprimeCountResult,
    SmoothProductMultiset,
    balog_decompose,
    count_coprime_window,
    count_prime_cofactor_pairs,
    mertens_delta,
    smooth_products,
)
from .fermat import (
    FermatQuotientTable,
    FqWitness,
    fermat_quotient,
    fq_length_map,
    quotient_product_correspondence,
    solve_quotient_sum,
)
from .solvers import (
    LengthMap,
    PrimeProductPattern,
    Subgroup,
    WitnessSolution,
    build_prime_pattern,
    count_subgroup_ratio_pairs,
    greedy_pack,
    make_subgroup,
    product_length_map,
    solve_product,
    solve_product_subgroup,
    subgroup_length_map,
    witness_from_length_map,
)

__version__ = "0.1.0"
