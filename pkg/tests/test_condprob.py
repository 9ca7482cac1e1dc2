import random
from fractions import Fraction

import pytest

from spinstat.condprob import (
    SpinDistribution,
    compare_with_cg,
    conditional_given_total,
)
from spinstat.errors import ShapeError, UndefinedConditionalError

THIRD = Fraction(1, 3)


def law(p_plus, p_zero, p_minus) -> SpinDistribution:
    return SpinDistribution(
        Fraction(1),
        {Fraction(1): Fraction(p_plus), Fraction(0): Fraction(p_zero), Fraction(-1): Fraction(p_minus)},
    )


def random_spin_one_law(rng: random.Random) -> SpinDistribution:
    weights = [Fraction(rng.randint(0, 6)) for _ in range(3)]
    while sum(weights) == 0:
        weights = [Fraction(rng.randint(0, 6)) for _ in range(3)]
    total = sum(weights)
    return law(*(w / total for w in weights))


def test_distribution_validation():
    with pytest.raises(ValueError):
        law(THIRD, THIRD, THIRD + 1)
    with pytest.raises(ShapeError):
        SpinDistribution(Fraction(1), {Fraction(1): Fraction(1)})
    uniform = SpinDistribution.uniform(1)
    assert uniform.probability(0) == THIRD
    paper = SpinDistribution.half_weighted()
    assert (paper.probability(1), paper.probability(0)) == (Fraction(1, 4), Fraction(1, 2))


def test_uniform_conditional_at_zero_total():
    table = conditional_given_total(SpinDistribution.uniform(1), SpinDistribution.uniform(1), 0)
    assert table.probability(0, 0) == THIRD
    assert table.probability(1, -1) == THIRD
    assert table.probability(-1, 1) == THIRD


def test_half_weighted_conditional_at_zero_total():
    d = SpinDistribution.half_weighted()
    table = conditional_given_total(d, d, 0)
    assert table.probability(0, 0) == Fraction(2, 3)
    assert table.probability(1, -1) == Fraction(1, 6)
    assert table.probability(-1, 1) == Fraction(1, 6)


def test_extreme_total_is_deterministic():
    d = random_spin_one_law(random.Random(1))
    table = conditional_given_total(d, d, 2)
    assert table.probability(1, 1) == 1


def test_zero_probability_total_raises():
    no_plus = law(0, Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(UndefinedConditionalError):
        conditional_given_total(no_plus, no_plus, 2)


def test_conditional_tables_are_exact_and_normalized(rng):
    for _ in range(200):
        d1 = random_spin_one_law(rng)
        d2 = random_spin_one_law(rng)
        for total in (-2, -1, 0, 1, 2):
            try:
                table = conditional_given_total(d1, d2, total)
            except UndefinedConditionalError:
                continue
            assert sum(table.cells.values()) == 1
            assert all(isinstance(p, Fraction) for p in table.cells.values())


def test_identical_marginals_give_symmetric_tables(rng):
    for _ in range(50):
        d = random_spin_one_law(rng)
        try:
            table = conditional_given_total(d, d, 0)
        except UndefinedConditionalError:
            continue
        for (m1, m2), p in table.items():
            assert table.probability(m2, m1) == p


def test_compare_with_cg_matches_for_half_weighted_law():
    comparison = compare_with_cg(SpinDistribution.half_weighted(), 0)
    assert comparison.max_deviation == 0
    assert comparison.matches


def test_compare_with_cg_uniform_gap_is_one_third():
    comparison = compare_with_cg(SpinDistribution.uniform(1), 0)
    assert comparison.max_deviation == THIRD
    assert comparison.deviations[(Fraction(0), Fraction(0))] == THIRD


def test_compare_with_cg_total_one():
    comparison = compare_with_cg(SpinDistribution.half_weighted(), 1)
    assert comparison.max_deviation == 0
    assert comparison.cg_squares[(Fraction(1), Fraction(0))] == Fraction(1, 2)


def test_compare_with_cg_other_block_flag():
    comparison = compare_with_cg(SpinDistribution.half_weighted(), 0, s=1)
    # Against the antisymmetric block the product law cannot match: that
    # row has no (0,0) weight while the conditional puts 2/3 there.
    assert comparison.max_deviation == Fraction(2, 3)


def test_compare_with_cg_requires_spin_one():
    with pytest.raises(ShapeError):
        compare_with_cg(SpinDistribution.uniform(Fraction(1, 2)), 0)


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return out


def test_half_weighted_law_is_unique_symmetric_match():
    # One-parameter family p(+1) = p(-1) = a, p(0) = 1 - 2a.  The matching
    # condition P(0,0 | total 0) = 2/3 reduces to a polynomial identity:
    #   3*(1-2a)^2 - 2*[(1-2a)^2 + 2a^2] = (1-2a)^2 - 4a^2 = 1 - 4a,
    # so a = 1/4 is the only root.  Derive the coefficients independently
    # with exact polynomial arithmetic, then confirm on a grid.
    one_minus_2a = [Fraction(1), Fraction(-2)]
    sq = _poly_mul(one_minus_2a, one_minus_2a)
    a_sq = _poly_mul([Fraction(0), Fraction(1)], [Fraction(0), Fraction(1)])
    numerator = [
        3 * s - 2 * (s + 2 * q)
        for s, q in zip(sq, a_sq + [Fraction(0)] * (len(sq) - len(a_sq)))
    ]
    while numerator and numerator[-1] == 0:
        numerator.pop()
    assert numerator == [Fraction(1), Fraction(-4)]

    for k in range(1, 10):
        a = Fraction(k, 20)
        family = law(a, 1 - 2 * a, a)
        comparison = compare_with_cg(family, 0)
        if a == Fraction(1, 4):
            assert comparison.max_deviation == 0
        else:
            assert comparison.max_deviation > 0
