from fractions import Fraction

import pytest

from sqfree.bounds import (
    SQRT3_LOWER,
    SQRT3_UPPER,
    beta_margin,
    check_beta_four,
    check_beta_main,
    estimate_lambda_size,
    growth_bound,
    search_beta,
)
from sqfree.errors import InputError
from sqfree.oracle import brute_lambda
from sqfree.weights import Certificate

PAPER_ALPHA = Fraction(13948, 10721)
CEILING = Fraction(34, 10) * 10**15


def test_check_beta_main_reference_values():
    assert check_beta_main(PAPER_ALPHA, 21, Fraction(5, 4))
    assert not check_beta_main(Fraction(2), 2, Fraction(3, 2))
    # 2 - (2/3)/(1/2) = 2/3, well under 3/2
    assert beta_margin(Fraction(2), 2, Fraction(3, 2)) == Fraction(2, 3) - Fraction(3, 2)


def test_check_beta_main_domain():
    with pytest.raises(InputError):
        check_beta_main(Fraction(2), 2, Fraction(1))
    with pytest.raises(InputError):
        check_beta_main(Fraction(2), 0, Fraction(3, 2))


def test_check_beta_main_monotone_in_alpha():
    for beta in (Fraction(5, 4), Fraction(3, 2), Fraction(2)):
        held = False
        for num in range(11, 40):
            alpha = Fraction(num, 10)
            ok = check_beta_main(alpha, 5, beta)
            assert not (held and not ok)  # once true, stays true as alpha grows
            held = held or ok


def test_margin_decreases_right_of_optimum():
    # spot grid: beyond the maximizer the margin is strictly falling
    alpha, p = Fraction(3), 5
    grid = [Fraction(k, 100) for k in range(101, 320)]
    margins = [beta_margin(alpha, p, b) for b in grid]
    peak = margins.index(max(margins))
    for i in range(peak, len(margins) - 1):
        assert margins[i] > margins[i + 1]


def test_search_beta_examples():
    found = search_beta(PAPER_ALPHA, 21, Fraction(1, 1000))
    assert found == Fraction(1269, 1000)
    assert found >= Fraction(5, 4)
    assert found.denominator <= 1000
    assert check_beta_main(PAPER_ALPHA, 21, found)
    # the next grid point up must fail, otherwise the search stopped early
    assert not check_beta_main(PAPER_ALPHA, 21, found + Fraction(1, 1000))

    assert search_beta(Fraction(1295, 1000), 21, Fraction(1, 1000)) is None

    generous = search_beta(Fraction(3), 5, Fraction(1, 100))
    assert generous == Fraction(299, 100)
    assert generous >= 2
    assert check_beta_main(Fraction(3), 5, generous)


def test_search_beta_degenerate():
    assert search_beta(Fraction(1), 3, Fraction(1, 10)) is None
    with pytest.raises(InputError):
        search_beta(Fraction(2), 3, Fraction(0))


def test_check_beta_four_reference_values():
    assert check_beta_four(Fraction(49, 20))
    assert not check_beta_four(Fraction(14, 5))
    assert check_beta_four(2)
    with pytest.raises(InputError):
        check_beta_four(1)


def test_check_beta_four_sliver_is_false():
    # bracket the true threshold of 1+sqrt(3)-1/(b(b-1)) >= b with both
    # rational bounds, then pick a beta provable under neither
    def margin(bound, b):
        return 1 + bound - Fraction(1, b * (b - 1)) - b

    lo, hi = Fraction(2), Fraction(3)
    for _ in range(60):
        mid = (lo + hi) / 2
        if margin(SQRT3_LOWER, mid) >= 0:
            lo = mid
        else:
            hi = mid
    sliver = hi  # lower bound fails just above lo
    assert margin(SQRT3_LOWER, sliver) < 0 <= margin(SQRT3_UPPER, sliver)
    assert check_beta_four(sliver) is False


def test_growth_bound_constant():
    cert = Certificate(21, 4, 3, (3, 4, 5), PAPER_ALPHA, "")
    gb = growth_bound(cert, Fraction(5, 4))
    assert gb.beta == Fraction(5, 4)
    assert gb.multiplicative_constant == Fraction(3, 5)
    uniform = Certificate(21, 4, 3, (7, 7, 7), PAPER_ALPHA, "")
    assert growth_bound(uniform, Fraction(5, 4)).multiplicative_constant == 1
    with pytest.raises(InputError):
        growth_bound(cert, Fraction(2))  # beta condition fails
    with pytest.raises(InputError):
        growth_bound(Certificate(21, 4, 3, (0, 7), PAPER_ALPHA, ""), Fraction(5, 4))


def test_estimate_reference_ceiling():
    assert estimate_lambda_size(21, 21) <= CEILING
    assert estimate_lambda_size(21, 21, strict_cells=True) <= CEILING
    # both conventions sit just under the ceiling, not far below it
    assert estimate_lambda_size(21, 21) > CEILING * Fraction(9, 10)


def test_estimate_small_values():
    assert estimate_lambda_size(1, 2) == 1
    assert estimate_lambda_size(1, 2, strict_cells=True) == 0
    assert estimate_lambda_size(2, 2) == 3  # rows n=1 (1) and n=2 (2)
    with pytest.raises(InputError):
        estimate_lambda_size(0, 2)
    with pytest.raises(InputError):
        estimate_lambda_size(2, 1)


def test_estimate_monotone_in_p():
    for strict in (False, True):
        values = [estimate_lambda_size(p, 5, strict_cells=strict) for p in range(1, 8)]
        assert all(a <= b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("s", [3, 4, 5])
def test_estimate_dominates_brute_counts(s):
    # the closed form bounds the true count; the empty word escapes it at
    # p=1, where the crude formula has nothing to charge it to
    for p in range(2, 6):
        assert estimate_lambda_size(p, s) >= len(brute_lambda(p, s))
    assert estimate_lambda_size(1, s) >= len(brute_lambda(1, s)) - 1
