"""Analytic layer: the beta conditions, beta search, growth-bound constants,
and the closed-form ceiling on the state-set size.

Decisions here are exact. The one irrational constant (sqrt(3)) is handled
by sound rational bracketing: proving the inequality true understates the
left side, proving it false overstates it, and the sliver in between is
reported as false.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import InputError
from .weights import Certificate

SQRT3_LOWER = Fraction(17320508, 10**7)
SQRT3_UPPER = Fraction(17320509, 10**7)


def _as_fraction(x) -> Fraction:
    try:
        return Fraction(x)
    except (TypeError, ValueError) as exc:
        raise InputError(f"not a rational: {x!r}") from exc


def beta_margin(alpha, p: int, beta) -> Fraction:
    """Exact value of alpha - beta^(1-p)/(beta-1) - beta."""
    alpha = _as_fraction(alpha)
    beta = _as_fraction(beta)
    if p < 1:
        raise InputError("period bound must be >= 1")
    if beta <= 1:
        raise InputError("beta must be > 1")
    return alpha - Fraction(1, 1) / (beta ** (p - 1) * (beta - 1)) - beta


def check_beta_main(alpha, p: int, beta) -> bool:
    """True iff alpha - beta^(1-p)/(beta-1) >= beta, exactly."""
    return beta_margin(alpha, p, beta) >= 0


def search_beta(alpha, p: int, precision) -> Fraction | None:
    """Largest beta on the grid of multiples of ``precision`` that passes
    check_beta_main, or None if no grid point does.

    The margin is strictly concave in beta on (1, alpha], so a ternary
    search over the grid finds its maximizer and a bisection from there
    finds the right edge of the feasible interval.
    """
    alpha = _as_fraction(alpha)
    precision = _as_fraction(precision)
    if precision <= 0:
        raise InputError("precision must be > 0")
    if alpha <= 1:
        return None

    cache: dict[int, Fraction] = {}

    def margin(k: int) -> Fraction:
        if k not in cache:
            cache[k] = beta_margin(alpha, p, k * precision)
        return cache[k]

    lo = int(1 / precision) + 1  # smallest k with k*precision > 1
    hi = int(alpha / precision)  # margin < 0 at beta >= alpha
    if hi < lo:
        return None
    a, b = lo, hi
    while b - a > 2:
        m1 = a + (b - a) // 3
        m2 = b - (b - a) // 3
        if margin(m1) < margin(m2):
            a = m1 + 1
        else:
            b = m2
    best = max(range(a, b + 1), key=margin)
    if margin(best) < 0:
        return None
    # Right of the maximizer the margin decreases; take the last feasible k.
    a, b = best, hi
    while a < b:
        mid = (a + b + 1) // 2
        if margin(mid) >= 0:
            a = mid
        else:
            b = mid - 1
    return a * precision


def check_beta_four(beta) -> bool:
    """Sound decision of 1 + sqrt(3) - 1/(beta*(beta-1)) >= beta.

    True only when the rational lower bound on sqrt(3) already proves it;
    false when the upper bound refutes it, and also for the undecidable
    sliver between the two brackets.
    """
    beta = _as_fraction(beta)
    if beta <= 1:
        raise InputError("beta must be > 1")
    correction = Fraction(1, 1) / (beta * (beta - 1))
    if 1 + SQRT3_LOWER - correction >= beta:
        return True
    return False


@dataclass(frozen=True)
class GrowthBound:
    beta: Fraction
    multiplicative_constant: Fraction  # root weight / max weight, in (0, 1]


def growth_bound(cert: Certificate, beta) -> GrowthBound:
    """Exponential lower-bound package extracted from a verified certificate.

    The count of square-free words of length n under any admissible list
    assignment is at least multiplicative_constant * beta^n, hence at least
    beta^n outright by submultiplicativity of the counts.
    """
    beta = _as_fraction(beta)
    if cert.weights[0] <= 0:
        raise InputError("growth_bound: certificate root weight is not positive")
    if not check_beta_main(cert.alpha, cert.p, beta):
        raise InputError("growth_bound: beta fails check_beta_main for this certificate")
    return GrowthBound(beta, Fraction(cert.weights[0], max(cert.weights)))


def estimate_lambda_size(p: int, s: int, strict_cells: bool = False) -> Fraction:
    """Closed-form upper bound on the state-set size for period bound p over
    s letters: sum over word length n <= p and letter count k <= s of
    n*(k-1)^(n-2)/(k-2)!.

    Cells with k=1 divide by (-1)! and are taken as 0. The n=1 row evaluates
    (k-1)^(-1) as an honest fraction; ``strict_cells`` drops that row
    entirely.
    """
    if p < 1 or s < 2:
        raise InputError("estimate_lambda_size needs p >= 1 and s >= 2")
    total = Fraction(0)
    for n in range(1, p + 1):
        if strict_cells and n == 1:
            continue
        for k in range(2, s + 1):
            total += Fraction(n) * Fraction(k - 1) ** (n - 2) / factorial(k - 2)
    return total


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def approx_str(x: Fraction) -> str:
    return f"{x.numerator / x.denominator:.6f} (approximate)"
