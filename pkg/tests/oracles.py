"""Independent reference implementations used only to check the package.

Everything here is exact big-rational arithmetic (fractions.Fraction), so
it is slow but cannot suffer floating point error. The tested code must
agree with these oracles to tight relative tolerances.
"""

from fractions import Fraction
from math import comb


def exact_binomial_tail(k: int, n: int, p0) -> Fraction:
    """P[X >= k] for X ~ Binomial(n, p0), exactly.

    p0 may be a float; it is converted with Fraction(p0), i.e. the exact
    binary value the floating point implementation actually receives.
    """
    p = Fraction(p0)
    q = 1 - p
    total = Fraction(0)
    # sum from the top down so the term recurrence never divides by zero
    term = p ** n  # P[X = n]
    total += term
    for i in range(n, k, -1):
        # term(i-1) = term(i) * i / (n-i+1) * q/p
        term = term * i * q / ((n - i + 1) * p)
        total += term
    return total


def exact_binomial_pmf(k: int, n: int, p0) -> Fraction:
    p = Fraction(p0)
    return comb(n, k) * p ** k * (1 - p) ** (n - k)


def exact_pearson_squared(xs, ys) -> Fraction:
    """r^2 as an exact rational (sign carried separately by the caller)."""
    n = len(xs)
    xs = [Fraction(x) for x in xs]
    ys = [Fraction(y) for y in ys]
    mx = sum(xs) / n
    my = sum(ys) / n
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    return sxy * sxy / (sxx * syy), sxy > 0
