"""Closed-form counts and moments for decompressed k-ary chains.

All counting functions are exact (Python integers and fractions.Fraction);
asymptotic and large-n evaluations use mpmath binary floats at a configurable
precision, 200 bits by default.
"""

import math
from fractions import Fraction

import mpmath

DEFAULT_PRECISION = 200


def chain_count(n: int, k: int) -> int:
    """Number of k-ary chains with n internal nodes: (n!)^(k-1)."""
    return math.factorial(n) ** (k - 1)


def level_count_total(level: int, n: int, k: int) -> int:
    """Total number of decompressed nodes on `level` over all chains in (k, n).

    Equals (n!)^(k-1) * (k-1)^(level-1) * C(n, level) / level!, an exact
    integer since level! divides n!.  Zero when level > n.
    """
    if level < 1:
        raise ValueError(f"level must be >= 1, got {level}")
    if level > n:
        return 0
    num = chain_count(n, k) * (k - 1) ** (level - 1) * math.comb(n, level)
    q, r = divmod(num, math.factorial(level))
    assert r == 0
    return q


def total_decompressed_nodes(n: int, k: int) -> int:
    """Sum of decompressed sizes over all chains in (k, n)."""
    return sum(level_count_total(level, n, k) for level in range(1, n + 1))


def expected_size_exact(n: int, k: int) -> Fraction:
    """Expected decompressed size of a uniform chain, as an exact rational.

    Sum over levels of (k-1)^(l-1) C(n,l) / l!, accumulated through the term
    ratio t_{l+1}/t_l = (k-1)(n-l)/(l+1)^2.  Intended for n up to a few
    hundred; use expected_size_value beyond that.
    """
    if n == 0:
        return Fraction(0)
    term = Fraction(n)
    total = term
    for level in range(1, n):
        term = term * ((k - 1) * (n - level)) / (level + 1) ** 2
        total += term
    return total


def expected_size_value(n: int, k: int, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """The exact expected size evaluated as a binary float.

    Same term-ratio accumulation as expected_size_exact; every term is
    positive, so there is no cancellation and the relative error stays within
    a few ulps at the working precision.
    """
    with mpmath.workprec(precision):
        if n == 0:
            return mpmath.mpf(0)
        term = mpmath.mpf(n)
        total = term
        for level in range(1, n):
            term = term * ((k - 1) * (n - level)) / (level + 1) ** 2
            total += term
        return total


def expected_size_asymptotic(n: int, k: int, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Leading-order expected decompressed size of a uniform (k, n) chain.

    Evaluates e^(2 sqrt((k-1) n)) / (2 sqrt(e^(k-1) pi) (k-1)^(5/4) n^(1/4)),
    the stretched-exponential law the exact expectation approaches with
    relative error O(1/sqrt(n)).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    with mpmath.workprec(precision):
        nn = mpmath.mpf(n)
        top = mpmath.exp(2 * mpmath.sqrt((k - 1) * nn))
        bottom = (2 * mpmath.sqrt(mpmath.exp(k - 1) * mpmath.pi)
                  * mpmath.mpf(k - 1) ** Fraction(5, 4) * nn ** Fraction(1, 4))
        return top / bottom


def level_moments(n: int, k: int) -> tuple[Fraction, Fraction]:
    """Exact mean and variance of the level of a uniform decompressed node.

    Works with integer level weights w_l proportional to level_count_total,
    advanced through the exact ratio w_{l+1} = w_l (k-1)(n-l) / (l+1)^2, so
    n in the thousands stays fast.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    w = n * math.factorial(n)  # l = 1, scaled by n!
    total = w
    m1 = w
    m2 = w
    for level in range(1, n):
        q, r = divmod(w * ((k - 1) * (n - level)), (level + 1) ** 2)
        assert r == 0
        w = q
        total += w
        m1 += (level + 1) * w
        m2 += (level + 1) ** 2 * w
    mean = Fraction(m1, total)
    return mean, Fraction(m2, total) - mean * mean


def laguerre_polynomial(n: int) -> tuple[Fraction, ...]:
    """Coefficients of the Laguerre polynomial L_n(x), lowest degree first.

    Three-term recurrence (m+1) L_{m+1} = (2m+1-x) L_m - m L_{m-1} over exact
    rationals.
    """
    prev = (Fraction(1),)
    if n == 0:
        return prev
    cur = (Fraction(1), Fraction(-1))
    for m in range(1, n):
        nxt = [(2 * m + 1) * c for c in cur] + [Fraction(0)]
        for j, c in enumerate(cur):
            nxt[j + 1] -= c
        for j, c in enumerate(prev):
            nxt[j] -= m * c
        prev, cur = cur, tuple(c / (m + 1) for c in nxt)
    return cur


def laguerre_check(n: int, k: int = 2) -> bool:
    """Verify n!(L_n(-q) - 1) == sum over levels of level_count_total * q^level.

    The identity holds for binary chains (k = 2) because the level generating
    function specializes to the Laguerre generating function.
    """
    if k != 2:
        raise ValueError("the Laguerre identity is specific to arity 2")
    coeffs = laguerre_polynomial(n)
    fact = math.factorial(n)
    if fact * (coeffs[0] - 1) != 0:
        return False
    for j in range(1, n + 1):
        value = fact * coeffs[j] * (-1) ** j
        if value != level_count_total(j, n, 2):
            return False
    return True


def fuss_catalan(n: int, k: int) -> int:
    """Number of ordered k-ary trees with n internal nodes: C(kn,n)/((k-1)n+1)."""
    q, r = divmod(math.comb(k * n, n), (k - 1) * n + 1)
    assert r == 0
    return q
