"""Exact integer and rational arithmetic primitives.

Python integers are arbitrary precision and ``fractions.Fraction`` keeps
rationals in lowest terms with a positive denominator, so they serve as the
``ExactInt`` and ``ExactRational`` types. Square roots go through gmpy2's
integer square root with remainder: no floating point is involved anywhere.
"""

from fractions import Fraction
from functools import lru_cache

import gmpy2

from .errors import DomainError

ExactInt = int
ExactRational = Fraction


def isqrt_exact(n: int) -> int | None:
    """
    Return the exact square root of ``n`` if it is a perfect square.

    Parameters
    ----------
    n : int
        Nonnegative integer of any magnitude.

    Returns
    -------
    int | None
        ``r`` with ``r * r == n``, or ``None`` when ``n`` is not a square.

    Raises
    ------
    DomainError
        If ``n`` is negative.

    Examples
    --------
    >>> isqrt_exact(9409)
    97
    >>> isqrt_exact(15184) is None
    True
    """
    if n < 0:
        raise DomainError(f"isqrt_exact: negative input {n}")
    root, remainder = gmpy2.isqrt_rem(n)
    if remainder:
        return None
    return int(root)


def gcd(a: int, b: int) -> int:
    """
    Return the nonnegative greatest common divisor, with ``gcd(0, 0) == 0``.

    Signs are ignored, so coprimality predicates are sign-agnostic.
    """
    return int(gmpy2.gcd(a, b))


def rational_square_root(q: Fraction | int) -> Fraction | None:
    """
    Return the exact rational square root of ``q`` if one exists.

    A reduced fraction is a rational square exactly when its numerator and
    denominator are both perfect squares.

    Raises
    ------
    DomainError
        If ``q`` is negative.
    """
    q = Fraction(q)
    if q < 0:
        raise DomainError(f"rational_square_root: negative input {q}")
    num = isqrt_exact(q.numerator)
    if num is None:
        return None
    den = isqrt_exact(q.denominator)
    if den is None:
        return None
    return Fraction(num, den)


def is_square(n: int) -> bool:
    """Return whether ``n`` is a perfect square (negative numbers never are)."""
    return n >= 0 and isqrt_exact(n) is not None


@lru_cache(maxsize=8)
def mobius_table(limit: int) -> tuple[int, ...]:
    """
    Möbius function values ``mu(0..limit)`` from a linear sieve.

    ``mu(0)`` is stored as 0 so that indices match arguments.
    """
    mu = [1] * (limit + 1)
    mu[0] = 0
    is_composite = bytearray(limit + 1)
    primes: list[int] = []
    for i in range(2, limit + 1):
        if not is_composite[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            multiple = i * p
            if multiple > limit:
                break
            is_composite[multiple] = 1
            if i % p == 0:
                mu[multiple] = 0
                break
            mu[multiple] = -mu[i]
    return tuple(mu)


def count_box_pairs(bound: int, coprime_only: bool, odd_x_only: bool = False) -> int:
    """
    Count the pairs ``(x, y)`` in ``[1, bound]^2`` a search of that box visits.

    Parameters
    ----------
    bound : int
        Side of the box.
    coprime_only : bool
        Restrict to ``gcd(x, y) == 1``.
    odd_x_only : bool, optional
        Restrict to odd ``x``, by default False.

    Returns
    -------
    int
        Exact number of candidate pairs.

    Notes
    -----
    The coprime count is the Möbius sum ``sum_d mu(d) * X(d) * floor(bound / d)``
    where ``X(d)`` counts the admissible multiples of ``d`` on the x axis
    (all of them, or only the odd ones when ``d`` is odd).
    """
    if bound < 1:
        return 0
    odd_count = (bound + 1) // 2
    if not coprime_only:
        return (odd_count if odd_x_only else bound) * bound
    mu = mobius_table(bound)
    total = 0
    for d in range(1, bound + 1):
        if not mu[d]:
            continue
        q = bound // d
        if odd_x_only:
            if d % 2 == 0:
                continue
            x_multiples = (q + 1) // 2
        else:
            x_multiples = q
        total += mu[d] * x_multiples * q
    return total
