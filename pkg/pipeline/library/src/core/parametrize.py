"""Parametrizations used by the descent.

Primitive Pythagorean triples, the four-split of ``xy = zt`` and the
parametrization of ``z^2 = D y^2 + x^2`` in both parity cases, each with an
inverse so that completeness can be checked exhaustively.
"""

import logging
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, model_validator

from .errors import ConsistencyError, DecompositionError, ParameterError
from .exact import gcd, isqrt_exact

logger = logging.getLogger(__name__)


class PythTriple(BaseModel):
    """
    Primitive Pythagorean triple with its generators.

    ``leg_odd = m^2 - n^2``, ``leg_even = 2mn``, ``hyp = m^2 + n^2``.
    """

    model_config = ConfigDict(frozen=True)

    leg_odd: int
    leg_even: int
    hyp: int
    gen_m: int
    gen_n: int


class FourSplit(BaseModel):
    """Factorization ``x = ac, y = bd, z = ad, t = bc`` of ``xy = zt``."""

    model_config = ConfigDict(frozen=True)

    a: int
    b: int
    c: int
    d: int

    def reconstruct(self) -> tuple[int, int, int, int]:
        """Return ``(x, y, z, t)``."""
        return (self.a * self.c, self.b * self.d, self.a * self.d, self.b * self.c)

    def pairwise_coprime(self) -> bool:
        """Whether all six pairs of ``a, b, c, d`` are coprime."""
        values = (self.a, self.b, self.c, self.d)
        return all(gcd(values[i], values[j]) == 1 for i in range(4) for j in range(i + 1, 4))


class ParityCase(StrEnum):
    """Which parametrization of the conic applies, by the parity of Dy."""

    DY_ODD = "DyOdd"
    DY_EVEN = "DyEven"


class ConicParam(BaseModel):
    """
    Parameters of a solution of ``z^2 = D y^2 + x^2``.

    In the ``DyOdd`` case ``2x = pm^2 - qn^2, y = mn, 2z = pm^2 + qn^2``;
    in the ``DyEven`` case ``x = pm^2 - qn^2, y = 2mn, z = pm^2 + qn^2``.
    """

    model_config = ConfigDict(frozen=True)

    D: int
    p: int
    q: int
    m: int
    n: int
    parity_case: ParityCase

    @model_validator(mode="after")
    def check_params(self) -> "ConicParam":
        """``pq = D`` with positive factors and generators, and ``(pm, qn) = 1``."""
        if min(self.p, self.q, self.m, self.n) <= 0:
            raise ValueError("p, q, m and n must be positive")
        if self.p * self.q != self.D:
            raise ValueError(f"pq = {self.p * self.q} differs from D = {self.D}")
        if gcd(self.p * self.m, self.q * self.n) != 1:
            raise ValueError(f"(pm, qn) = ({self.p * self.m}, {self.q * self.n}) is not coprime")
        return self


def primitive_pythagorean(m: int, n: int) -> PythTriple:
    """
    Return the primitive triple ``(m^2 - n^2, 2mn, m^2 + n^2)``.

    Raises
    ------
    ParameterError
        Unless ``m > n > 0``, ``gcd(m, n) == 1`` and ``m, n`` have opposite parity.

    >>> primitive_pythagorean(3, 2).hyp
    13
    """
    if not m > n > 0:
        raise ParameterError(f"need m > n > 0, got ({m}, {n})")
    if gcd(m, n) != 1:
        raise ParameterError(f"generators ({m}, {n}) are not coprime")
    if (m - n) % 2 == 0:
        raise ParameterError(f"generators ({m}, {n}) have the same parity")
    return PythTriple(leg_odd=m * m - n * n, leg_even=2 * m * n, hyp=m * m + n * n, gen_m=m, gen_n=n)


def pythagorean_decompose(x: int, y: int, z: int) -> PythTriple:
    """
    Recover the generators of a primitive Pythagorean triple.

    Parameters
    ----------
    x, y : int
        Positive legs in either order, coprime, exactly one even.
    z : int
        Hypotenuse.

    Returns
    -------
    PythTriple
        The triple with its unique generators ``m > n > 0``.

    Raises
    ------
    DecompositionError
        If the triple is not Pythagorean or not primitive.
    """
    if min(x, y, z) <= 0 or x * x + y * y != z * z:
        raise DecompositionError(f"({x}, {y}, {z}) is not a Pythagorean triple")
    if gcd(x, y) != 1:
        raise DecompositionError(f"({x}, {y}, {z}) is not primitive")
    odd, even = (x, y) if y % 2 == 0 else (y, x)
    if even % 2 != 0:
        raise DecompositionError(f"({x}, {y}, {z}) has two odd legs")
    m = isqrt_exact((z + odd) // 2)
    n = isqrt_exact((z - odd) // 2)
    if m is None or n is None or 2 * m * n != even:
        raise DecompositionError(f"no generators reproduce ({x}, {y}, {z})")
    return primitive_pythagorean(m, n)


def four_split(x: int, y: int, z: int, t: int) -> FourSplit:
    """
    Factor a solution of ``xy = zt`` as ``x = ac, y = bd, z = ad, t = bc``.

    The canonical witness takes ``a = gcd(x, z)``, ``c = x / a``,
    ``d = z / a`` and ``b = t / c``.

    Raises
    ------
    ParameterError
        If an entry is not positive or ``xy != zt``.

    >>> four_split(6, 35, 10, 21)
    FourSplit(a=2, b=7, c=3, d=5)
    """
    if min(x, y, z, t) <= 0:
        raise ParameterError(f"entries must be positive, got ({x}, {y}, {z}, {t})")
    if x * y != z * t:
        raise ParameterError(f"xy = {x * y} differs from zt = {z * t}")
    a = gcd(x, z)
    c = x // a
    d = z // a
    # cy = dt with (c, d) = 1, so c divides t
    b = t // c
    split = FourSplit(a=a, b=b, c=c, d=d)
    if split.reconstruct() != (x, y, z, t):
        raise ConsistencyError(f"four-split {split} does not reconstruct ({x}, {y}, {z}, {t})")
    return split


def conic_generate(param: ConicParam) -> tuple[int, int, int]:
    """
    Produce ``(x, y, z)`` with ``z^2 = D y^2 + x^2`` from conic parameters.

    ``x`` is signed.

    Raises
    ------
    ParameterError
        If ``pm^2 - qn^2`` is odd in the ``DyOdd`` case (``x`` not integral).
    """
    pm2 = param.p * param.m * param.m
    qn2 = param.q * param.n * param.n
    if param.parity_case is ParityCase.DY_ODD:
        if (pm2 - qn2) % 2:
            raise ParameterError(f"pm^2 - qn^2 = {pm2 - qn2} is odd, x is not integral")
        x, y, z = (pm2 - qn2) // 2, param.m * param.n, (pm2 + qn2) // 2
    else:
        x, y, z = pm2 - qn2, 2 * param.m * param.n, pm2 + qn2
    if z * z != param.D * y * y + x * x:
        raise ConsistencyError(f"{param} generated ({x}, {y}, {z}) off the conic")
    return x, y, z


def conic_decompose(D: int, x: int, y: int, z: int) -> list[ConicParam]:
    """
    Return every parametrization of a solution of ``z^2 = D y^2 + x^2``.

    Parameters
    ----------
    D : int
        Positive coefficient.
    x : int
        Signed coordinate; ``|x|`` is used for coprimality checks.
    y, z : int
        Positive coordinates.

    Returns
    -------
    list[ConicParam]
        All factor splits ``pq = D`` (both orders) with generators reproducing
        ``(x, y, z)`` exactly, ordered by ``p``.

    Raises
    ------
    DecompositionError
        If the triple is off the conic, not coprime, or ``Dy`` is even with ``y`` odd.
    ConsistencyError
        If no representation exists for a coprime point, which cannot happen.

    Notes
    -----
    ``pm^2 = z + x, qn^2 = z - x`` in the ``DyOdd`` case and
    ``pm^2 = (z + x) / 2, qn^2 = (z - x) / 2`` in the ``DyEven`` case, so each
    split is checked directly instead of searched.
    """
    if D < 1 or y <= 0 or z <= 0:
        raise DecompositionError(f"need D >= 1 and positive y, z, got D={D}, y={y}, z={z}")
    if z * z != D * y * y + x * x:
        raise DecompositionError(f"({x}, {y}, {z}) does not satisfy z^2 = {D}y^2 + x^2")
    if gcd(x, D * y) != 1 and gcd(z, D * y) != 1:
        raise DecompositionError(f"neither (x, Dy) nor (z, Dy) is 1 for ({x}, {y}, {z})")

    if (D * y) % 2:
        case = ParityCase.DY_ODD
        plus, minus = z + x, z - x
    elif y % 2 == 0:
        case = ParityCase.DY_EVEN
        plus, minus = (z + x) // 2, (z - x) // 2
    else:
        raise DecompositionError(f"Dy = {D * y} is even while y = {y} is odd: no parametrization applies")

    params: list[ConicParam] = []
    for p in range(1, D + 1):
        if D % p:
            continue
        q = D // p
        if plus % p or minus % q:
            continue
        m = isqrt_exact(plus // p) if plus > 0 else None
        n = isqrt_exact(minus // q) if minus > 0 else None
        if m is None or n is None or m == 0 or n == 0:
            continue
        if gcd(p * m, q * n) != 1:
            continue
        param = ConicParam(D=D, p=p, q=q, m=m, n=n, parity_case=case)
        if conic_generate(param) == (x, y, z):
            params.append(param)

    if not params:
        raise ConsistencyError(f"no conic parameters reproduce ({x}, {y}, {z}) for D = {D}")
    logger.debug(f"({x}, {y}, {z}) on z^2 = {D}y^2 + x^2 has {len(params)} representation(s)")
    return params
