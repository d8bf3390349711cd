"""Exact rational triangle geometry.

This module computes medians and Heron areas of rational triangles, builds
isosceles triangles from the ``A = m^2 - 2n^2, B = 2mn`` parametrization and
enumerates desk-scale candidates for perfect triangles.
"""

import logging
from collections.abc import Iterator
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from .errors import DegeneracyError, ParameterError
from .exact import gcd, isqrt_exact, rational_square_root

logger = logging.getLogger(__name__)


class Triangle(BaseModel):
    """
    Triangle with positive rational sides satisfying the strict triangle inequality.

    Attributes
    ----------
    a, b, c : Fraction
        Side lengths.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    a: Fraction
    b: Fraction
    c: Fraction

    @field_validator("a", "b", "c", mode="before")
    @classmethod
    def to_fraction(cls, v: object) -> Fraction:
        """Coerce ints, fractions and ``"p/q"`` strings to exact fractions; floats are rejected."""
        if isinstance(v, bool | float):
            raise ValueError(f"side lengths must be exact, got {v!r}")
        if isinstance(v, int | str | Fraction):
            return Fraction(v)
        raise ValueError(f"unsupported side length {v!r}")

    @model_validator(mode="after")
    def check_triangle(self) -> "Triangle":
        """Sides must be positive and strictly satisfy the triangle inequality."""
        a, b, c = self.a, self.b, self.c
        if min(a, b, c) <= 0:
            raise ValueError(f"sides must be positive, got ({a}, {b}, {c})")
        if not (a < b + c and b < a + c and c < a + b):
            raise ValueError(f"({a}, {b}, {c}) violates the strict triangle inequality")
        return self

    @property
    def perimeter(self) -> Fraction:
        """Sum of the sides."""
        return self.a + self.b + self.c

    def sides(self) -> tuple[Fraction, Fraction, Fraction]:
        """Return the sides as a tuple."""
        return (self.a, self.b, self.c)


class TriangleMetrics(BaseModel):
    """
    Exact derived quantities of a triangle.

    Attributes
    ----------
    median_sq_a, median_sq_b, median_sq_c : Fraction
        Squared medians to sides a, b and c, ``(2b^2 + 2c^2 - a^2) / 4`` and cyclic.
    area_sq_times16 : Fraction
        ``16 * area^2 = 2a^2b^2 + 2b^2c^2 + 2c^2a^2 - a^4 - b^4 - c^4``.
    area : Fraction | None
        Exact area when rational.
    rational_median_count : int
        Number of rational medians (0 to 3).
    area_rational : bool
        Whether the area is rational.
    isosceles : bool
        Whether two sides are equal.
    perfect : bool
        Rational sides, medians and area.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    median_sq_a: Fraction
    median_sq_b: Fraction
    median_sq_c: Fraction
    area_sq_times16: Fraction
    area: Fraction | None
    rational_median_count: int
    area_rational: bool
    isosceles: bool
    perfect: bool

    def median_squares(self) -> tuple[Fraction, Fraction, Fraction]:
        """Return the squared medians as a tuple."""
        return (self.median_sq_a, self.median_sq_b, self.median_sq_c)


def median_square(opposite: Fraction, first: Fraction, second: Fraction) -> Fraction:
    """Squared median to side ``opposite``: ``(2 first^2 + 2 second^2 - opposite^2) / 4``."""
    return (2 * first * first + 2 * second * second - opposite * opposite) / 4


def metrics(t: Triangle) -> TriangleMetrics:
    """
    Compute exact medians, area and perfection flags of a triangle.

    Parameters
    ----------
    t : Triangle
        A validated triangle.

    Returns
    -------
    TriangleMetrics
        All fields exact; rationality decided with ``rational_square_root``.

    Examples
    --------
    >>> m = metrics(Triangle(a=5, b=5, c=6))
    >>> m.median_sq_c, m.median_sq_a, m.area
    (Fraction(16, 1), Fraction(97, 4), Fraction(12, 1))
    """
    a, b, c = t.sides()
    medians = (median_square(a, b, c), median_square(b, a, c), median_square(c, a, b))
    a2, b2, c2 = a * a, b * b, c * c
    area_sq_times16 = 2 * a2 * b2 + 2 * b2 * c2 + 2 * c2 * a2 - a2 * a2 - b2 * b2 - c2 * c2
    root = rational_square_root(area_sq_times16)
    area = root / 4 if root is not None else None
    rational_medians = sum(1 for median in medians if rational_square_root(median) is not None)
    return TriangleMetrics(
        median_sq_a=medians[0],
        median_sq_b=medians[1],
        median_sq_c=medians[2],
        area_sq_times16=area_sq_times16,
        area=area,
        rational_median_count=rational_medians,
        area_rational=area is not None,
        isosceles=a == b or b == c or a == c,
        perfect=rational_medians == 3 and area is not None,
    )


class IsoscelesParams(BaseModel):
    """
    Generator pair of an isosceles triangle with a rational median to a leg.

    Attributes
    ----------
    m, n : int
        Coprime generators with ``m`` odd.
    leg : int
        Signed leg parameter ``A = m^2 - 2n^2``; the leg length is ``|A|``.
    base : int
        ``B = 2mn``.
    w : int
        Twice the leg median, ``w^2 = 2B^2 + A^2``.
    h_sq : int
        Squared median to the base times the scale, ``m^4 + 4n^4 - 5m^2n^2``.
    positive_leg : bool
        ``m^2 > 2n^2``.
    admissible : bool
        ``(|A|, |A|, B)`` is a nondegenerate triangle, equivalently ``h_sq > 0``.
    witness : bool
        Admissible and ``h_sq`` a perfect square: a perfect isosceles triangle.
    """

    model_config = ConfigDict(frozen=True)

    m: int
    n: int
    leg: int
    base: int
    w: int
    h_sq: int
    positive_leg: bool
    admissible: bool
    witness: bool

    @classmethod
    def from_generators(cls, m: int, n: int) -> "IsoscelesParams":
        """Populate every derived field from ``(m, n)`` without validating admissibility."""
        leg = m * m - 2 * n * n
        base = 2 * m * n
        w = isqrt_exact(2 * base * base + leg * leg)
        if w is None:
            # 2B^2 + A^2 = (m^2 + 2n^2)^2 identically
            raise ParameterError(f"2B^2 + A^2 is not a square for (m, n) = ({m}, {n})")
        h_sq = h_square(m, n)
        admissible = h_sq > 0
        return cls(
            m=m,
            n=n,
            leg=leg,
            base=base,
            w=w,
            h_sq=h_sq,
            positive_leg=leg > 0,
            admissible=admissible,
            witness=admissible and isqrt_exact(h_sq) is not None,
        )

    def triangle(self) -> Triangle:
        """Return the triangle ``(|A|, |A|, B)``."""
        return Triangle(a=abs(self.leg), b=abs(self.leg), c=self.base)


def h_square(m: int, n: int) -> int:
    """
    Return ``m^4 + 4n^4 - 5m^2n^2``, which equals ``(m^2 - 2n^2)^2 - (mn)^2``.

    >>> h_square(3, 1), h_square(5, 1), h_square(1, 1)
    (40, 504, 0)
    """
    m2, n2 = m * m, n * n
    return m2 * m2 + 4 * n2 * n2 - 5 * m2 * n2


def isosceles_from_params(m: int, n: int) -> IsoscelesParams:
    """
    Build the isosceles triangle ``(A, A, B)`` with ``A = m^2 - 2n^2``, ``B = 2mn``.

    Parameters
    ----------
    m, n : int
        Positive coprime generators, ``m`` odd.

    Returns
    -------
    IsoscelesParams
        The populated parameters; the median to a leg is ``w / 2`` by construction.

    Raises
    ------
    ParameterError
        If ``m`` or ``n`` is not positive, ``gcd(m, n) != 1`` or ``m`` is even.
    DegeneracyError
        If ``m^2 <= 2n^2`` or ``(A, A, B)`` violates the triangle inequality.
    """
    if m <= 0 or n <= 0:
        raise ParameterError(f"generators must be positive, got ({m}, {n})")
    if gcd(m, n) != 1:
        raise ParameterError(f"generators must be coprime, got gcd({m}, {n}) = {gcd(m, n)}")
    if m % 2 == 0:
        raise ParameterError(f"m must be odd for (A, B) = 1, got m = {m}")
    params = IsoscelesParams.from_generators(m, n)
    if not params.positive_leg:
        raise DegeneracyError(f"leg A = {params.leg} is not positive for (m, n) = ({m}, {n})")
    if not params.admissible:
        raise DegeneracyError(f"(A, A, B) = ({params.leg}, {params.leg}, {params.base}) is degenerate")
    return params


def enumerate_isosceles_candidates(bound: int) -> Iterator[IsoscelesParams]:
    """
    Stream every coprime generator pair with ``m`` odd and ``m, n <= bound``.

    Parameters
    ----------
    bound : int
        Inclusive upper limit for both generators.

    Yields
    ------
    IsoscelesParams
        Candidates in ``(m, n)`` order, flagged ``admissible`` when they give a
        nondegenerate triangle and ``witness`` when ``h_sq`` is a positive square.

    Notes
    -----
    The leg parameter ``A`` may be negative; ``|A|`` is the leg, which makes
    the parametrization complete (e.g. (7, 7, 4) comes from (1, 2)).
    Admissible candidates are deduplicated by ``(|A|, B)``, keeping the
    first generator pair met.
    """
    seen: set[tuple[int, int]] = set()
    witnesses = 0
    for m in range(1, bound + 1, 2):
        for n in range(1, bound + 1):
            if gcd(m, n) != 1:
                continue
            params = IsoscelesParams.from_generators(m, n)
            if params.admissible:
                shape = (abs(params.leg), params.base)
                if shape in seen:
                    logger.debug(f"Skipping duplicate shape {shape} from (m, n) = ({m}, {n})")
                    continue
                seen.add(shape)
            if params.witness:
                witnesses += 1
                logger.warning(f"Perfect isosceles witness at (m, n) = ({m}, {n}): h^2 = {params.h_sq}")
            yield params
    logger.info(f"Isosceles enumeration to bound {bound} complete: {witnesses} witnesses")


def heron_area_sq_times16(a: int, b: int, c: int) -> int:
    """Return ``16 * area^2`` of an integer triangle via the factored Heron formula."""
    return (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c)


def enumerate_heron(max_perimeter: int, min_perimeter: int = 3) -> Iterator[tuple[Triangle, TriangleMetrics]]:
    """
    Stream every integer Heron triangle with perimeter in ``[min_perimeter, max_perimeter]``.

    Parameters
    ----------
    max_perimeter : int
        Inclusive perimeter limit.
    min_perimeter : int, optional
        Inclusive lower perimeter, by default 3; disjoint perimeter ranges
        partition the stream.

    Yields
    ------
    tuple[Triangle, TriangleMetrics]
        Canonical triangles ``a <= b <= c`` with rational area, ordered by
        perimeter then lexicographically by sides.

    Notes
    -----
    Candidates are filtered on the squareness of the integer ``16 * area^2``
    before any median is computed.
    """
    found = 0
    for perimeter in range(max(min_perimeter, 3), max_perimeter + 1):
        for a in range(1, perimeter // 3 + 1):
            for b in range(a, (perimeter - a) // 2 + 1):
                c = perimeter - a - b
                if c >= a + b:
                    continue
                area16 = heron_area_sq_times16(a, b, c)
                if isqrt_exact(area16) is None:
                    continue
                triangle = Triangle(a=a, b=b, c=c)
                found += 1
                yield triangle, metrics(triangle)
    logger.info(f"Heron enumeration to perimeter {max_perimeter} complete: {found} triangles")
