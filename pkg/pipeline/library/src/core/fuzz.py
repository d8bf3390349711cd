"""Seeded random sampling of the polynomial identities the descent relies on."""

import logging
import random
from collections.abc import Callable

from pydantic import BaseModel, Field

from .descent import (
    case2_scaling_identity,
    decomposition_identity,
    gcd_quotient_coprime,
    lift_polynomial_identity,
    odd_branch_identity,
)
from .exact import gcd
from .model import THEOREM_FORM
from .quartic import eval_form
from .triangle import h_square

logger = logging.getLogger(__name__)


def isosceles_link_identity(m: int, n: int) -> bool:
    """``h_square(m, n)`` is the theorem form evaluated at ``(n, m)``."""
    return h_square(m, n) == eval_form(THEOREM_FORM, n, m)


def leg_median_identity(m: int, n: int) -> bool:
    """``2B^2 + A^2 == (m^2 + 2n^2)^2`` for ``A = m^2 - 2n^2``, ``B = 2mn``."""
    leg, base = m * m - 2 * n * n, 2 * m * n
    return 2 * base * base + leg * leg == (m * m + 2 * n * n) ** 2


# name -> (identity, sampling range, coprime pairs only)
IDENTITIES: dict[str, tuple[Callable[[int, int], bool], tuple[int, int], bool]] = {
    "lift-polynomial": (lift_polynomial_identity, (-100, 100), False),
    "case2-scaling": (case2_scaling_identity, (-50, 50), False),
    "gcd-quotient-coprime": (gcd_quotient_coprime, (1, 200), True),
    "pythagorean-decomposition": (decomposition_identity, (-50, 50), False),
    "odd-branch-target": (odd_branch_identity, (-100, 100), False),
    "isosceles-link": (isosceles_link_identity, (-100, 100), False),
    "leg-median": (leg_median_identity, (-100, 100), False),
}


class IdentityResult(BaseModel):
    """Sample and failure counts for one identity."""

    name: str
    samples: int = 0
    failures: int = 0
    first_failure: tuple[int, int] | None = None


class FuzzReport(BaseModel):
    """
    Outcome of an identity fuzz run.

    Attributes
    ----------
    seed : int
        Seed of the pseudo-random generator; the run is reproducible from it.
    iters : int
        Samples drawn per identity.
    results : list[IdentityResult]
        One entry per identity, in a fixed order.
    """

    seed: int = Field(ge=0, lt=2**64)
    iters: int = Field(ge=0)
    results: list[IdentityResult]

    @property
    def failed(self) -> bool:
        """Whether any identity failed on any sample."""
        return any(result.failures for result in self.results)


def run_identity_fuzz(seed: int, iters: int) -> FuzzReport:
    """
    Sample every identity ``iters`` times from a generator seeded with ``seed``.

    Parameters
    ----------
    seed : int
        64-bit unsigned seed.
    iters : int
        Samples per identity.

    Returns
    -------
    FuzzReport
        Per-identity counts; identical for identical arguments.
    """
    rng = random.Random(seed)
    results: list[IdentityResult] = []
    for name, (identity, (low, high), coprime) in IDENTITIES.items():
        result = IdentityResult(name=name)
        for _ in range(iters):
            u, v = rng.randint(low, high), rng.randint(low, high)
            while coprime and gcd(u, v) != 1:
                u, v = rng.randint(low, high), rng.randint(low, high)
            result.samples += 1
            if not identity(u, v):
                result.failures += 1
                if result.first_failure is None:
                    result.first_failure = (u, v)
        if result.failures:
            logger.warning(
                f"Identity {name} failed on {result.failures}/{result.samples} samples, "
                f"first at {result.first_failure}"
            )
        else:
            logger.info(f"Identity {name} held on {result.samples} samples")
        results.append(result)
    return FuzzReport(seed=seed, iters=iters, results=results)
