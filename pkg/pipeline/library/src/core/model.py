"""Pydantic data models shared across the search and descent layers.

This module defines the immutable records that flow through the quartic
search engine, the certificates it emits and the descent traces. Integers
serialize as decimal strings so arbitrary precision survives a JSON round
trip.
"""

import hashlib
import json
import re
from enum import StrEnum
from importlib.metadata import PackageNotFoundError, version
from typing import Annotated

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, field_validator, model_validator

from .exact import gcd

_DECIMAL = re.compile(r"[+-]?\d+")

try:
    TOOL_VERSION = version("library")
except PackageNotFoundError:  # running from a source checkout
    TOOL_VERSION = "0.1.0"


def _parse_decimal(value: object) -> object:
    """Accept ints and decimal strings; reject floats and booleans instead of truncating them."""
    if isinstance(value, bool | float):
        raise ValueError(f"expected a decimal integer, got {type(value).__name__} {value!r}")
    if isinstance(value, str):
        text = value.strip()
        if not _DECIMAL.fullmatch(text):
            raise ValueError(f"not a decimal integer: {value!r}")
        return int(text)
    return value


DecimalInt = Annotated[
    int,
    BeforeValidator(_parse_decimal),
    PlainSerializer(str, return_type=str, when_used="json"),
]


class QuarticForm(BaseModel):
    """
    Binary quartic form ``a*x^4 + b*x^2*y^2 + c*y^4``.

    Attributes
    ----------
    coef_a, coef_b, coef_c : int
        The three coefficients.
    """

    model_config = ConfigDict(frozen=True)

    coef_a: DecimalInt
    coef_b: DecimalInt
    coef_c: DecimalInt

    @classmethod
    def parse(cls, text: str) -> "QuarticForm":
        """
        Build a form from ``"A,B,C"``.

        Raises
        ------
        ValueError
            If the text does not hold exactly three decimal integers.
        """
        parts = [part.strip() for part in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"form must have three comma-separated coefficients, got {text!r}")
        return cls(coef_a=parts[0], coef_b=parts[1], coef_c=parts[2])  # type: ignore[arg-type]

    def __str__(self) -> str:
        return f"{self.coef_a},{self.coef_b},{self.coef_c}"


THEOREM_FORM = QuarticForm(coef_a=4, coef_b=-5, coef_c=1)
LIFTED_FORM = QuarticForm(coef_a=1, coef_b=10, coef_c=9)
ODD_BRANCH_FORM = QuarticForm(coef_a=1, coef_b=1, coef_c=1)
AUXILIARY_FORM = QuarticForm(coef_a=3, coef_b=10, coef_c=3)
SQUARE_FORM = QuarticForm(coef_a=1, coef_b=2, coef_c=1)
# h^2 = m^4 - 5 m^2 n^2 + 4 n^4, the theorem form with t and s swapped
ISOSCELES_FORM = QuarticForm(coef_a=1, coef_b=-5, coef_c=4)


class Solution(BaseModel):
    """
    Triple ``(x, y, z)`` with ``z^2 = form(x, y)`` for the form it belongs to.

    Attributes
    ----------
    x, y, z : int
        Solution coordinates; ``z`` is canonically nonnegative in search output.
    primitive : bool
        ``gcd(x, y) == 1``.
    trivial : bool
        ``x * y * z == 0``.
    """

    model_config = ConfigDict(frozen=True)

    x: DecimalInt
    y: DecimalInt
    z: DecimalInt
    primitive: bool
    trivial: bool

    @classmethod
    def of(cls, x: int, y: int, z: int) -> "Solution":
        """Build a solution, deriving the primitivity and triviality flags."""
        return cls(x=x, y=y, z=z, primitive=gcd(x, y) == 1, trivial=x * y * z == 0)

    @model_validator(mode="after")
    def check_flags(self) -> "Solution":
        """Reject flag values that disagree with the coordinates."""
        if self.primitive != (gcd(self.x, self.y) == 1):
            raise ValueError(f"primitive flag inconsistent with gcd({self.x}, {self.y})")
        if self.trivial != (self.x * self.y * self.z == 0):
            raise ValueError(f"trivial flag inconsistent with ({self.x}, {self.y}, {self.z})")
        return self

    def key(self) -> tuple[int, int, int]:
        """Sort key used to normalize merged solution lists."""
        return (self.x, self.y, self.z)


class SearchOptions(BaseModel):
    """
    Options of an exhaustive box search.

    Attributes
    ----------
    coprime_only : bool
        Scan only pairs with ``gcd(x, y) == 1``.
    exclude_trivial : bool
        Do not record solutions with ``z == 0``.
    sieve_moduli : tuple[int, ...]
        Residue sieves applied before the squareness test.
    chunk_size : int
        Rows of the box handed to one worker task.
    workers : int
        Worker processes; 1 runs in-process.
    odd_x_only : bool
        Scan only odd ``x`` (the isosceles generator constraint on ``m``).
    """

    model_config = ConfigDict(frozen=True)

    coprime_only: bool = True
    exclude_trivial: bool = True
    sieve_moduli: tuple[int, ...] = (3, 4)
    chunk_size: int = Field(default=64, ge=1)
    workers: int = Field(default=1, ge=1)
    odd_x_only: bool = False

    @field_validator("sieve_moduli")
    @classmethod
    def check_moduli(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        """Sieve moduli must be at least 2; duplicates are dropped and order normalized."""
        if any(modulus < 2 for modulus in v):
            raise ValueError(f"sieve moduli must be >= 2, got {v}")
        return tuple(sorted(set(v)))


class SearchCertificate(BaseModel):
    """
    Signed record of a completed exhaustive search.

    Field order is fixed and is the serialization order.

    Attributes
    ----------
    form : QuarticForm
        The searched form.
    bound : int
        The box ``[1, bound]^2`` that was scanned.
    coprime_only, exclude_trivial : bool
        Search settings.
    sieve_moduli : list[int]
        Residue sieves that were active.
    solutions_found : list[Solution]
        Every recorded solution, sorted by ``(x, y, z)``.
    pairs_scanned : int
        Pairs whose form value reached the exact squareness test.
    pairs_sieved_out : int
        Pairs rejected by a sieve or by a negative form value.
    elapsed_ms : int
        Wall-clock duration; excluded from the digest.
    tool_version : str
        Library version that produced the certificate.
    odd_x_only : bool
        Whether the box was restricted to odd ``x``.
    digest : str
        SHA-256 of the canonical body (all fields but ``elapsed_ms`` and ``digest``).
    """

    form: QuarticForm
    bound: DecimalInt
    coprime_only: bool
    exclude_trivial: bool
    sieve_moduli: list[DecimalInt]
    solutions_found: list[Solution]
    pairs_scanned: DecimalInt
    pairs_sieved_out: DecimalInt
    elapsed_ms: DecimalInt
    tool_version: str
    odd_x_only: bool = False
    digest: str = ""

    def nontrivial_solutions(self) -> list[Solution]:
        """Return the recorded solutions with ``x * y * z != 0``."""
        return [solution for solution in self.solutions_found if not solution.trivial]

    def compute_digest(self) -> str:
        """SHA-256 hex digest of the canonical JSON body, ``elapsed_ms`` and ``digest`` excluded."""
        body = self.model_dump(mode="json", exclude={"elapsed_ms", "digest"})
        canonical = json.dumps(body, separators=(",", ":"), ensure_ascii=True)
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def signed(self) -> "SearchCertificate":
        """Return a copy carrying its own digest."""
        return self.model_copy(update={"digest": self.compute_digest()})


class CaseSplit(StrEnum):
    """Outcome of the mod-3 case split."""

    DIV_Y_BY_3 = "DivYBy3"
    DIV_X_BY_3 = "DivXBy3"
    MOD3_CONTRADICTION = "Mod3Contradiction"


class ProofStep(BaseModel):
    """
    One replayed proof step.

    Attributes
    ----------
    name : str
        Step name, e.g. ``"four-split"``.
    values : dict[str, int]
        Intermediate values introduced at this step.
    identity_checked : bool
        Whether the step's identity was re-verified numerically.
    """

    name: str
    values: dict[str, DecimalInt] = Field(default_factory=dict)
    identity_checked: bool = True


class DescentTrace(BaseModel):
    """
    Step-by-step record of one descent application.

    Attributes
    ----------
    input : Solution
        The starting solution of ``z^2 = x^4 + 10x^2y^2 + 9y^4``.
    steps : list[ProofStep]
        Replayed steps in proof order.
    output : Solution | None
        The descended solution, or the branch-target triple.
    measure_before, measure_after : int
        The product ``x * y`` before and after the descent.
    """

    input: Solution
    steps: list[ProofStep] = Field(default_factory=list)
    output: Solution | None = None
    measure_before: DecimalInt
    measure_after: DecimalInt | None = None

    def value(self, name: str) -> int:
        """Return the most recent value recorded under ``name``."""
        for step in reversed(self.steps):
            if name in step.values:
                return step.values[name]
        raise KeyError(name)


class ClaimCheck(BaseModel):
    """Result of replaying the ``(x^2 - 3y^2, 4xy) = 1`` claim."""

    gcd: DecimalInt
    log: list[str]
