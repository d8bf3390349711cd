"""Sieve-accelerated exhaustive search of ``z^2 = a x^4 + b x^2 y^2 + c y^4``.

The search box ``[1, bound]^2`` is split into row chunks that are scanned
independently. Inside a row every pair goes through the same pipeline:
coprimality filter, combined residue sieve, sign check and finally the exact
squareness test. The counters of the two last stages are the certificate's
``pairs_sieved_out`` and ``pairs_scanned``.
"""

import logging
import math
import time
from collections.abc import Iterator
from functools import lru_cache

from pydantic import BaseModel, ConfigDict, Field

from .errors import ParameterError
from .exact import gcd, isqrt_exact
from .model import TOOL_VERSION, QuarticForm, SearchCertificate, SearchOptions, Solution
from .orchestrate import orchestrate_search
from .protocol import ChunkResult, ChunkTask

logger = logging.getLogger(__name__)


def eval_form(f: QuarticForm, x: int, y: int) -> int:
    """
    Evaluate ``a x^4 + b x^2 y^2 + c y^4`` exactly.

    >>> eval_form(QuarticForm(coef_a=4, coef_b=-5, coef_c=1), 2, 3)
    -35
    """
    x2, y2 = x * x, y * y
    return f.coef_a * x2 * x2 + f.coef_b * x2 * y2 + f.coef_c * y2 * y2


class SieveSpec(BaseModel):
    """
    Residue pairs ``(x mod modulus, y mod modulus)`` whose form value is a square modulo ``modulus``.

    Attributes
    ----------
    modulus : int
        The sieve modulus.
    admissible : frozenset[tuple[int, int]]
        Pairs that survive the sieve; every other pair cannot carry a solution.
    """

    model_config = ConfigDict(frozen=True)

    modulus: int = Field(ge=2)
    admissible: frozenset[tuple[int, int]]

    def admits(self, x: int, y: int) -> bool:
        """Whether ``(x, y)`` survives this sieve."""
        return (x % self.modulus, y % self.modulus) in self.admissible


def build_sieve(f: QuarticForm, modulus: int) -> SieveSpec:
    """
    Tabulate the residue pairs that can carry a solution modulo ``modulus``.

    Parameters
    ----------
    f : QuarticForm
        The searched form.
    modulus : int
        Sieve modulus, at least 2.

    Returns
    -------
    SieveSpec
        Exactly the pairs whose form value is congruent to a square (0 included).

    Raises
    ------
    ParameterError
        If ``modulus < 2``.
    """
    if modulus < 2:
        raise ParameterError(f"sieve modulus must be >= 2, got {modulus}")
    squares = {r * r % modulus for r in range(modulus)}
    admissible = frozenset(
        (rx, ry) for rx in range(modulus) for ry in range(modulus) if eval_form(f, rx, ry) % modulus in squares
    )
    return SieveSpec(modulus=modulus, admissible=admissible)


@lru_cache(maxsize=32)
def combined_sieve(f: QuarticForm, moduli: tuple[int, ...]) -> tuple[int, bytes]:
    """
    Merge several sieves into one lookup table over ``L = lcm(moduli)``.

    Returns ``(L, table)`` where ``table[(x % L) * L + y % L]`` is 1 when the
    pair survives every sieve.
    """
    if not moduli:
        return 1, b"\x01"
    period = math.lcm(*moduli)
    sieves = [build_sieve(f, modulus) for modulus in moduli]
    table = bytearray(period * period)
    for rx in range(period):
        for ry in range(period):
            if all(sieve.admits(rx, ry) for sieve in sieves):
                table[rx * period + ry] = 1
    survivors = sum(table)
    logger.debug(f"Combined sieve {moduli} for form ({f}): {survivors}/{period * period} residue pairs survive")
    return period, bytes(table)


class QuarticSearch(BaseModel):
    """
    One exhaustive search of a form over ``[1, bound]^2``, split by rows.

    Instances are immutable and picklable so the orchestrator can ship them
    to worker processes.
    """

    model_config = ConfigDict(frozen=True)

    form: QuarticForm
    bound: int = Field(ge=1)
    options: SearchOptions = SearchOptions()

    def read(self, chunk_size: int) -> Iterator[ChunkTask]:
        """Yield row chunks covering ``1..bound`` in order."""
        for chunk_id, row_start in enumerate(range(1, self.bound + 1, chunk_size)):
            yield ChunkTask(chunk_id=chunk_id, row_start=row_start, row_stop=min(row_start + chunk_size, self.bound + 1))

    def scan(self, task: ChunkTask) -> ChunkResult:
        """Scan the rows of one chunk."""
        a, b, c = self.form.coef_a, self.form.coef_b, self.form.coef_c
        bound = self.bound
        coprime_only = self.options.coprime_only
        exclude_trivial = self.options.exclude_trivial
        period, table = combined_sieve(self.form, self.options.sieve_moduli)

        scanned = 0
        sieved = 0
        solutions: list[Solution] = []

        start = task.row_start
        step = 1
        if self.options.odd_x_only:
            step = 2
            if start % 2 == 0:
                start += 1

        for x in range(start, task.row_stop, step):
            x2 = x * x
            ax4 = a * x2 * x2
            bx2 = b * x2
            row = table[(x % period) * period : (x % period + 1) * period]
            for y in range(1, bound + 1):
                if coprime_only and gcd(x, y) != 1:
                    continue
                if not row[y % period]:
                    sieved += 1
                    continue
                y2 = y * y
                value = ax4 + bx2 * y2 + c * y2 * y2
                if value < 0:
                    sieved += 1
                    continue
                scanned += 1
                root = isqrt_exact(value)
                if root is None or (exclude_trivial and root == 0):
                    continue
                solutions.append(Solution.of(x, y, root))

        return ChunkResult(pairs_scanned=scanned, pairs_sieved_out=sieved, solutions=solutions)


def search(f: QuarticForm, bound: int, options: SearchOptions | None = None) -> SearchCertificate:
    """
    Exhaustively search ``z^2 = f(x, y)`` over the box ``[1, bound]^2``.

    Parameters
    ----------
    f : QuarticForm
        The form to search.
    bound : int
        Side of the box, at least 1.
    options : SearchOptions, optional
        Coprimality, triviality, sieve, chunking and worker settings.

    Returns
    -------
    SearchCertificate
        Signed certificate with exact counters and every solution found,
        ``z`` canonically nonnegative.

    Raises
    ------
    ParameterError
        If ``bound < 1``.

    Examples
    --------
    >>> cert = search(QuarticForm(coef_a=1, coef_b=2, coef_c=1), 3)
    >>> [(s.x, s.y, s.z) for s in cert.solutions_found][:3]
    [(1, 1, 2), (1, 2, 5), (1, 3, 10)]
    """
    if bound < 1:
        raise ParameterError(f"bound must be >= 1, got {bound}")
    options = options or SearchOptions()
    logger.info(
        f"Searching form ({f}) to bound {bound}: coprime_only={options.coprime_only}, "
        f"exclude_trivial={options.exclude_trivial}, sieves={list(options.sieve_moduli)}, "
        f"odd_x_only={options.odd_x_only}"
    )

    started = time.perf_counter()
    result = orchestrate_search(QuarticSearch(form=f, bound=bound, options=options), options.chunk_size, options.workers)
    elapsed_ms = round((time.perf_counter() - started) * 1000)

    certificate = SearchCertificate(
        form=f,
        bound=bound,
        coprime_only=options.coprime_only,
        exclude_trivial=options.exclude_trivial,
        sieve_moduli=list(options.sieve_moduli),
        solutions_found=result.solutions,
        pairs_scanned=result.pairs_scanned,
        pairs_sieved_out=result.pairs_sieved_out,
        elapsed_ms=elapsed_ms,
        tool_version=TOOL_VERSION,
        odd_x_only=options.odd_x_only,
    ).signed()

    nontrivial = certificate.nontrivial_solutions()
    if nontrivial:
        logger.warning(f"FINDINGS: form ({f}) has {len(nontrivial)} nontrivial solution(s) up to {bound}")
    else:
        logger.info(f"SUCCESS: form ({f}) has no nontrivial solutions up to {bound} ({elapsed_ms} ms)")
    return certificate
