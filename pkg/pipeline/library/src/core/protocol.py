"""Search protocol definition for the chunked search driver.

This module defines the SearchProtocol interface that every exhaustive
search must satisfy so the orchestrator can split it into independent
chunks, scan them in parallel and merge the partial results.
"""

from collections.abc import Iterator
from typing import Protocol

from pydantic import BaseModel, ConfigDict

from .model import Solution


class ChunkTask(BaseModel):
    """
    A contiguous block of rows ``row_start <= x < row_stop`` of the search box.

    Attributes
    ----------
    chunk_id : int
        Position of the chunk in the row order.
    row_start, row_stop : int
        Half-open row range.
    """

    model_config = ConfigDict(frozen=True)

    chunk_id: int
    row_start: int
    row_stop: int


class ChunkResult(BaseModel):
    """
    Partial counters and findings of one or more scanned chunks.

    Attributes
    ----------
    pairs_scanned : int
        Pairs that reached the squareness test.
    pairs_sieved_out : int
        Pairs rejected by a sieve or by sign.
    solutions : list[Solution]
        Recorded solutions, sorted.
    """

    pairs_scanned: int = 0
    pairs_sieved_out: int = 0
    solutions: list[Solution] = []

    def merge(self, other: "ChunkResult") -> "ChunkResult":
        """
        Combine two partial results.

        The merge is associative and order-normalizing: solutions are kept
        sorted by ``(x, y, z)`` whatever order chunks finish in.
        """
        solutions = [*self.solutions, *other.solutions]
        if self.solutions and other.solutions and other.solutions[0].key() < self.solutions[-1].key():
            solutions.sort(key=Solution.key)
        return ChunkResult.model_construct(
            pairs_scanned=self.pairs_scanned + other.pairs_scanned,
            pairs_sieved_out=self.pairs_sieved_out + other.pairs_sieved_out,
            solutions=solutions,
        )


class SearchProtocol(Protocol):
    """
    Protocol for searches the orchestrator can partition.

    Methods
    -------
    read(chunk_size: int) -> Iterator[ChunkTask]
        Split the search region into disjoint chunks.
    scan(task: ChunkTask) -> ChunkResult
        Scan one chunk; must be a pure function of the search and the task.

    Notes
    -----
    This is a Protocol class (PEP 544) for structural subtyping. Implementations
    are shipped to worker processes, so they must be picklable.
    """

    def read(self, chunk_size: int) -> Iterator[ChunkTask]:
        """
        Split the search region into disjoint row chunks.

        Parameters
        ----------
        chunk_size : int
            Number of rows per chunk.

        Yields
        ------
        ChunkTask
            Chunks in row order.
        """
        ...

    def scan(self, task: ChunkTask) -> ChunkResult:
        """
        Scan one chunk of the region.

        Parameters
        ----------
        task : ChunkTask
            The rows to scan.

        Returns
        -------
        ChunkResult
            Counters and solutions of the chunk.
        """
        ...
