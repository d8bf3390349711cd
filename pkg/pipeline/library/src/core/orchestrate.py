"""Search orchestration module.

This module provides the chunked driver that splits an exhaustive search
into row chunks, scans them in worker processes with no shared mutable
state and merges the partial results deterministically.
"""

import functools
import logging
from concurrent.futures import ProcessPoolExecutor

from .protocol import ChunkResult, SearchProtocol

logger = logging.getLogger(__name__)


def orchestrate_search(search: SearchProtocol, chunk_size: int, max_workers: int) -> ChunkResult:
    """
    Run every chunk of a search and merge the partial results.

    Parameters
    ----------
    search : SearchProtocol
        Search instance implementing read and scan.
    chunk_size : int
        Number of rows per chunk.
    max_workers : int
        Number of worker processes; 1 scans in the calling process.

    Returns
    -------
    ChunkResult
        Merged counters and the sorted solution list.

    Notes
    -----
    Chunks are disjoint and the merge is associative and order-normalizing,
    so the result does not depend on the worker count or the chunk size.
    """
    tasks = list(search.read(chunk_size))
    logger.info(f"Scanning {len(tasks)} chunks of {chunk_size} rows with {max_workers} worker(s)")

    total = ChunkResult()
    if max_workers == 1:
        results = map(search.scan, tasks)
        total = functools.reduce(_merge_logged, zip(tasks, results, strict=True), total)
    else:
        with ProcessPoolExecutor(max_workers=max_workers) as executor:
            results = executor.map(search.scan, tasks, chunksize=max(1, len(tasks) // (max_workers * 8)))
            total = functools.reduce(_merge_logged, zip(tasks, results, strict=True), total)

    logger.info(
        f"Search complete - scanned: {total.pairs_scanned}, sieved out: {total.pairs_sieved_out}, "
        f"solutions: {len(total.solutions)}"
    )
    return total


def _merge_logged(total: ChunkResult, item: tuple) -> ChunkResult:
    task, result = item
    logger.debug(
        f"Chunk {task.chunk_id}: rows {task.row_start}..{task.row_stop - 1}, scanned {result.pairs_scanned}, "
        f"sieved out {result.pairs_sieved_out}, solutions {len(result.solutions)}"
    )
    return total.merge(result)
