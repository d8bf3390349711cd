"""
Tests for the search orchestration module.

Uses a mock search implementing SearchProtocol whose rows each yield a
fixed number of scanned pairs and one solution per multiple of three.
"""

from collections.abc import Iterator

import pytest

from core.model import QuarticForm, SearchOptions, Solution
from core.orchestrate import orchestrate_search
from core.protocol import ChunkResult, ChunkTask
from core.quartic import QuarticSearch


class MockSearch:
    """
    Mock search implementing SearchProtocol for testing.

    Every row ``x`` scans ``width`` pairs, sieves out ``x % 2`` of them and
    records ``(x, 1, x)`` when ``x`` is a multiple of three.
    """

    def __init__(self, rows: int, width: int = 5):
        self.rows = rows
        self.width = width

    def read(self, chunk_size: int) -> Iterator[ChunkTask]:
        """Yield row chunks."""
        for chunk_id, start in enumerate(range(1, self.rows + 1, chunk_size)):
            yield ChunkTask(chunk_id=chunk_id, row_start=start, row_stop=min(start + chunk_size, self.rows + 1))

    def scan(self, task: ChunkTask) -> ChunkResult:
        """Produce deterministic counters for the chunk's rows."""
        rows = range(task.row_start, task.row_stop)
        return ChunkResult(
            pairs_scanned=sum(self.width - x % 2 for x in rows),
            pairs_sieved_out=sum(x % 2 for x in rows),
            solutions=[Solution.of(x, 1, x) for x in rows if x % 3 == 0],
        )


class TestChunkResult:
    """Test suite for ChunkResult merging."""

    def test_merge_adds_counters(self):
        left = ChunkResult(pairs_scanned=3, pairs_sieved_out=1, solutions=[Solution.of(1, 1, 2)])
        right = ChunkResult(pairs_scanned=4, pairs_sieved_out=2, solutions=[Solution.of(2, 1, 5)])
        merged = left.merge(right)

        assert (merged.pairs_scanned, merged.pairs_sieved_out) == (7, 3)
        assert [s.key() for s in merged.solutions] == [(1, 1, 2), (2, 1, 5)]

    def test_merge_is_order_normalizing(self):
        left = ChunkResult(solutions=[Solution.of(1, 1, 2)])
        right = ChunkResult(solutions=[Solution.of(2, 1, 5)])

        assert left.merge(right).solutions == right.merge(left).solutions

    def test_empty_is_identity(self):
        part = ChunkResult(pairs_scanned=2, solutions=[Solution.of(1, 2, 5)])
        assert ChunkResult().merge(part) == part
        assert part.merge(ChunkResult()) == part


class TestOrchestrateSearch:
    """Test suite for the chunked search driver."""

    @pytest.mark.parametrize(
        "rows,chunk_size,expected_scanned,expected_sieved,expected_solutions",
        [
            (1, 1, 4, 1, []),
            (6, 4, 27, 3, [3, 6]),
            (10, 3, 45, 5, [3, 6, 9]),
            (10, 100, 45, 5, [3, 6, 9]),
        ],
    )
    def test_chunking_strategies(self, rows, chunk_size, expected_scanned, expected_sieved, expected_solutions):
        total = orchestrate_search(MockSearch(rows), chunk_size, max_workers=1)

        assert total.pairs_scanned == expected_scanned
        assert total.pairs_sieved_out == expected_sieved
        assert [s.x for s in total.solutions] == expected_solutions

    def test_empty_search(self):
        total = orchestrate_search(MockSearch(0), 4, max_workers=1)
        assert total == ChunkResult()

    @pytest.mark.integration
    def test_worker_count_does_not_change_result(self):
        search = MockSearch(40)
        assert orchestrate_search(search, 3, max_workers=1) == orchestrate_search(search, 3, max_workers=2)

    @pytest.mark.integration
    def test_quartic_search_across_processes(self):
        search = QuarticSearch(form=QuarticForm(coef_a=1, coef_b=2, coef_c=1), bound=12, options=SearchOptions())

        serial = orchestrate_search(search, 5, max_workers=1)
        parallel = orchestrate_search(search, 2, max_workers=3)

        assert serial == parallel
        assert len(serial.solutions) == serial.pairs_scanned
