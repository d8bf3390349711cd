"""
Tests for artifact files.

Covers certificate and trace round trips, unreadable or malformed input,
and the path checks done before a run starts.
"""

import json
from pathlib import Path

import pytest

from core.errors import CertificateFormatError, ConfigError
from core.fuzz import run_identity_fuzz
from core.model import SQUARE_FORM, DescentTrace, ProofStep, Solution
from core.quartic import search
from infrastructure.storage import (
    load_certificate,
    load_traces,
    write_certificate,
    write_fuzz_report,
    write_traces,
)
from infrastructure.utils import atomic_write_text, ensure_writable


class TestCertificateFiles:
    """Test suite for certificate files."""

    def test_round_trip(self, tmp_path: Path):
        cert = search(SQUARE_FORM, 4)
        out = write_certificate(cert, tmp_path / "cert.json")

        assert load_certificate(out) == cert

    def test_file_layout(self, tmp_path: Path):
        out = write_certificate(search(SQUARE_FORM, 3), tmp_path / "cert.json")
        raw = out.read_bytes()

        assert raw.endswith(b"}\n")
        assert b"\r" not in raw
        record = json.loads(raw)
        assert record["bound"] == "3"
        assert record["solutions_found"][0]["x"] == "1"

    def test_overwrites_existing_file(self, tmp_path: Path):
        out = tmp_path / "cert.json"
        out.write_text("stale", encoding="utf-8")
        write_certificate(search(SQUARE_FORM, 2), out)

        assert load_certificate(out).bound == 2

    def test_missing_file(self, tmp_path: Path):
        with pytest.raises(ConfigError):
            load_certificate(tmp_path / "nope.json")

    @pytest.mark.parametrize("content", [b"\xff\xfe\x00", b"{not json", b'{"bound": "3"}'])
    def test_malformed_file(self, tmp_path: Path, content: bytes):
        path = tmp_path / "bad.json"
        path.write_bytes(content)

        with pytest.raises(CertificateFormatError) as exc_info:
            load_certificate(path)
        assert exc_info.value.errors


class TestTraceAndReportFiles:
    """Test suite for descent traces and fuzz reports."""

    def test_trace_round_trip(self, tmp_path: Path):
        trace = DescentTrace(
            input=Solution.of(2, 3, 5),
            steps=[ProofStep(name="pythagorean-decomposition", values={"m": 10**25, "n": 1})],
            measure_before=6,
        )
        out = write_traces([trace], tmp_path / "traces.json")

        assert load_traces(out) == [trace]
        assert '"m": "10000000000000000000000000"' in out.read_text(encoding="utf-8")

    def test_empty_trace_list(self, tmp_path: Path):
        out = write_traces([], tmp_path / "traces.json")
        assert json.loads(out.read_text(encoding="utf-8")) == []

    def test_fuzz_report(self, tmp_path: Path):
        out = write_fuzz_report(run_identity_fuzz(seed=5, iters=10), tmp_path / "fuzz.json")
        report = json.loads(out.read_text(encoding="utf-8"))

        assert report["seed"] == 5
        assert {result["name"] for result in report["results"]} >= {"lift-polynomial", "leg-median"}


class TestUtils:
    """Test suite for output path checks and atomic writes."""

    def test_relative_path_in_working_directory(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch):
        monkeypatch.chdir(tmp_path)
        assert ensure_writable("out.csv") == Path("out.csv")

    def test_directory_is_rejected(self, tmp_path: Path):
        with pytest.raises(ConfigError, match="is a directory"):
            ensure_writable(tmp_path)

    def test_missing_parent_is_rejected(self, tmp_path: Path):
        with pytest.raises(ConfigError, match="does not exist"):
            ensure_writable(tmp_path / "a" / "b.json")

    def test_atomic_write_leaves_no_temporary_files(self, tmp_path: Path):
        target = atomic_write_text(tmp_path / "x.txt", "one\ntwo\n")

        assert target.read_bytes() == b"one\ntwo\n"
        assert list(tmp_path.iterdir()) == [target]
