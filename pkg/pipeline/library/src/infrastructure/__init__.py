"""Infrastructure layer for certification artifacts.

This package provides the components with side effects:
- Certificate, trace and fuzz-report files
- Polars CSV reports for Heron and isosceles enumerations
- Output path validation and atomic writes
"""

from .report import emit_heron_report, emit_isosceles_report
from .storage import load_certificate, write_certificate, write_fuzz_report, write_traces
from .utils import atomic_write_text, ensure_writable

__all__ = [
    "atomic_write_text",
    "emit_heron_report",
    "emit_isosceles_report",
    "ensure_writable",
    "load_certificate",
    "write_certificate",
    "write_fuzz_report",
    "write_traces",
]
