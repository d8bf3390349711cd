"""Certificate and trace files.

A certificate file holds exactly one UTF-8 JSON record with integers as
decimal strings and fields in the certificate's declared order.
"""

import logging
from collections.abc import Iterable
from pathlib import Path

from pydantic import TypeAdapter

from core.certificate import parse_certificate
from core.errors import CertificateFormatError, ConfigError
from core.fuzz import FuzzReport
from core.model import DescentTrace, SearchCertificate

from .utils import atomic_write_text

logger = logging.getLogger(__name__)

_TRACES = TypeAdapter(list[DescentTrace])


def write_certificate(cert: SearchCertificate, path: str | Path) -> Path:
    """Write one certificate record to ``path``."""
    return atomic_write_text(path, cert.model_dump_json(indent=2) + "\n")


def load_certificate(path: str | Path) -> SearchCertificate:
    """
    Read and validate a certificate file.

    Raises
    ------
    ConfigError
        If the file cannot be read.
    CertificateFormatError
        If it is not a well-formed certificate record.
    """
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        logger.error(f"Failed to read certificate {path}: {e}")
        raise ConfigError(f"cannot read {path}: {e}") from e
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise CertificateFormatError([f"<file>: not UTF-8 text ({e.reason})"]) from e
    return parse_certificate(text)


def write_traces(traces: Iterable[DescentTrace], path: str | Path) -> Path:
    """Write descent traces as one JSON list."""
    return atomic_write_text(path, _TRACES.dump_json(list(traces), indent=2).decode("utf-8") + "\n")


def load_traces(path: str | Path) -> list[DescentTrace]:
    """Read a trace list written by ``write_traces``."""
    return _TRACES.validate_json(Path(path).read_bytes())


def write_fuzz_report(report: FuzzReport, path: str | Path) -> Path:
    """Write an identity fuzz report as JSON."""
    return atomic_write_text(path, report.model_dump_json(indent=2) + "\n")
