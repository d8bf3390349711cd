"""Command-line certification runs.

This module turns command-line arguments into a validated RunConfig and
executes one run: an exhaustive quartic search, a Heron or isosceles
enumeration, a certificate check, an identity fuzz or a descent vacuity
scan. Every run writes its artifact and exits 0 when nothing was found,
2 when findings are present and 1 on a configuration error.
"""

import argparse
import logging
import os
import sys
from enum import StrEnum
from pathlib import Path

from core.certificate import verify_certificate
from core.descent import trace_branch, vacuity_scan
from core.errors import CertifyError, ConfigError, ContractError
from core.fuzz import run_identity_fuzz
from core.model import ISOSCELES_FORM, DecimalInt, QuarticForm, SearchOptions
from core.quartic import search
from core.triangle import enumerate_heron, enumerate_isosceles_candidates
from infrastructure import (
    emit_heron_report,
    emit_isosceles_report,
    ensure_writable,
    load_certificate,
    write_certificate,
    write_fuzz_report,
    write_traces,
)
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

logging.basicConfig(
    level=os.getenv("CERTIFY_LOG_LEVEL", "INFO").upper(),
    format="%(asctime)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)

EXIT_CLEAN = 0
EXIT_CONFIG = 1
EXIT_FINDINGS = 2


class Command(StrEnum):
    """Run types."""

    SEARCH_QUARTIC = "search-quartic"
    SEARCH_HERON = "search-heron"
    SEARCH_ISOSCELES = "search-isosceles"
    VERIFY_CERT = "verify-cert"
    IDENTITY_FUZZ = "identity-fuzz"
    DESCENT_SCAN = "descent-scan"


class OutputFormat(StrEnum):
    """Artifact format of a search run."""

    CERTIFICATE = "certificate"
    CSV = "csv"


class RunConfig(BaseModel):
    """
    Complete description of one run.

    A run is determined by its RunConfig and the library version: repeated
    runs produce byte-identical artifacts apart from ``elapsed_ms``.

    Attributes
    ----------
    command : Command
        What to run.
    form : QuarticForm | None
        Form of a ``search-quartic`` run.
    bound : int | None
        Box side for quartic, isosceles and descent runs.
    max_perimeter : int | None
        Perimeter limit of a Heron run.
    sieve_moduli : tuple[int, ...]
        Residue sieves of search runs.
    workers, chunk_size : int
        Parallelism of search runs.
    coprime_only, exclude_trivial : bool
        Search settings.
    seed : int
        64-bit unsigned seed of a fuzz run.
    iters : int
        Samples per identity of a fuzz run.
    input_path : Path | None
        Certificate to verify.
    output_path : Path | None
        Artifact destination.
    output_format : OutputFormat
        Certificate or CSV for ``search-isosceles``.
    """

    model_config = ConfigDict(frozen=True)

    command: Command
    form: QuarticForm | None = None
    bound: DecimalInt | None = Field(default=None, ge=1)
    max_perimeter: DecimalInt | None = Field(default=None, ge=0)
    sieve_moduli: tuple[DecimalInt, ...] = (3, 4)
    workers: DecimalInt = Field(default=1, ge=1)
    chunk_size: DecimalInt = Field(default=64, ge=1)
    coprime_only: bool = True
    exclude_trivial: bool = True
    seed: DecimalInt = Field(default=0, ge=0, lt=2**64)
    iters: DecimalInt = Field(default=1000, ge=1)
    input_path: Path | None = None
    output_path: Path | None = None
    output_format: OutputFormat = OutputFormat.CERTIFICATE

    @field_validator("sieve_moduli")
    @classmethod
    def check_moduli(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        """Sieve moduli must be at least 2."""
        if any(modulus < 2 for modulus in v):
            raise ValueError(f"sieve moduli must be >= 2, got {list(v)}")
        return v

    @model_validator(mode="after")
    def check_command_fields(self) -> "RunConfig":
        """Each command needs its own inputs."""
        needs = {
            Command.SEARCH_QUARTIC: ("form", "bound", "output_path"),
            Command.SEARCH_HERON: ("max_perimeter", "output_path"),
            Command.SEARCH_ISOSCELES: ("bound", "output_path"),
            Command.VERIFY_CERT: ("input_path",),
            Command.IDENTITY_FUZZ: (),
            Command.DESCENT_SCAN: ("bound",),
        }[self.command]
        missing = [name for name in needs if getattr(self, name) is None]
        if missing:
            raise ValueError(f"{self.command} requires {', '.join(missing)}")
        return self

    def search_options(self, odd_x_only: bool = False) -> SearchOptions:
        """Search settings of this run."""
        return SearchOptions(
            coprime_only=self.coprime_only,
            exclude_trivial=self.exclude_trivial,
            sieve_moduli=self.sieve_moduli,
            chunk_size=self.chunk_size,
            workers=self.workers,
            odd_x_only=odd_x_only,
        )


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser.

    Numeric arguments stay strings here and are parsed as exact decimals by
    RunConfig. Defaults for parallelism and sieves come from the
    ``CERTIFY_WORKERS``, ``CERTIFY_CHUNK_SIZE`` and ``CERTIFY_SIEVE_MODULI``
    environment variables.
    """
    parser = _Parser(prog="certify", description="Exact searches and certificates for isosceles perfect triangles")
    commands = parser.add_subparsers(dest="command", required=True)

    def add_search_flags(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--sieve", default=os.getenv("CERTIFY_SIEVE_MODULI", "3,4"), help="comma-separated moduli")
        sub.add_argument("--workers", default=os.getenv("CERTIFY_WORKERS", str(os.cpu_count() or 1)))
        sub.add_argument("--chunk-size", default=os.getenv("CERTIFY_CHUNK_SIZE", "64"))

    quartic = commands.add_parser(Command.SEARCH_QUARTIC.value, help="exhaustive search of z^2 = ax^4 + bx^2y^2 + cy^4")
    quartic.add_argument("--form", required=True, help="coefficients A,B,C (a leading minus is allowed: --form -4,5,1)")
    quartic.add_argument("--bound", required=True)
    quartic.add_argument("--allow-noncoprime", action="store_true")
    quartic.add_argument("--include-trivial", action="store_true")
    quartic.add_argument("--out", required=True)
    add_search_flags(quartic)

    heron = commands.add_parser(Command.SEARCH_HERON.value, help="Heron triangle report")
    heron.add_argument("--max-perimeter", required=True)
    heron.add_argument("--out", required=True)

    isosceles = commands.add_parser(Command.SEARCH_ISOSCELES.value, help="isosceles perfect triangle search")
    isosceles.add_argument("--bound", required=True)
    isosceles.add_argument("--out", required=True)
    isosceles.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.CERTIFICATE.value)
    add_search_flags(isosceles)

    verify = commands.add_parser(Command.VERIFY_CERT.value, help="re-check a certificate file")
    verify.add_argument("path")

    fuzz = commands.add_parser(Command.IDENTITY_FUZZ.value, help="sample the descent identities")
    fuzz.add_argument("--seed", default="0")
    fuzz.add_argument("--iters", default="1000")
    fuzz.add_argument("--out")

    scan = commands.add_parser(Command.DESCENT_SCAN.value, help="look for inputs to the descent branches")
    scan.add_argument("--bound", required=True)
    scan.add_argument("--out")
    add_search_flags(scan)

    return parser


def _glue_form_values(argv: list[str]) -> list[str]:
    """Rewrite ``--form VALUE`` as ``--form=VALUE`` so a leading minus is not taken for a flag."""
    glued: list[str] = []
    args = iter(argv)
    for arg in args:
        if arg == "--form":
            value = next(args, None)
            glued.append(arg if value is None else f"--form={value}")
        else:
            glued.append(arg)
    return glued


def parse_config(argv: list[str] | None = None) -> RunConfig:
    """
    Parse command-line arguments into a RunConfig.

    ``--form -4,5,1`` is accepted as well as ``--form=-4,5,1``.

    Raises
    ------
    ConfigError
        On unknown commands, malformed numbers or forms, or missing inputs.
    """
    args = build_parser().parse_args(_glue_form_values(sys.argv[1:] if argv is None else argv))
    fields: dict[str, object] = {"command": args.command}
    try:
        if getattr(args, "form", None) is not None:
            fields["form"] = QuarticForm.parse(args.form)
    except ValueError as e:
        raise ConfigError(f"malformed form {args.form!r}: {e}") from e
    if getattr(args, "sieve", None) is not None:
        fields["sieve_moduli"] = tuple(part.strip() for part in args.sieve.split(",") if part.strip())
    for arg_name, field_name in (
        ("bound", "bound"),
        ("max_perimeter", "max_perimeter"),
        ("workers", "workers"),
        ("chunk_size", "chunk_size"),
        ("seed", "seed"),
        ("iters", "iters"),
        ("out", "output_path"),
        ("path", "input_path"),
        ("format", "output_format"),
    ):
        value = getattr(args, arg_name, None)
        if value is not None:
            fields[field_name] = value
    fields["coprime_only"] = not getattr(args, "allow_noncoprime", False)
    fields["exclude_trivial"] = not getattr(args, "include_trivial", False)
    try:
        return RunConfig.model_validate(fields)
    except ValidationError as e:
        problems = "; ".join(f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}" for err in e.errors())
        raise ConfigError(f"invalid configuration: {problems}") from e


def _search_quartic(config: RunConfig) -> int:
    assert config.form is not None and config.bound is not None and config.output_path is not None
    ensure_writable(config.output_path)
    certificate = search(config.form, config.bound, config.search_options())
    write_certificate(certificate, config.output_path)
    return EXIT_FINDINGS if certificate.nontrivial_solutions() else EXIT_CLEAN


def _search_heron(config: RunConfig) -> int:
    assert config.max_perimeter is not None and config.output_path is not None
    _, perfect = emit_heron_report(enumerate_heron(config.max_perimeter), config.output_path)
    return EXIT_FINDINGS if perfect else EXIT_CLEAN


def _search_isosceles(config: RunConfig) -> int:
    assert config.bound is not None and config.output_path is not None
    if config.output_format is OutputFormat.CSV:
        _, witnesses = emit_isosceles_report(enumerate_isosceles_candidates(config.bound), config.output_path)
        return EXIT_FINDINGS if witnesses else EXIT_CLEAN
    ensure_writable(config.output_path)
    certificate = search(ISOSCELES_FORM, config.bound, config.search_options(odd_x_only=True))
    write_certificate(certificate, config.output_path)
    return EXIT_FINDINGS if certificate.nontrivial_solutions() else EXIT_CLEAN


def _verify_cert(config: RunConfig) -> int:
    assert config.input_path is not None
    certificate = load_certificate(config.input_path)
    if verify_certificate(certificate):
        logger.info(f"SUCCESS: {config.input_path} verified")
        return EXIT_CLEAN
    logger.warning(f"FINDINGS: {config.input_path} failed verification")
    return EXIT_FINDINGS


def _identity_fuzz(config: RunConfig) -> int:
    report = run_identity_fuzz(config.seed, config.iters)
    if config.output_path is not None:
        write_fuzz_report(report, config.output_path)
    return EXIT_FINDINGS if report.failed else EXIT_CLEAN


def _descent_scan(config: RunConfig) -> int:
    assert config.bound is not None
    if config.output_path is not None:
        ensure_writable(config.output_path)
    hits = vacuity_scan(config.bound, config.search_options())
    traces = []
    for hit in hits:
        try:
            traces.append(trace_branch(hit))
        except ContractError as e:
            logger.warning(f"Branch input {hit.key()} stopped at step {e.step}: {e}")
    if config.output_path is not None:
        write_traces(traces, config.output_path)
    return EXIT_FINDINGS if hits else EXIT_CLEAN


RUNNERS = {
    Command.SEARCH_QUARTIC: _search_quartic,
    Command.SEARCH_HERON: _search_heron,
    Command.SEARCH_ISOSCELES: _search_isosceles,
    Command.VERIFY_CERT: _verify_cert,
    Command.IDENTITY_FUZZ: _identity_fuzz,
    Command.DESCENT_SCAN: _descent_scan,
}


def run(config: RunConfig) -> int:
    """
    Execute one run and write its artifact.

    Parameters
    ----------
    config : RunConfig
        Validated configuration.

    Returns
    -------
    int
        0 when nothing was found, 2 when findings are present, 1 on a
        configuration or input error.
    """
    logger.info(f"Starting {config.command}")
    try:
        status = RUNNERS[config.command](config)
    except CertifyError as e:
        logger.error(f"{config.command} failed: {e}")
        return EXIT_CONFIG
    logger.info(f"{config.command} finished with exit status {status}")
    return status


def main(argv: list[str] | None = None) -> int:
    """Parse arguments and run; returns the process exit status."""
    try:
        config = parse_config(argv)
    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
