"""Exception hierarchy for the certification library.

Every error raised by the library derives from ``CertifyError`` and from
``ValueError``, so callers (including pydantic validators) that already
handle ``ValueError`` keep working.
"""


class CertifyError(ValueError):
    """Base class for all library errors."""


class DomainError(CertifyError):
    """Input outside the mathematical domain of an operation (e.g. a negative radicand)."""


class ParameterError(CertifyError):
    """Generator parameters violate a parity, coprimality or identity requirement."""


class DegeneracyError(CertifyError):
    """Parameters produce a degenerate triangle."""


class DecompositionError(CertifyError):
    """A triple cannot be decomposed under the requested parametrization."""


class ConsistencyError(CertifyError):
    """Internal consistency failure, signalling corrupt input or a transcription bug."""


class PreconditionError(CertifyError):
    """A proof-step operation was called outside its stated domain."""


class ContractError(CertifyError):
    """
    A proof step failed its numerical identity or parity check.

    Attributes
    ----------
    step : str
        Name of the failing proof step, e.g. ``"pythagorean-decomposition"``.
    """

    def __init__(self, step: str, detail: str) -> None:
        self.step = step
        super().__init__(f"[{step}] {detail}")


class CertificateFormatError(CertifyError):
    """
    Malformed certificate record.

    Attributes
    ----------
    errors : list[str]
        Field-level diagnostics, one ``"<field path>: <message>"`` entry each.
    """

    def __init__(self, errors: list[str]) -> None:
        self.errors = errors
        super().__init__("Malformed certificate: " + "; ".join(errors))


class ConfigError(CertifyError):
    """Invalid run configuration."""
