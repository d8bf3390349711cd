"""Independent re-verification of search certificates.

Nothing here trusts the search engine: solutions are re-evaluated, counters
are compared against the closed-form pair count and the sieves are rebuilt
from the form, so a tampered or truncated certificate is rejected.
"""

import logging
from collections.abc import Mapping

from pydantic import ValidationError

from .errors import CertificateFormatError
from .exact import count_box_pairs, gcd
from .model import SearchCertificate
from .quartic import build_sieve, eval_form

logger = logging.getLogger(__name__)

# Largest bound whose candidate total is recounted with the Möbius sum.
MAX_RECOUNT_BOUND = 10**7


def parse_certificate(raw: SearchCertificate | Mapping | str | bytes) -> SearchCertificate:
    """
    Validate a certificate given as a model, a mapping or a JSON document.

    Raises
    ------
    CertificateFormatError
        With one ``"<field path>: <message>"`` diagnostic per invalid field.
    """
    if isinstance(raw, SearchCertificate):
        return raw
    try:
        if isinstance(raw, str | bytes):
            return SearchCertificate.model_validate_json(raw)
        return SearchCertificate.model_validate(raw)
    except ValidationError as e:
        problems = [f"{'.'.join(str(part) for part in err['loc']) or '<root>'}: {err['msg']}" for err in e.errors()]
        raise CertificateFormatError(problems) from e


def certificate_problems(cert: SearchCertificate) -> list[str]:
    """
    List every internal inconsistency of a well-formed certificate.

    Parameters
    ----------
    cert : SearchCertificate
        The certificate to audit.

    Returns
    -------
    list[str]
        Human-readable problems; empty when the certificate is consistent.
    """
    problems: list[str] = []
    f = cert.form

    if cert.digest != cert.compute_digest():
        problems.append("digest does not match the certificate body")

    total = cert.pairs_scanned + cert.pairs_sieved_out
    x_rows = (cert.bound + 1) // 2 if cert.odd_x_only else cert.bound
    if cert.bound < 1:
        problems.append(f"bound {cert.bound} is not positive")
    elif cert.bound > MAX_RECOUNT_BOUND:
        problems.append(f"bound {cert.bound} exceeds {MAX_RECOUNT_BOUND}, the largest box the verifier recounts")
    elif not cert.bound <= total <= x_rows * cert.bound:
        # the x = 1 row alone holds `bound` candidate pairs
        problems.append(
            f"pairs_scanned + pairs_sieved_out = {total} lies outside [{cert.bound}, {x_rows * cert.bound}], "
            f"the possible candidate pairs for bound {cert.bound}"
        )
    else:
        expected = count_box_pairs(cert.bound, cert.coprime_only, cert.odd_x_only)
        if total != expected:
            problems.append(f"pairs_scanned + pairs_sieved_out = {total}, expected {expected} candidate pairs")
    if cert.pairs_scanned < 0 or cert.pairs_sieved_out < 0:
        problems.append("negative pair counter")
    if len(cert.solutions_found) > cert.pairs_scanned:
        problems.append(f"{len(cert.solutions_found)} solutions exceed {cert.pairs_scanned} scanned pairs")

    try:
        sieves = [build_sieve(f, modulus) for modulus in cert.sieve_moduli]
    except ValueError as e:
        problems.append(f"sieve moduli {cert.sieve_moduli}: {e}")
        sieves = []

    keys = [solution.key() for solution in cert.solutions_found]
    if keys != sorted(keys):
        problems.append("solutions are not sorted by (x, y, z)")
    if len(set(keys)) != len(keys):
        problems.append("duplicate solutions")

    for s in cert.solutions_found:
        label = f"solution ({s.x}, {s.y}, {s.z})"
        if not (1 <= s.x <= cert.bound and 1 <= s.y <= cert.bound):
            problems.append(f"{label} lies outside [1, {cert.bound}]^2")
        if s.z < 0:
            problems.append(f"{label} has negative z")
        if s.z * s.z != eval_form(f, s.x, s.y):
            problems.append(f"{label} does not satisfy z^2 = form(x, y)")
        if cert.coprime_only and gcd(s.x, s.y) != 1:
            problems.append(f"{label} is not coprime in a coprime-only search")
        if cert.odd_x_only and s.x % 2 == 0:
            problems.append(f"{label} has even x in an odd-x search")
        if cert.exclude_trivial and s.trivial:
            problems.append(f"{label} is trivial but trivial solutions were excluded")
        for sieve in sieves:
            if not sieve.admits(s.x, s.y):
                problems.append(f"{label} is rejected by the mod-{sieve.modulus} sieve")

    return problems


def verify_certificate(raw: SearchCertificate | Mapping | str | bytes) -> bool:
    """
    Re-check a certificate end to end.

    Parameters
    ----------
    raw : SearchCertificate | Mapping | str | bytes
        A certificate model, its JSON-mode dump, or its JSON text.

    Returns
    -------
    bool
        True iff the certificate is internally consistent.

    Raises
    ------
    CertificateFormatError
        If the record is malformed (missing fields, non-decimal integers, ...).
    """
    cert = parse_certificate(raw)
    problems = certificate_problems(cert)
    for problem in problems:
        logger.warning(f"Certificate check failed: {problem}")
    if not problems:
        logger.info(
            f"Certificate for form ({cert.form}) to bound {cert.bound} verified: "
            f"{len(cert.solutions_found)} solution(s), {cert.pairs_scanned + cert.pairs_sieved_out} pairs accounted for"
        )
    return not problems
