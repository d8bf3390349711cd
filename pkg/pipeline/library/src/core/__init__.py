"""Core logic layer for exact triangle geometry and quartic certification.

This package provides the pure domain logic including:
- Exact integer and rational primitives
- Pydantic models for forms, solutions, certificates and descent traces
- Triangle metrics, isosceles parametrization and Heron enumeration
- The sieve-accelerated quartic search and certificate verification
- The contract-checked descent and the identity fuzz harness
"""

from .certificate import verify_certificate
from .descent import branch_odd_case, descend_even_branch, vacuity_scan
from .fuzz import run_identity_fuzz
from .model import TOOL_VERSION, QuarticForm, SearchCertificate, SearchOptions, Solution
from .orchestrate import orchestrate_search
from .quartic import search

__version__ = TOOL_VERSION

__all__ = [
    "QuarticForm",
    "SearchCertificate",
    "SearchOptions",
    "Solution",
    "branch_odd_case",
    "descend_even_branch",
    "orchestrate_search",
    "run_identity_fuzz",
    "search",
    "vacuity_scan",
    "verify_certificate",
]
