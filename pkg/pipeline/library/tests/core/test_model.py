"""
Tests for the shared pydantic models.

Covers decimal-string integers, form parsing, solution flags, search
options and certificate digests.
"""

import json

import pytest
from pydantic import ValidationError

from core.model import (
    THEOREM_FORM,
    DescentTrace,
    ProofStep,
    QuarticForm,
    SearchCertificate,
    SearchOptions,
    Solution,
)


def make_certificate(**overrides) -> SearchCertificate:
    fields = {
        "form": QuarticForm(coef_a=1, coef_b=2, coef_c=1),
        "bound": 2,
        "coprime_only": True,
        "exclude_trivial": True,
        "sieve_moduli": [3, 4],
        "solutions_found": [Solution.of(1, 1, 2), Solution.of(1, 2, 5), Solution.of(2, 1, 5)],
        "pairs_scanned": 3,
        "pairs_sieved_out": 0,
        "elapsed_ms": 5,
        "tool_version": "0.1.0",
    }
    fields.update(overrides)
    return SearchCertificate(**fields)


class TestQuarticForm:
    """Test suite for QuarticForm parsing and immutability."""

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("4,-5,1", (4, -5, 1)),
            (" 1, 10 , 9 ", (1, 10, 9)),
            ("+3,10,3", (3, 10, 3)),
            ("1,0,123456789012345678901234567890", (1, 0, 123456789012345678901234567890)),
        ],
    )
    def test_parse(self, text, expected):
        form = QuarticForm.parse(text)
        assert (form.coef_a, form.coef_b, form.coef_c) == expected

    @pytest.mark.parametrize("text", ["1,2", "1,2,3,4", "1,2.5,3", "a,b,c", ""])
    def test_parse_rejects_malformed(self, text):
        with pytest.raises(ValueError):
            QuarticForm.parse(text)

    def test_round_trips_through_str(self):
        assert QuarticForm.parse(str(THEOREM_FORM)) == THEOREM_FORM

    def test_is_frozen(self):
        with pytest.raises(ValidationError):
            THEOREM_FORM.coef_a = 5  # type: ignore[misc]

    def test_rejects_float_coefficient(self):
        with pytest.raises(ValidationError):
            QuarticForm(coef_a=1.0, coef_b=2, coef_c=1)  # type: ignore[arg-type]


class TestSolution:
    """Test suite for Solution flags."""

    @pytest.mark.parametrize(
        "triple,primitive,trivial",
        [
            ((1, 1, 2), True, False),
            ((2, 2, 8), False, False),
            ((1, 1, 0), True, True),
            ((3, 0, 9), False, True),
        ],
    )
    def test_derived_flags(self, triple, primitive, trivial):
        s = Solution.of(*triple)
        assert (s.primitive, s.trivial) == (primitive, trivial)

    def test_inconsistent_flags_rejected(self):
        with pytest.raises(ValidationError):
            Solution(x=2, y=4, z=0, primitive=True, trivial=True)

    def test_integers_serialize_as_decimal_strings(self):
        big = 10**30
        data = json.loads(Solution.of(big, 1, 3).model_dump_json())
        assert data == {"x": str(big), "y": "1", "z": "3", "primitive": True, "trivial": False}
        assert Solution.model_validate(data).x == big


class TestSearchOptions:
    """Test suite for SearchOptions validation."""

    def test_defaults(self):
        options = SearchOptions()
        assert options.coprime_only and options.exclude_trivial
        assert options.sieve_moduli == (3, 4)
        assert options.chunk_size == 64

    def test_moduli_sorted_and_deduplicated(self):
        assert SearchOptions(sieve_moduli=(16, 3, 3)).sieve_moduli == (3, 16)

    @pytest.mark.parametrize("overrides", [{"sieve_moduli": (1,)}, {"chunk_size": 0}, {"workers": 0}])
    def test_invalid_values(self, overrides):
        with pytest.raises(ValidationError):
            SearchOptions(**overrides)


class TestSearchCertificate:
    """Test suite for certificate serialization and digests."""

    def test_field_order(self):
        keys = list(json.loads(make_certificate().model_dump_json()))
        assert keys == [
            "form",
            "bound",
            "coprime_only",
            "exclude_trivial",
            "sieve_moduli",
            "solutions_found",
            "pairs_scanned",
            "pairs_sieved_out",
            "elapsed_ms",
            "tool_version",
            "odd_x_only",
            "digest",
        ]

    def test_digest_ignores_elapsed_time(self):
        assert make_certificate(elapsed_ms=1).compute_digest() == make_certificate(elapsed_ms=999).compute_digest()

    def test_digest_covers_solutions(self):
        tampered = make_certificate(solutions_found=[Solution.of(1, 1, 3)])
        assert tampered.compute_digest() != make_certificate().compute_digest()

    def test_signed_round_trip(self):
        cert = make_certificate().signed()
        assert len(cert.digest) == 64
        restored = SearchCertificate.model_validate_json(cert.model_dump_json())
        assert restored == cert
        assert restored.compute_digest() == cert.digest

    def test_nontrivial_solutions(self):
        cert = make_certificate(solutions_found=[Solution.of(1, 1, 0), Solution.of(1, 2, 5)])
        assert [s.key() for s in cert.nontrivial_solutions()] == [(1, 2, 5)]


class TestDescentTrace:
    """Test suite for DescentTrace lookups."""

    def test_value_returns_latest(self):
        trace = DescentTrace(
            input=Solution.of(2, 3, 5),
            steps=[ProofStep(name="one", values={"m": 1}), ProofStep(name="two", values={"m": 2, "n": 3})],
            measure_before=6,
        )
        assert trace.value("m") == 2
        assert trace.value("n") == 3
        with pytest.raises(KeyError):
            trace.value("d")
